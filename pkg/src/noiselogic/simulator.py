"""Execution of compiled networks on noise backends, equivalence proof
against the Boolean oracle, and reliability statistics.

A backend owns one reference pair per run (a single shared alphabet; every
wire in the network is generated from and classified against the same High
and Low waves, which is what makes the gate identities compose).  Three
backends exist:

* ``rtw-additive-not``: RTW family, NOT realized as universe minus input;
* ``rtw-multiplicative-not``: RTW family, NOT as the triple product;
* ``spike``: spike family, orthon/adder circuits.

Ambiguity, the event that a window cannot decide a logic value, is a
reported outcome rather than an exception: runs record it per wire, and
equivalence reports count incidents instead of aborting.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import rtw_gates, spike_gates
from .errors import ConfigError, NetlistError
from .generators import gen_orthogonal_spike_pair, rtw_sign_matrix
from .netlist import CompiledNetwork, NetlistAst, eval_boolean, lower
from .prng import SplitMix64, derive_seed
from .signals import (
    Classification,
    GeneratorConfig,
    Verdict,
    Waveform,
    classify,
    universe_spike,
)

BACKENDS = ("rtw-additive-not", "rtw-multiplicative-not", "spike")

EXHAUSTIVE_INPUT_LIMIT = 20

# Child-stream index reserved for drawing sampled assignments, far away
# from the per-trial indices used by the Monte-Carlo loops.
_SAMPLE_STREAM = 2**48


class _RtwBackend:
    def __init__(self, name: str, config: GeneratorConfig, additive: bool):
        self.name = name
        self.ctx = rtw_gates.RtwGateContext.from_config(config)
        self.pair = self.ctx.pair
        self._additive = additive
        differs = self.pair.h.values != self.pair.l.values
        self.decision_step = int(np.argmax(differs)) if differs.any() else None

    def bind(self, bit: int) -> Waveform:
        return self.pair.h if bit else self.pair.l

    def not_(self, x: Waveform) -> Waveform:
        if self._additive:
            return rtw_gates.not_additive(self.ctx, x)
        return rtw_gates.not_multiplicative(self.ctx, x)

    def and_(self, a: Waveform, b: Waveform) -> Waveform:
        return rtw_gates.and_gate(self.ctx, a, b)


class _SpikeBackend:
    def __init__(self, name: str, config: GeneratorConfig):
        self.name = name
        self.pair = gen_orthogonal_spike_pair(config)
        u = universe_spike(self.pair).values
        self.decision_step = int(np.argmax(u)) if u.any() else None

    def bind(self, bit: int) -> Waveform:
        return self.pair.h if bit else self.pair.l

    def not_(self, x: Waveform) -> Waveform:
        return spike_gates.spike_not(self.pair, x)

    def and_(self, a: Waveform, b: Waveform) -> Waveform:
        return spike_gates.spike_and(self.pair, a, b)


def make_backend(name: str, config: GeneratorConfig):
    """Instantiate a backend by name; one reference pair is drawn here."""
    if name == "rtw-additive-not":
        return _RtwBackend(name, config, additive=True)
    if name == "rtw-multiplicative-not":
        return _RtwBackend(name, config, additive=False)
    if name == "spike":
        return _SpikeBackend(name, config)
    raise ConfigError(f"unknown backend {name!r}; expected one of {', '.join(BACKENDS)}")


def _classify_wire(backend, x: Waveform) -> Classification:
    """Classification with a fast path for exact reference copies.

    Valid gates only ever emit exact copies of a reference, so equality
    against the cached pair decides almost every wire in two comparisons;
    anything else falls through to the full scanning classifier for a
    proper diagnostic.  Both paths agree by construction (the fast path is
    only taken when a discriminating step exists and the wire is a copy).
    """
    if backend.decision_step is not None:
        if x == backend.pair.h:
            return Classification(Verdict.HIGH, backend.decision_step)
        if x == backend.pair.l:
            return Classification(Verdict.LOW, backend.decision_step)
    return classify(x, backend.pair)


def _check_assignment(inputs, assignment) -> None:
    missing = [name for name in inputs if name not in assignment]
    if missing:
        raise NetlistError(f"assignment missing input(s): {', '.join(missing)}")
    bad = [name for name, v in assignment.items() if v not in (0, 1)]
    if bad:
        raise NetlistError(f"non-Boolean input value(s) for: {', '.join(bad)}")


def _evaluate_wires(network: CompiledNetwork, backend, assignment) -> list[Waveform]:
    waves: list[Waveform | None] = [None] * len(network.wires)
    for i, name in enumerate(network.inputs):
        waves[i] = backend.bind(int(assignment[name]))
    for gate in network.gates:
        if gate.op == "NOT":
            waves[gate.out] = backend.not_(waves[gate.args[0]])
        else:
            waves[gate.out] = backend.and_(waves[gate.args[0]], waves[gate.args[1]])
    return waves


@dataclass
class SimulationRun:
    """All wire waveforms and classifications of one network execution."""

    backend: str
    config: GeneratorConfig
    network: CompiledNetwork
    assignment: dict[str, int]
    waveforms: dict[str, Waveform]
    classifications: dict[str, Classification]

    @property
    def output_classifications(self) -> dict[str, Classification]:
        return {name: self.classifications[name] for name in self.network.outputs}

    @property
    def ambiguous_wires(self) -> list[str]:
        return [name for name, c in self.classifications.items() if c.is_ambiguous]

    def output_bits(self) -> dict[str, int]:
        return {name: c.verdict.to_bit() for name, c in self.output_classifications.items()}


def run(
    network: CompiledNetwork,
    backend: str,
    assignment: dict[str, int],
    config: GeneratorConfig,
) -> SimulationRun:
    """Execute one assignment on one backend, retaining every waveform.

    One reference pair is drawn for the whole run; inputs bind to the High
    or Low wave, gates evaluate in topological order, and every wire
    (inputs included) is classified against the pair.  Ambiguous wires are
    reported in the result, not raised.
    """
    _check_assignment(network.inputs, assignment)
    bk = make_backend(backend, config)
    waves = _evaluate_wires(network, bk, assignment)
    waveforms = {name: waves[i] for i, name in enumerate(network.wires)}
    classifications = {name: _classify_wire(bk, waves[i]) for i, name in enumerate(network.wires)}
    return SimulationRun(
        backend=backend,
        config=config,
        network=network,
        assignment=dict(assignment),
        waveforms=waveforms,
        classifications=classifications,
    )


@dataclass
class EquivalenceReport:
    """Outcome of checking a network's noise semantics against the oracle."""

    backend: str
    steps: int
    seed: int
    inputs: tuple[str, ...]
    mode: str                      # "exhaustive" or "sample"
    assignment_space: int          # 2 ** len(inputs)
    checked: int
    passed: int
    failures: list[dict] = field(default_factory=list)
    ambiguous: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.ambiguous and self.passed == self.checked

    def counterexample(self) -> dict | None:
        return self.failures[0] if self.failures else None

    def to_doc(self) -> dict:
        return {
            "backend": self.backend,
            "steps": self.steps,
            "seed": self.seed,
            "inputs": list(self.inputs),
            "mode": self.mode,
            "assignment_space": self.assignment_space,
            "checked": self.checked,
            "passed": self.passed,
            "failures": self.failures,
            "ambiguous": self.ambiguous,
            "pass": self.ok,
        }


def _assignment_from_index(inputs: tuple[str, ...], index: int) -> dict[str, int]:
    n = len(inputs)
    return {name: (index >> (n - 1 - j)) & 1 for j, name in enumerate(inputs)}


def verify_equivalence(
    source: NetlistAst | CompiledNetwork,
    backend: str,
    config: GeneratorConfig,
    *,
    network: CompiledNetwork | None = None,
    sample: int | None = None,
) -> EquivalenceReport:
    """Prove (exhaustively) or probe (by sampling) waveform-level equivalence.

    ``source`` provides the Boolean oracle: an AST is evaluated at the
    source-gate level, a compiled network at the primitive level.  The
    simulated network defaults to ``lower(source)`` for an AST and to the
    source itself otherwise; passing ``network`` explicitly lets callers
    check an independently produced (or deliberately corrupted) lowering
    against the oracle.

    Up to ``EXHAUSTIVE_INPUT_LIMIT`` inputs every assignment is checked;
    beyond that a ``sample`` count is required and assignments are drawn
    uniformly from a derived stream.  Equivalence holds only with zero
    failures and zero ambiguous incidents.
    """
    if isinstance(source, NetlistAst):
        net = network if network is not None else lower(source)
        oracle_source = source
    else:
        net = network if network is not None else source
        oracle_source = source
    n_inputs = len(net.inputs)
    space = 2 ** n_inputs
    if sample is None:
        if n_inputs > EXHAUSTIVE_INPUT_LIMIT:
            raise ConfigError(
                f"{n_inputs} inputs exceed the exhaustive limit of "
                f"{EXHAUSTIVE_INPUT_LIMIT}; pass a sample count to probe instead"
            )
        indices = range(space)
        mode = "exhaustive"
    else:
        if sample < 1:
            raise ConfigError(f"sample count must be positive, got {sample}")
        stream = SplitMix64(derive_seed(config.seed, _SAMPLE_STREAM))
        indices = [stream.next_u64() % space for _ in range(sample)]
        mode = "sample"

    bk = make_backend(backend, config)
    report = EquivalenceReport(
        backend=backend,
        steps=config.steps,
        seed=config.seed,
        inputs=net.inputs,
        mode=mode,
        assignment_space=space,
        checked=0,
        passed=0,
    )
    out_index = {name: net.wires.index(name) for name in net.outputs}
    for index in indices:
        assignment = _assignment_from_index(net.inputs, index)
        expected = eval_boolean(oracle_source, assignment)
        waves = _evaluate_wires(net, bk, assignment)
        report.checked += 1
        ok = True
        for name in net.outputs:
            outcome = _classify_wire(bk, waves[out_index[name]])
            if outcome.is_ambiguous:
                ok = False
                report.ambiguous.append(
                    {"assignment": assignment, "wire": name, "detail": outcome.detail}
                )
            elif outcome.verdict.to_bit() != expected[name]:
                ok = False
                report.failures.append(
                    {
                        "assignment": assignment,
                        "output": name,
                        "expected": expected[name],
                        "got": outcome.verdict.value,
                    }
                )
        if ok:
            report.passed += 1
    return report


# ---------------------------------------------------------------------------
# reliability and latency


@dataclass
class ReliabilityReport:
    """Analytic vs Monte-Carlo ambiguity probability for an n-step window."""

    n: int
    analytic_ambiguity: float
    mc_estimate: float
    mc_trials: int
    sigma: float
    band_4sigma: float
    within_band: bool
    decided_at_histogram: dict[int, int] | None = None

    def to_doc(self) -> dict:
        doc = {
            "n": self.n,
            "analytic_ambiguity": self.analytic_ambiguity,
            "mc_estimate": self.mc_estimate,
            "mc_trials": self.mc_trials,
            "sigma": self.sigma,
            "band_4sigma": self.band_4sigma,
            "within_band": self.within_band,
        }
        if self.decided_at_histogram is not None:
            doc["decided_at_histogram"] = {
                str(k): v for k, v in sorted(self.decided_at_histogram.items())
            }
        return doc


def ambiguity_analytic(n: int) -> float:
    """Probability that n-step RTW references are elementwise identical: 0.5**n."""
    if not isinstance(n, int) or n < 1:
        raise ConfigError(f"step count must be a positive integer, got {n!r}")
    return 0.5 ** n


def min_steps_for(epsilon: float) -> int:
    """Smallest n with 0.5**n <= epsilon (the guaranteeing convention).

    The companion :func:`rounded_steps_for` gives the nearest-integer
    solution of 0.5**n == epsilon, which for thresholds just below a power
    of two lands one step lower; both are reported by the stats interface
    so neither convention hides the other.
    """
    if not 0.0 < epsilon < 1.0:
        raise ConfigError(f"epsilon must lie strictly between 0 and 1, got {epsilon!r}")
    n = max(1, math.ceil(-math.log2(epsilon)))
    while 0.5 ** n > epsilon:
        n += 1
    while n > 1 and 0.5 ** (n - 1) <= epsilon:
        n -= 1
    return n


def rounded_steps_for(epsilon: float) -> int:
    """Nearest integer n to the exact solution of 0.5**n == epsilon."""
    if not 0.0 < epsilon < 1.0:
        raise ConfigError(f"epsilon must lie strictly between 0 and 1, got {epsilon!r}")
    return max(1, round(-math.log2(epsilon)))


def ambiguity_monte_carlo(
    n: int, trials: int, seed: int, *, chunk: int = 1 << 14
) -> ReliabilityReport:
    """Estimate the ambiguity probability by drawing independent pairs.

    Trial ``i`` regenerates exactly the pair that ``gen_rtw_pair`` would
    produce for the derived seed of ``(seed, i)``; the whole sweep is
    evaluated in vectorized chunks whose aggregate is independent of the
    chunking, so serial and chunked runs agree bit for bit.
    """
    if not isinstance(n, int) or not 1 <= n <= 20:
        raise ConfigError(f"window length must be an integer in [1, 20], got {n!r}")
    if trials < 1000:
        raise ConfigError(f"at least 1000 trials required, got {trials}")
    matches = 0
    for start in range(0, trials, chunk):
        count = min(chunk, trials - start)
        h = rtw_sign_matrix(seed, count, n, child=0, start=start)
        l = rtw_sign_matrix(seed, count, n, child=1, start=start)
        matches += int(np.sum(np.all(h == l, axis=1)))
    analytic = ambiguity_analytic(n)
    estimate = matches / trials
    sigma = math.sqrt(analytic * (1.0 - analytic) / trials)
    band = 4.0 * sigma
    return ReliabilityReport(
        n=n,
        analytic_ambiguity=analytic,
        mc_estimate=estimate,
        mc_trials=trials,
        sigma=sigma,
        band_4sigma=band,
        within_band=abs(estimate - analytic) <= band,
    )


@dataclass
class LatencyReport:
    """Distribution of the deciding step over independently seeded runs."""

    backend: str
    trials: int
    steps: int
    histogram: dict[int, int]
    ambiguous_windows: int
    mean_decided_at: float
    decision_rate: float           # per-step probability that a step decides

    def to_doc(self) -> dict:
        return {
            "backend": self.backend,
            "trials": self.trials,
            "steps": self.steps,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "ambiguous_windows": self.ambiguous_windows,
            "mean_decided_at": self.mean_decided_at,
            "decision_rate": self.decision_rate,
        }


def decision_latency(
    network: CompiledNetwork,
    config: GeneratorConfig,
    trials: int,
    backend: str = "spike",
    assignment: dict[str, int] | None = None,
) -> LatencyReport:
    """Histogram of the step at which output values become decided.

    Each trial runs the network on a freshly derived reference pair and
    records the deciding step of its outputs (all outputs decide at the
    same step, the pair's first discriminating step, which for the spike
    family is the first universe spike).  The distribution is geometric
    with per-step rate ``spike_rate_h + spike_rate_l`` for spikes and 0.5
    for RTW references; windows that cannot decide at all are tallied
    separately.
    """
    if trials < 1:
        raise ConfigError(f"trials must be positive, got {trials}")
    if assignment is None:
        assignment = {name: 1 for name in network.inputs}
    _check_assignment(network.inputs, assignment)
    histogram: dict[int, int] = {}
    ambiguous_windows = 0
    total = 0
    out_index = {name: network.wires.index(name) for name in network.outputs}
    for trial in range(trials):
        cfg = replace(config, seed=derive_seed(config.seed, trial))
        bk = make_backend(backend, cfg)
        waves = _evaluate_wires(network, bk, assignment)
        decided: int | None = None
        for name in network.outputs:
            outcome = _classify_wire(bk, waves[out_index[name]])
            if outcome.is_ambiguous:
                decided = None
                break
            if decided is None:
                decided = outcome.decided_at
            elif decided != outcome.decided_at:
                raise AssertionError("outputs decided at different steps in one run")
        if decided is None:
            ambiguous_windows += 1
            continue
        if isinstance(bk, _SpikeBackend):
            first_u = int(np.argmax(universe_spike(bk.pair).values))
            assert decided == first_u, "decision step deviates from the first universe spike"
        histogram[decided] = histogram.get(decided, 0) + 1
        total += decided
    decided_trials = trials - ambiguous_windows
    mean = total / decided_trials if decided_trials else float("nan")
    if backend == "spike":
        rate = config.spike_rate_h + config.spike_rate_l
    else:
        rate = 0.5
    return LatencyReport(
        backend=backend,
        trials=trials,
        steps=config.steps,
        histogram=histogram,
        ambiguous_windows=ambiguous_windows,
        mean_decided_at=mean,
        decision_rate=rate,
    )
