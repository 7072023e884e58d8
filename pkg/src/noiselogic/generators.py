"""Seeded generators for reference waves.

All generators are pure functions of their config: an identical
:class:`~noiselogic.signals.GeneratorConfig` always yields a bit-identical
waveform, via the SplitMix64 streams documented in :mod:`noiselogic.prng`.

Stream layout (fixed; golden tests depend on it):

* ``gen_rtw`` draws from the root stream of ``config.seed``, one word per
  step, mapping the top bit to +1/-1.
* ``gen_rtw_pair`` uses child streams 0 (High) and 1 (Low) of
  ``config.seed``.
* ``gen_orthogonal_spike_pair`` attempt ``r`` uses child stream ``r``; each
  step makes one three-way draw (High spike, Low spike, no spike), which
  makes the trains disjoint by construction.  Attempts repeat, up to
  :data:`MAX_RETRIES`, until both trains are non-empty.
* ``gen_disjoint_spike_pairs`` is the joint multi-pair variant: one
  (2N+1)-way draw per step keeps all 2N trains pairwise disjoint.
"""

import numpy as np

from .errors import ConfigError, GenerationError
from .prng import GOLDEN, MASK64, SplitMix64, derive_seed, mix64_array
from .signals import GeneratorConfig, LogicReferencePair, RtwSignal, SpikeTrain

MAX_RETRIES = 64

_U = np.uint64


def _rtw_from_stream(stream: SplitMix64, steps: int) -> RtwSignal:
    bits = (stream.block(steps) >> _U(63)).astype(np.int64)
    return RtwSignal(2 * bits - 1)


def gen_rtw(config: GeneratorConfig) -> RtwSignal:
    """One random telegraph wave: each step -1 or +1 with probability 0.5."""
    return _rtw_from_stream(SplitMix64(config.seed), config.steps)


def gen_rtw_pair(config: GeneratorConfig) -> LogicReferencePair:
    """Independent High and Low RTW references from one config."""
    h = _rtw_from_stream(SplitMix64(derive_seed(config.seed, 0)), config.steps)
    l = _rtw_from_stream(SplitMix64(derive_seed(config.seed, 1)), config.steps)
    return LogicReferencePair(h, l)


def _threshold(p: float) -> int:
    # Exact: p has a 53-bit mantissa, scaling by 2**64 only shifts the exponent.
    return int(p * 2.0**64)


def _categorical_spikes(raw: np.ndarray, rates: list[float]) -> np.ndarray:
    """One draw per step over len(rates)+1 outcomes; returns the 0/1 trains.

    Outcome ``i`` fires train ``i`` when the raw word falls in the i-th
    probability band; the remainder band fires nothing.  Bands are compared
    as exact 64-bit integers, so the draw is a deterministic function of the
    raw stream.
    """
    trains = np.zeros((len(rates), raw.size), dtype=np.int64)
    lo = 0
    acc = 0.0
    for i, rate in enumerate(rates):
        acc += rate
        hi = min(_threshold(acc), 2**64)
        if hi <= lo:
            continue
        if hi == 2**64:
            band = raw >= _U(lo)
        else:
            band = (raw >= _U(lo)) & (raw < _U(hi))
        trains[i][band] = 1
        lo = hi
    return trains


def gen_orthogonal_spike_pair(config: GeneratorConfig) -> LogicReferencePair:
    """Disjoint High/Low spike trains, both guaranteed non-empty.

    Disjointness holds by construction (one categorical draw per step);
    non-emptiness is enforced by regenerating from the next child stream,
    failing after :data:`MAX_RETRIES` attempts.
    """
    for attempt in range(MAX_RETRIES):
        stream = SplitMix64(derive_seed(config.seed, attempt))
        raw = stream.block(config.steps)
        h_vals, l_vals = _categorical_spikes(raw, [config.spike_rate_h, config.spike_rate_l])
        if h_vals.any() and l_vals.any():
            return LogicReferencePair(SpikeTrain(h_vals), SpikeTrain(l_vals))
    raise GenerationError(
        f"could not draw two non-empty spike trains in {MAX_RETRIES} attempts "
        f"(steps={config.steps}, rates={config.spike_rate_h}/{config.spike_rate_l})"
    )


def gen_disjoint_spike_pairs(
    seed: int,
    steps: int,
    n_pairs: int,
    rate_per_train: float | None = None,
) -> tuple[LogicReferencePair, ...]:
    """Jointly generate ``n_pairs`` spike pairs whose 2N trains never collide.

    A single (2N+1)-way categorical draw per step assigns the step's spike
    to exactly one train or to none, so cross-pair disjointness is a
    construction guarantee rather than a filter.  The default per-train
    rate fills 90% of the steps in expectation, split evenly.
    """
    if n_pairs < 1:
        raise ConfigError(f"n_pairs must be at least 1, got {n_pairs}")
    if steps < 1:
        raise ConfigError(f"steps must be at least 1, got {steps}")
    if rate_per_train is None:
        rate_per_train = 0.9 / (2 * n_pairs)
    if not 0.0 < rate_per_train < 1.0 or 2 * n_pairs * rate_per_train > 1.0:
        raise ConfigError(
            f"per-train rate {rate_per_train} infeasible for {2 * n_pairs} disjoint trains"
        )
    rates = [rate_per_train] * (2 * n_pairs)
    for attempt in range(MAX_RETRIES):
        stream = SplitMix64(derive_seed(seed, attempt))
        raw = stream.block(steps)
        trains = _categorical_spikes(raw, rates)
        if all(trains[i].any() for i in range(2 * n_pairs)):
            return tuple(
                LogicReferencePair(SpikeTrain(trains[2 * i]), SpikeTrain(trains[2 * i + 1]))
                for i in range(n_pairs)
            )
    raise GenerationError(
        f"could not fill {2 * n_pairs} non-empty disjoint trains in "
        f"{MAX_RETRIES} attempts (steps={steps}, rate={rate_per_train})"
    )


def gen_rtw_pairs(seed: int, steps: int, n_pairs: int) -> tuple[LogicReferencePair, ...]:
    """Independently seeded RTW pairs (child stream per pair)."""
    if n_pairs < 1:
        raise ConfigError(f"n_pairs must be at least 1, got {n_pairs}")
    return tuple(
        gen_rtw_pair(GeneratorConfig(seed=derive_seed(seed, i), steps=steps))
        for i in range(n_pairs)
    )


def rtw_sign_matrix(
    seed: int, trials: int, steps: int, child: int, start: int = 0
) -> np.ndarray:
    """Vectorized RTW generation for Monte-Carlo sweeps.

    Row ``i`` equals ``gen_rtw_pair`` child ``child`` (0 for High, 1 for
    Low) of the derived trial seed ``derive_seed(seed, start + i)``; the
    serial and vectorized paths are bit-identical by the counter-mode
    identity of SplitMix64, so chunked sweeps aggregate independently of
    the chunking.
    """
    ks = np.arange(start + 1, start + trials + 1, dtype=np.uint64)
    trial_seeds = mix64_array(_U(seed & MASK64) + _U(GOLDEN) * ks)
    child_offset = _U((GOLDEN * (child + 1)) & MASK64)
    child_seeds = mix64_array(trial_seeds + child_offset)
    steps_k = np.arange(1, steps + 1, dtype=np.uint64)
    raw = mix64_array(child_seeds[:, None] + _U(GOLDEN) * steps_k[None, :])
    return 2 * (raw >> _U(63)).astype(np.int64) - 1
