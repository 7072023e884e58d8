"""Universal gates for the spike-train logic family.

The building block is an idealized, delay-free neuron with one excitatory
and one inhibitory input: it fires at a step exactly when the excitatory
input fires and the inhibitory one does not.  Two such neurons form an
orthon, which splits its inputs A, B into the set intersections A&B and
A&~B.  The NOT gate feeds the universe (union of both references) and the
input through one orthon; the AND gate combines four orthons through a
saturating three-input adder neuron:

    NOT x      = (1 - x) & U
    x1 AND x2  = (x1 & x2 & H) | (x1 & L) | (x2 & L)

Every circuit-level evaluation here is asserted against its direct
set-algebra formula, so the neuron wiring and the defining set identities
can never drift apart silently.
"""

from typing import NamedTuple

import numpy as np

from .errors import (
    AmbiguousWindowError,
    FamilyMismatchError,
    InvalidLogicValueError,
    LengthMismatchError,
)
from .signals import (
    SPIKE,
    Classification,
    LogicReferencePair,
    SpikeTrain,
    classify,
    universe_spike,
)


def _require_same_length(a: SpikeTrain, b: SpikeTrain) -> None:
    if len(a) != len(b):
        raise LengthMismatchError(f"spike trains differ in length ({len(a)} vs {len(b)})")


def neuron_eval(excitatory: SpikeTrain, inhibitory: SpikeTrain) -> SpikeTrain:
    """Delay-free neuron: fires where the (+) input fires and the (-) input is silent."""
    _require_same_length(excitatory, inhibitory)
    return SpikeTrain(excitatory.values * (1 - inhibitory.values))


class OrthonOutputs(NamedTuple):
    intersection: SpikeTrain   # A & B, the upper output
    difference: SpikeTrain     # A & ~B, the lower output


def orthon_eval(a: SpikeTrain, b: SpikeTrain) -> OrthonOutputs:
    """Two-neuron orthon splitting A, B into A & B and A & ~B.

    The first neuron takes A excitatory and B inhibitory, producing A & ~B;
    the second takes A excitatory and the first neuron's output inhibitory,
    which leaves A & B.  Both outputs are asserted against the direct set
    formulas.
    """
    _require_same_length(a, b)
    lower = neuron_eval(a, b)
    upper = neuron_eval(a, lower)
    assert np.array_equal(upper.values, a.values * b.values), "orthon upper output deviates"
    assert np.array_equal(lower.values, a.values * (1 - b.values)), "orthon lower output deviates"
    return OrthonOutputs(upper, lower)


def adder_union(*inputs: SpikeTrain) -> SpikeTrain:
    """Adder neuron: fires when any excitatory input fires (saturating union)."""
    if not inputs:
        raise ValueError("adder neuron needs at least one input")
    acc = inputs[0].values
    for train in inputs[1:]:
        _require_same_length(inputs[0], train)
        acc = acc | train.values
    return SpikeTrain(acc)


def _require_logic_value(pair: LogicReferencePair, x: SpikeTrain, role: str) -> None:
    if pair.family != SPIKE:
        raise FamilyMismatchError(f"spike gates need a spike pair, got {pair.family}")
    if len(x) != pair.steps:
        raise LengthMismatchError(f"{role} has {len(x)} steps, pair has {pair.steps}")
    if not (x == pair.h or x == pair.l):
        raise InvalidLogicValueError(f"{role} matches neither reference train")


def spike_not(pair: LogicReferencePair, x: SpikeTrain) -> SpikeTrain:
    """NOT gate: the universe spikes that the input does not claim.

    Realized as one orthon with the universe on A and the input on B,
    taking the lower (A & ~B) output; checked against (1 - x) * U.
    """
    _require_logic_value(pair, x, "input")
    u = universe_spike(pair)
    out = orthon_eval(u, x).difference
    assert np.array_equal(out.values, (1 - x.values) * u.values), "NOT circuit deviates"
    return out


def spike_and(pair: LogicReferencePair, x1: SpikeTrain, x2: SpikeTrain) -> SpikeTrain:
    """AND gate: four orthons into a three-input adder neuron.

    The adder unions x1 & x2 & H (two chained orthons), x1 & L and x2 & L;
    the result is checked against the direct set formula.
    """
    _require_logic_value(pair, x1, "first input")
    _require_logic_value(pair, x2, "second input")
    both = orthon_eval(x1, x2).intersection
    both_high = orthon_eval(both, pair.h).intersection
    x1_low = orthon_eval(x1, pair.l).intersection
    x2_low = orthon_eval(x2, pair.l).intersection
    out = adder_union(both_high, x1_low, x2_low)
    direct = (
        x1.values * x2.values * pair.h.values
        | x1.values * pair.l.values
        | x2.values * pair.l.values
    )
    assert np.array_equal(out.values, direct), "AND circuit deviates"
    return out


def spike_or(pair: LogicReferencePair, x1: SpikeTrain, x2: SpikeTrain) -> SpikeTrain:
    return spike_not(pair, spike_and(pair, spike_not(pair, x1), spike_not(pair, x2)))


def spike_nand(pair: LogicReferencePair, x1: SpikeTrain, x2: SpikeTrain) -> SpikeTrain:
    return spike_not(pair, spike_and(pair, x1, x2))


def spike_nor(pair: LogicReferencePair, x1: SpikeTrain, x2: SpikeTrain) -> SpikeTrain:
    return spike_not(pair, spike_or(pair, x1, x2))


def spike_xor(pair: LogicReferencePair, x1: SpikeTrain, x2: SpikeTrain) -> SpikeTrain:
    # Same frozen decomposition as the RTW family and the netlist lowering.
    return spike_or(
        pair,
        spike_and(pair, x1, spike_not(pair, x2)),
        spike_and(pair, spike_not(pair, x1), x2),
    )


def spike_xnor(pair: LogicReferencePair, x1: SpikeTrain, x2: SpikeTrain) -> SpikeTrain:
    return spike_not(pair, spike_xor(pair, x1, x2))


def decision_step(pair: LogicReferencePair, y: SpikeTrain) -> int:
    """Earliest step at which ``y``'s logic value is decided.

    For well-formed references this is the first universe spike: a train
    that spikes there is High or Low depending on which reference owns the
    spike, and a silent train is the other value.
    """
    _require_logic_value(pair, y, "input")
    outcome: Classification = classify(y, pair)
    if outcome.is_ambiguous or outcome.decided_at is None:
        raise AmbiguousWindowError(
            f"window of {pair.steps} steps cannot decide: {outcome.detail}"
        )
    return outcome.decided_at
