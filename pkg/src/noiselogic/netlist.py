"""Textual gate-level netlists, lowering to the {NOT, AND} basis, and a
plain Boolean evaluator used as the oracle for equivalence checks.

Grammar (line oriented, ``#`` starts a comment, blank lines ignored)::

    file  := line*
    line  := "input" name+
           | "wire" name "=" gate name{1,2}
           | "output" name "=" gate name{1,2}
    gate  := NOT | AND | OR | NAND | NOR | XOR | XNOR | BUF
    name  := [A-Za-z_][A-Za-z0-9_]*

Every argument must be a declared input or a previously assigned wire, so
well-formed netlists are acyclic by construction.  Lowering expands each
derived gate through a frozen table of canonical compositions:

    ==========  ==========================================  ==========
    gate        expansion                                   primitives
    ==========  ==========================================  ==========
    NOT a       NOT(a)                                      1
    AND a b     AND(a, b)                                   1
    BUF a       NOT(NOT(a))                                 2
    NAND a b    NOT(AND(a, b))                              2
    OR a b      NOT(AND(NOT(a), NOT(b)))                    4
    NOR a b     NOT(OR(a, b))                               5
    XOR a b     OR(AND(a, NOT(b)), AND(NOT(a), b))          8
    XNOR a b    NOT(XOR(a, b))                              9
    ==========  ==========================================  ==========

The table is part of the artifact's contract; compiled networks are
byte-stable given equal input, and every intermediate wire records which
source gate produced it.
"""

import json
import re
from dataclasses import dataclass, field

from .errors import NetlistError

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

GATE_ARITY = {
    "NOT": 1,
    "BUF": 1,
    "AND": 2,
    "OR": 2,
    "NAND": 2,
    "NOR": 2,
    "XOR": 2,
    "XNOR": 2,
}

_RESERVED = {"input", "wire", "output"}

_BOOL_FN = {
    "NOT": lambda a: 1 - a,
    "BUF": lambda a: a,
    "AND": lambda a, b: a & b,
    "OR": lambda a, b: a | b,
    "NAND": lambda a, b: 1 - (a & b),
    "NOR": lambda a, b: 1 - (a | b),
    "XOR": lambda a, b: a ^ b,
    "XNOR": lambda a, b: 1 - (a ^ b),
}


@dataclass(frozen=True)
class Assignment:
    target: str
    gate: str
    args: tuple[str, ...]
    lineno: int = field(compare=False)   # diagnostic only, not semantics
    is_output: bool = False


@dataclass(frozen=True)
class NetlistAst:
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    assignments: tuple[Assignment, ...]


@dataclass(frozen=True)
class CompiledGate:
    """One primitive gate; ``args`` and ``out`` are wire indices."""

    op: str
    args: tuple[int, ...]
    out: int
    src: str


@dataclass(frozen=True)
class CompiledNetwork:
    """Topologically ordered {NOT, AND} network.

    ``wires`` assigns indices: inputs first, then one wire per primitive in
    emission order.  Lowering-introduced wires carry a ``$`` in their name,
    which user wires cannot, so the namespaces never collide.
    """

    wires: tuple[str, ...]
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    gates: tuple[CompiledGate, ...]

    def wire_index(self, name: str) -> int:
        return self.wires.index(name)

    def gate_counts(self) -> dict[str, int]:
        counts = {"NOT": 0, "AND": 0}
        for gate in self.gates:
            counts[gate.op] += 1
        return counts

    def to_json(self) -> str:
        doc = {
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "gates": [
                {
                    "op": g.op,
                    "args": [self.wires[i] for i in g.args],
                    "out": self.wires[g.out],
                    "src": g.src,
                }
                for g in self.gates
            ],
        }
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "CompiledNetwork":
        doc = json.loads(text)
        wires = list(doc["inputs"])
        index = {name: i for i, name in enumerate(wires)}
        gates = []
        for g in doc["gates"]:
            if g["op"] not in ("NOT", "AND"):
                raise NetlistError(f"compiled network contains non-primitive op {g['op']!r}")
            try:
                args = tuple(index[a] for a in g["args"])
            except KeyError as exc:
                raise NetlistError(f"gate argument {exc.args[0]!r} precedes its definition")
            out_name = g["out"]
            if out_name in index:
                raise NetlistError(f"wire {out_name!r} defined twice")
            index[out_name] = len(wires)
            wires.append(out_name)
            gates.append(CompiledGate(g["op"], args, index[out_name], g.get("src", out_name)))
        outputs = tuple(doc["outputs"])
        for name in outputs:
            if name not in index:
                raise NetlistError(f"output {name!r} is never defined")
        return cls(tuple(wires), tuple(doc["inputs"]), outputs, tuple(gates))


def parse(text: str) -> NetlistAst:
    """Parse netlist source into an AST, rejecting malformed programs.

    Raises :class:`NetlistError` with the offending line number for bad
    tokens, unknown gates, undefined or redefined names, arity mismatches
    and netlists without outputs.
    """
    inputs: list[str] = []
    outputs: list[str] = []
    assignments: list[Assignment] = []
    defined: set[str] = set()

    def _name(token: str, lineno: int) -> str:
        if not NAME_RE.match(token):
            raise NetlistError(f"invalid name {token!r}", lineno)
        if token in _RESERVED:
            raise NetlistError(f"{token!r} is a reserved word", lineno)
        return token

    def _define(token: str, lineno: int) -> str:
        name = _name(token, lineno)
        if name in defined:
            raise NetlistError(f"name {name!r} already defined", lineno)
        defined.add(name)
        return name

    def _use(token: str, lineno: int) -> str:
        name = _name(token, lineno)
        if name not in defined:
            raise NetlistError(f"undefined name {name!r}", lineno)
        return name

    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]
        if keyword == "input":
            if len(tokens) < 2:
                raise NetlistError("input line declares no names", lineno)
            for token in tokens[1:]:
                inputs.append(_define(token, lineno))
            continue
        if keyword in ("wire", "output"):
            if len(tokens) < 3 or tokens[2] != "=":
                raise NetlistError(f"expected '{keyword} <name> = <GATE> <args>'", lineno)
            if len(tokens) < 4:
                raise NetlistError("missing gate after '='", lineno)
            gate = tokens[3]
            if gate not in GATE_ARITY:
                raise NetlistError(f"unknown gate {gate!r}", lineno)
            args = tokens[4:]
            if len(args) != GATE_ARITY[gate]:
                raise NetlistError(
                    f"{gate} takes {GATE_ARITY[gate]} argument(s), got {len(args)}", lineno
                )
            arg_names = tuple(_use(token, lineno) for token in args)
            target = _define(tokens[1], lineno)
            assignments.append(Assignment(target, gate, arg_names, lineno, keyword == "output"))
            if keyword == "output":
                outputs.append(target)
            continue
        raise NetlistError(f"expected 'input', 'wire' or 'output', got {keyword!r}", lineno)

    if not outputs:
        raise NetlistError("netlist declares no outputs")
    return NetlistAst(tuple(inputs), tuple(outputs), tuple(assignments))


def format_netlist(ast: NetlistAst) -> str:
    """Canonical printer; parse(format_netlist(parse(text))) == parse(text)."""
    lines = []
    if ast.inputs:
        lines.append("input " + " ".join(ast.inputs))
    for a in ast.assignments:
        keyword = "output" if a.is_output else "wire"
        lines.append(f"{keyword} {a.target} = {a.gate} " + " ".join(a.args))
    return "\n".join(lines) + "\n"


class _Lowerer:
    def __init__(self, inputs: tuple[str, ...]):
        self.wires: list[str] = list(inputs)
        self.index: dict[str, int] = {name: i for i, name in enumerate(inputs)}
        self.gates: list[CompiledGate] = []
        self._src = ""
        self._tmp = 0

    def emit(self, op: str, args: tuple[int, ...], out_name: str) -> int:
        out = len(self.wires)
        self.index[out_name] = out
        self.wires.append(out_name)
        self.gates.append(CompiledGate(op, args, out, self._src))
        return out

    def fresh(self) -> str:
        name = f"{self._src}${self._tmp}"
        self._tmp += 1
        return name

    def not_(self, a: int, out: str | None = None) -> int:
        return self.emit("NOT", (a,), out or self.fresh())

    def and_(self, a: int, b: int, out: str | None = None) -> int:
        return self.emit("AND", (a, b), out or self.fresh())

    def or_(self, a: int, b: int, out: str | None = None) -> int:
        return self.not_(self.and_(self.not_(a), self.not_(b)), out)

    def expand(self, assignment: Assignment) -> None:
        self._src = assignment.target
        self._tmp = 0
        args = [self.index[name] for name in assignment.args]
        target = assignment.target
        gate = assignment.gate
        if gate == "NOT":
            self.not_(args[0], target)
        elif gate == "AND":
            self.and_(args[0], args[1], target)
        elif gate == "BUF":
            self.not_(self.not_(args[0]), target)
        elif gate == "NAND":
            self.not_(self.and_(args[0], args[1]), target)
        elif gate == "OR":
            self.or_(args[0], args[1], target)
        elif gate == "NOR":
            self.not_(self.or_(args[0], args[1]), target)
        elif gate == "XOR":
            left = self.and_(args[0], self.not_(args[1]))
            right = self.and_(self.not_(args[0]), args[1])
            self.or_(left, right, target)
        elif gate == "XNOR":
            left = self.and_(args[0], self.not_(args[1]))
            right = self.and_(self.not_(args[0]), args[1])
            self.not_(self.or_(left, right), target)
        else:  # pragma: no cover - parser rejects unknown gates
            raise NetlistError(f"cannot lower gate {gate!r}")


def lower(ast: NetlistAst) -> CompiledNetwork:
    """Expand every derived gate through the canonical table."""
    lowerer = _Lowerer(ast.inputs)
    for assignment in ast.assignments:
        lowerer.expand(assignment)
    return CompiledNetwork(
        tuple(lowerer.wires), ast.inputs, ast.outputs, tuple(lowerer.gates)
    )


def _check_assignment(inputs: tuple[str, ...], assignment: dict) -> None:
    missing = [name for name in inputs if name not in assignment]
    if missing:
        raise NetlistError(f"assignment missing input(s): {', '.join(missing)}")
    for name, value in assignment.items():
        if value not in (0, 1):
            raise NetlistError(f"input {name!r} must be 0 or 1, got {value!r}")


def eval_boolean(source: NetlistAst | CompiledNetwork, assignment: dict) -> dict[str, int]:
    """Evaluate outputs under a plain Boolean semantics.

    Accepts either an AST (evaluating the declared gates directly) or a
    compiled network (evaluating the primitives); for any well-lowered
    network the two agree on every assignment.
    """
    if isinstance(source, NetlistAst):
        _check_assignment(source.inputs, assignment)
        values = {name: int(assignment[name]) for name in source.inputs}
        for a in source.assignments:
            values[a.target] = _BOOL_FN[a.gate](*(values[arg] for arg in a.args))
        return {name: values[name] for name in source.outputs}

    _check_assignment(source.inputs, assignment)
    values = [0] * len(source.wires)
    for i, name in enumerate(source.inputs):
        values[i] = int(assignment[name])
    for gate in source.gates:
        if gate.op == "NOT":
            values[gate.out] = 1 - values[gate.args[0]]
        else:
            values[gate.out] = values[gate.args[0]] & values[gate.args[1]]
    index = {name: i for i, name in enumerate(source.wires)}
    return {name: values[index[name]] for name in source.outputs}
