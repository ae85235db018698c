"""Gates, circuits and the line-oriented circuit file format.

Circuits are read left to right: ``gates[0]`` is applied first.  Wires are
numbered from the top, so wire 0 is the first tensor factor.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "Gate",
    "Circuit",
    "CircuitSyntaxError",
    "parse_circuit",
    "format_circuit",
    "parse_gate_token",
    "format_gate",
    "swap_word",
    "expand_nonadjacent",
    "random_circuit",
    "inverse_word",
]

GENERATORS = ("H", "S", "X", "CZ", "W")
FAMILIES = {"A": (1, 3), "B": (2, 4), "C": (1, 2), "D": (2, 4), "E": (1, 4)}
_ARITY = {"H": 1, "S": 1, "X": 1, "CZ": 2, "W": 0, "A": 1, "B": 2, "C": 1, "D": 2, "E": 1}


class CircuitSyntaxError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


@dataclass(frozen=True, slots=True)
class Gate:
    kind: str
    wires: tuple[int, ...] = ()
    index: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _ARITY:
            raise ValueError(f"unknown gate {self.kind!r}")
        object.__setattr__(self, "wires", tuple(self.wires))
        if len(self.wires) != _ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {_ARITY[self.kind]} wires, got {self.wires}")
        if any(w < 0 for w in self.wires):
            raise ValueError("negative wire index")
        if len(self.wires) == 2 and self.wires[0] == self.wires[1]:
            raise ValueError(f"{self.kind} needs two distinct wires")
        if self.kind in FAMILIES:
            lo, hi = 1, FAMILIES[self.kind][1]
            if not lo <= self.index <= hi:
                raise ValueError(f"{self.kind} index {self.index} outside 1..{hi}")
            if len(self.wires) == 2 and self.wires[1] != self.wires[0] + 1:
                raise ValueError(f"{self.kind}{self.index} must act on wires (w, w+1)")
        elif self.index:
            raise ValueError(f"{self.kind} takes no index")

    @property
    def is_clean(self) -> bool:
        return self.kind in FAMILIES

    @property
    def is_adjacent(self) -> bool:
        return len(self.wires) < 2 or abs(self.wires[0] - self.wires[1]) == 1

    def shifted(self, offset: int) -> Gate:
        return Gate(self.kind, tuple(w + offset for w in self.wires), self.index)

    def __str__(self) -> str:
        return format_gate(self)


def format_gate(g: Gate) -> str:
    name = f"{g.kind}{g.index}" if g.is_clean else g.kind
    return " ".join([name, *map(str, g.wires)])


def parse_gate_token(text: str, line: int | None = None) -> Gate:
    parts = text.split()
    if not parts:
        raise CircuitSyntaxError("empty gate", line)
    name, args = parts[0], parts[1:]
    try:
        wires = tuple(int(a) for a in args)
    except ValueError:
        raise CircuitSyntaxError(f"bad wire index in {text!r}", line) from None
    kind, index = name, 0
    if name[:1] in FAMILIES and name[1:].isdigit():
        kind, index = name[0], int(name[1:])
    elif name.upper() in _ARITY and name.upper() not in FAMILIES:
        kind = name.upper()
    else:
        raise CircuitSyntaxError(f"unknown gate {name!r}", line)
    try:
        return Gate(kind, wires, index)
    except ValueError as exc:
        raise CircuitSyntaxError(str(exc), line) from None


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(w >= self.n for w in g.wires):
                raise ValueError(f"gate {g} out of range for {self.n} wires")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if other.n != self.n:
            raise ValueError("circuits act on different wire counts")
        return Circuit(self.n, self.gates + other.gates)

    def is_adjacent(self) -> bool:
        return all(g.is_adjacent for g in self.gates)

    def inverse(self) -> Circuit:
        return Circuit(self.n, inverse_word(self.gates))

    def __str__(self) -> str:
        return format_circuit(self)


def inverse_word(gates: Sequence[Gate]) -> tuple[Gate, ...]:
    """Inverse of a word over the generators H, S, X, CZ and ω."""
    out: list[Gate] = []
    for g in reversed(gates):
        if g.kind in ("H", "X", "CZ"):
            out.append(g)
        elif g.kind == "S":
            out.extend([g, g, g])
        elif g.kind == "W":
            out.extend([g] * 7)
        else:
            raise ValueError(f"no generator inverse for library gate {g}")
    return tuple(out)


def parse_circuit(text: str, expand_nonadjacent_cz: bool = False) -> Circuit:
    n = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            head = line.split()
            if len(head) != 2 or head[0] != "qubits" or not head[1].isdigit():
                raise CircuitSyntaxError("expected header 'qubits <n>'", lineno)
            n = int(head[1])
            continue
        g = parse_gate_token(line, lineno)
        if any(w >= n for w in g.wires):
            raise CircuitSyntaxError(f"wire out of range in {line!r} (qubits {n})", lineno)
        if not g.is_adjacent and not expand_nonadjacent_cz:
            raise CircuitSyntaxError(
                f"non-adjacent {g.kind} on wires {g.wires}; use --expand-nonadjacent", lineno
            )
        gates.append(g)
    if n is None:
        raise CircuitSyntaxError("missing 'qubits <n>' header")
    c = Circuit(n, gates)
    return expand_nonadjacent(c) if expand_nonadjacent_cz else c


def format_circuit(c: Circuit) -> str:
    lines = [f"qubits {c.n}"]
    lines.extend(format_gate(g) for g in c.gates)
    return "\n".join(lines) + "\n"


def swap_word(a: int, b: int) -> list[Gate]:
    """Swap of adjacent wires as H⊗H, CZ repeated three times."""
    if abs(a - b) != 1:
        raise ValueError("swap_word needs adjacent wires")
    a, b = min(a, b), max(a, b)
    word: list[Gate] = []
    for _ in range(3):
        word += [Gate("H", (a,)), Gate("H", (b,)), Gate("CZ", (a, b))]
    return word


def _expand_cz(a: int, b: int) -> list[Gate]:
    a, b = min(a, b), max(a, b)
    if b == a + 1:
        return [Gate("CZ", (a, b))]
    # bring the lower wire up by one, recurse, and move it back
    s = swap_word(b - 1, b)
    return s + _expand_cz(a, b - 1) + s


def expand_nonadjacent(c: Circuit) -> Circuit:
    out: list[Gate] = []
    for g in c.gates:
        if g.kind == "CZ" and not g.is_adjacent:
            out.extend(_expand_cz(*g.wires))
        else:
            out.append(g)
    return Circuit(c.n, out)


def random_circuit(
    n: int,
    length: int,
    rng: random.Random,
    kinds: Iterable[str] = ("H", "S", "CZ"),
) -> Circuit:
    """Uniformly random word over ``kinds`` with adjacent CZ gates."""
    kinds = [k for k in kinds if (k != "CZ" or n >= 2) and (k == "W" or n >= 1)]
    if length and not kinds:
        raise ValueError(f"no gate kind fits on {n} wires")
    gates = []
    for _ in range(length):
        kind = rng.choice(kinds)
        if kind == "CZ":
            w = rng.randrange(n - 1)
            gates.append(Gate("CZ", (w, w + 1)))
        elif kind == "W":
            gates.append(Gate("W"))
        else:
            gates.append(Gate(kind, (rng.randrange(n),)))
    return Circuit(n, gates)
