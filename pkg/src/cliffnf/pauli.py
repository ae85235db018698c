"""Exact arithmetic in the n-qubit Pauli group.

A Pauli operator is stored as ``i**phase * P_0 (x) P_1 (x) ... (x) P_{n-1}``
with each ``P_q`` in {I, X, Y, Z}.  Qubit ``q`` is bit ``q`` of the two
integer masks ``x`` and ``z``; a qubit with both bits set holds a literal
``Y`` (the ``i`` of ``Y = iXZ`` is already accounted for, so ``phase`` is the
true scalar prefactor).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "PauliOperator",
    "pauli_mul",
    "pauli_commutes",
    "basis_pauli",
    "parse_pauli",
]

_LETTERS = "IXZY"  # indexed by x | (z << 1)
_PHASE_WORDS = {0: "", 1: "i", 2: "-", 3: "-i"}


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True, slots=True)
class PauliOperator:
    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise ValueError(f"bit masks do not fit {self.n} qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- construction -------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls(n)

    @classmethod
    def from_letters(cls, letters: str, phase: int = 0) -> PauliOperator:
        x = z = 0
        for q, ch in enumerate(letters):
            if ch not in "IXYZ":
                raise ValueError(f"not a Pauli letter: {ch!r}")
            if ch in "XY":
                x |= 1 << q
            if ch in "ZY":
                z |= 1 << q
        return cls(len(letters), x, z, phase)

    # -- inspection ---------------------------------------------------
    def letter(self, q: int) -> str:
        return _LETTERS[((self.x >> q) & 1) | (((self.z >> q) & 1) << 1)]

    @property
    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))

    @property
    def is_scalar(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def is_hermitian(self) -> bool:
        return self.phase in (0, 2)

    @property
    def support(self) -> list[int]:
        bits = self.x | self.z
        return [q for q in range(self.n) if (bits >> q) & 1]

    def unsigned(self) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, 0)

    def negate(self) -> PauliOperator:
        return PauliOperator(self.n, self.x, self.z, self.phase + 2)

    def restrict(self, wires) -> PauliOperator:
        """The tensor factors on ``wires`` (in that order); phase is kept."""
        x = z = 0
        for j, q in enumerate(wires):
            x |= ((self.x >> q) & 1) << j
            z |= ((self.z >> q) & 1) << j
        return PauliOperator(len(wires), x, z, self.phase)

    def key(self) -> tuple[int, int, int]:
        return (self.x, self.z, self.phase)

    # -- operators ----------------------------------------------------
    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return pauli_mul(self, other)

    def __neg__(self) -> PauliOperator:
        return self.negate()

    def __str__(self) -> str:
        head = {0: "", 1: "i·", 2: "−", 3: "−i·"}[self.phase]
        body = "⊗".join(self.letters) if self.n else "1"
        return head + body

    def compact(self) -> str:
        return _PHASE_WORDS[self.phase] + (self.letters if self.n else "1")


def _check_sizes(a: PauliOperator, b: PauliOperator) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n} qubits")


def pauli_mul(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """Exact product ``a·b`` including the accumulated power of ``i``."""
    _check_sizes(a, b)
    x = a.x ^ b.x
    z = a.z ^ b.z
    # Y = iXZ; reorder X^xa Z^za X^xb Z^zb -> X^x Z^z picks up (-1)^{|za & xb|}
    phase = (
        a.phase
        + b.phase
        + _popcount(a.x & a.z)
        + _popcount(b.x & b.z)
        + 2 * _popcount(a.z & b.x)
        - _popcount(x & z)
    )
    return PauliOperator(a.n, x, z, phase)


def pauli_commutes(a: PauliOperator, b: PauliOperator) -> bool:
    _check_sizes(a, b)
    return (_popcount(a.x & b.z) + _popcount(a.z & b.x)) % 2 == 0


def basis_pauli(n: int, kind: str, q: int) -> PauliOperator:
    """``X`` or ``Z`` on wire ``q`` of an ``n``-qubit register."""
    if not 0 <= q < n:
        raise IndexError(f"wire {q} out of range for {n} qubits")
    if kind == "X":
        return PauliOperator(n, 1 << q, 0)
    if kind == "Z":
        return PauliOperator(n, 0, 1 << q)
    raise ValueError(f"basis Pauli kind must be 'X' or 'Z', got {kind!r}")


_PREFIX = re.compile(r"^\s*([+\-−]?)\s*(i?)\s*(?:·|\*)?\s*")


def parse_pauli(text: str) -> PauliOperator:
    """Parse ``"−i·X⊗Y⊗Z"``, ``"-iXYZ"`` or ``"+XZ"``."""
    m = _PREFIX.match(text)
    sign, imag = m.group(1), m.group(2)
    body = text[m.end():].replace("⊗", "").strip()
    if body in ("", "1"):
        letters = ""
    elif set(body) <= set("IXYZ"):
        letters = body
    else:
        raise ValueError(f"cannot parse Pauli operator {text!r}")
    phase = (2 if sign in "-−" and sign else 0) + (1 if imag else 0)
    return PauliOperator.from_letters(letters, phase)
