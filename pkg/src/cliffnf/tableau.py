"""Clifford operators modulo phase, as automorphisms of the Pauli group.

A :class:`CliffordTableau` lists the images ``C•X_q`` and ``C•Z_q`` of the
single-site generators.  Global phase is deliberately not tracked; two
circuits with equal tableaux differ by a power of ω.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .circuit import Circuit, Gate
from .pauli import PauliOperator, basis_pauli, pauli_commutes, pauli_mul

__all__ = [
    "LocalAction",
    "CliffordTableau",
    "gate_action",
    "tableau_action",
    "tableau_apply_gate",
    "tableau_compose",
    "tableau_inverse",
    "circuit_tableau",
]


class LocalAction:
    """Conjugation action of a gate on ``k`` local wires, as a lookup table.

    ``table[x | z << k] = (x', z', dphase)`` so that conjugating the local
    factor ``σ(x, z)`` gives ``i**dphase σ(x', z')``.
    """

    __slots__ = ("k", "table", "x_images", "z_images")

    def __init__(self, x_images: Sequence[PauliOperator], z_images: Sequence[PauliOperator]):
        k = len(x_images)
        self.k = k
        self.x_images = tuple(x_images)
        self.z_images = tuple(z_images)
        table = []
        for code in range(1 << (2 * k)):
            x, z = code & ((1 << k) - 1), code >> k
            img = PauliOperator(k)
            for j in range(k):
                xb, zb = (x >> j) & 1, (z >> j) & 1
                if xb:
                    img = pauli_mul(img, x_images[j])
                if zb:
                    img = pauli_mul(img, z_images[j])
                if xb and zb:
                    img = PauliOperator(k, img.x, img.z, img.phase + 1)
            table.append((img.x, img.z, img.phase))
        self.table = tuple(table)

    def conjugate(self, p: PauliOperator, wires: Sequence[int]) -> PauliOperator:
        x, z = p.x, p.z
        xl = zl = 0
        for j, w in enumerate(wires):
            xl |= ((x >> w) & 1) << j
            zl |= ((z >> w) & 1) << j
        nx, nz, dphase = self.table[xl | (zl << self.k)]
        for j, w in enumerate(wires):
            mask = 1 << w
            x = (x & ~mask) | (((nx >> j) & 1) << w)
            z = (z & ~mask) | (((nz >> j) & 1) << w)
        return PauliOperator(p.n, x, z, p.phase + dphase)


def _p(letters: str, phase: int = 0) -> PauliOperator:
    return PauliOperator.from_letters(letters, phase)


_PRIMITIVE = {
    "H": LocalAction([_p("Z")], [_p("X")]),
    "S": LocalAction([_p("Y")], [_p("Z")]),
    "X": LocalAction([_p("X")], [_p("Z", 2)]),
    "CZ": LocalAction([_p("XZ"), _p("ZX")], [_p("ZI"), _p("IZ")]),
    "W": LocalAction([], []),
}


def gate_action(g: Gate) -> LocalAction:
    if g.kind in _PRIMITIVE:
        return _PRIMITIVE[g.kind]
    from .gates import library_action

    return library_action(g.kind, g.index)


@dataclass(frozen=True)
class CliffordTableau:
    n: int
    x_images: tuple[PauliOperator, ...]
    z_images: tuple[PauliOperator, ...]

    @classmethod
    def identity(cls, n: int) -> CliffordTableau:
        return cls(
            n,
            tuple(basis_pauli(n, "X", q) for q in range(n)),
            tuple(basis_pauli(n, "Z", q) for q in range(n)),
        )

    @classmethod
    def from_circuit(cls, c: Circuit) -> CliffordTableau:
        return circuit_tableau(c)

    # -- group action -------------------------------------------------
    def action(self, p: PauliOperator) -> PauliOperator:
        return tableau_action(self, p)

    def __call__(self, p: PauliOperator) -> PauliOperator:
        return tableau_action(self, p)

    def apply_gate(self, g: Gate) -> CliffordTableau:
        return tableau_apply_gate(self, g)

    def then(self, c: Circuit | Iterable[Gate]) -> CliffordTableau:
        """Tableau of this operator followed by the gates of ``c``."""
        xs, zs = list(self.x_images), list(self.z_images)
        for g in c:
            if g.kind == "W":
                continue
            act = gate_action(g)
            xs = [act.conjugate(p, g.wires) for p in xs]
            zs = [act.conjugate(p, g.wires) for p in zs]
        return CliffordTableau(self.n, tuple(xs), tuple(zs))

    def compose(self, other: CliffordTableau) -> CliffordTableau:
        return tableau_compose(self, other)

    def inverse(self) -> CliffordTableau:
        return tableau_inverse(self)

    # -- structure ----------------------------------------------------
    def key(self) -> tuple:
        return tuple(p.key() for p in self.x_images) + tuple(p.key() for p in self.z_images)

    def __hash__(self) -> int:
        return hash((self.n, self.key()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return self.n == other.n and self.key() == other.key()

    def is_identity(self) -> bool:
        return self == CliffordTableau.identity(self.n)

    def is_valid(self) -> bool:
        """Symplectic condition and Hermitian images."""
        images = list(self.x_images) + list(self.z_images)
        if any(not p.is_hermitian or p.n != self.n for p in images):
            return False
        n = self.n
        for i in range(2 * n):
            for j in range(i + 1, 2 * n):
                anti = j == i + n
                if pauli_commutes(images[i], images[j]) == anti:
                    return False
        return all(not p.is_scalar for p in images)

    def dump(self) -> str:
        def signed(p: PauliOperator) -> str:
            s = "+" if p.phase == 0 else "-" if p.phase == 2 else str(p)
            return s + ("⊗".join(p.letters) if p.phase in (0, 2) else "")

        rows = [f"X_{q} ↦ {signed(p)}" for q, p in enumerate(self.x_images)]
        rows += [f"Z_{q} ↦ {signed(p)}" for q, p in enumerate(self.z_images)]
        return "\n".join(rows)


def _check_n(t: CliffordTableau, n: int) -> None:
    if t.n != n:
        raise ValueError(f"dimension mismatch: tableau on {t.n} qubits, operand on {n}")


def tableau_action(t: CliffordTableau, p: PauliOperator) -> PauliOperator:
    _check_n(t, p.n)
    out = PauliOperator(p.n, 0, 0, p.phase)
    for q in range(p.n):
        xb, zb = (p.x >> q) & 1, (p.z >> q) & 1
        if xb:
            out = pauli_mul(out, t.x_images[q])
        if zb:
            out = pauli_mul(out, t.z_images[q])
        if xb and zb:
            out = PauliOperator(out.n, out.x, out.z, out.phase + 1)
    return out


def tableau_apply_gate(t: CliffordTableau, g: Gate) -> CliffordTableau:
    if any(w >= t.n for w in g.wires):
        raise IndexError(f"gate {g} outside {t.n} wires")
    return t.then([g])


def tableau_compose(a: CliffordTableau, b: CliffordTableau) -> CliffordTableau:
    """``a ∘ b``: first ``b``, then ``a``."""
    _check_n(a, b.n)
    return CliffordTableau(
        a.n,
        tuple(tableau_action(a, p) for p in b.x_images),
        tuple(tableau_action(a, p) for p in b.z_images),
    )


def tableau_inverse(t: CliffordTableau) -> CliffordTableau:
    n = t.n
    xs, zs = [], []
    for q in range(n):
        for target, out in ((basis_pauli(n, "X", q), xs), (basis_pauli(n, "Z", q), zs)):
            # U anticommutes with X_j iff z_j(U); with Z_j iff x_j(U)
            x = z = 0
            for j in range(n):
                if not pauli_commutes(target, t.x_images[j]):
                    z |= 1 << j
                if not pauli_commutes(target, t.z_images[j]):
                    x |= 1 << j
            u = PauliOperator(n, x, z)
            image = tableau_action(t, u)
            if image.unsigned() != target:
                raise ValueError("not an automorphism: inverse image inconsistent")
            out.append(u if image.phase == 0 else u.negate())
    return CliffordTableau(n, tuple(xs), tuple(zs))


def circuit_tableau(c: Circuit) -> CliffordTableau:
    return CliffordTableau.identity(c.n).then(c.gates)

