"""Exact dense unitaries over Z[ω, 1/√2]: the ground-truth oracle.

An :class:`ExactMatrix` stores four integer arrays (the coefficients of
1, ω, ω², ω³) and one denominator exponent ``k`` shared by all entries, so
that ``M = (A0 + A1 ω + A2 ω² + A3 ω³) / √2**k``.  Gates are applied as row
operations, which keeps circuits on up to 8 qubits cheap.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .circuit import Circuit, Gate
from .pauli import PauliOperator
from .ring import RingScalar, ring_normalize

__all__ = [
    "ExactMatrix",
    "OracleLimitError",
    "DEFAULT_ORACLE_LIMIT",
    "gate_matrix",
    "circuit_unitary",
    "global_phase_ratio",
    "conjugate_pauli_by_matrix",
    "pauli_matrix",
]

DEFAULT_ORACLE_LIMIT = 8


class OracleLimitError(ValueError):
    pass


def _rot(c: np.ndarray, j: int) -> np.ndarray:
    """Multiply every entry by ω**j (axis 0 holds the four coefficients)."""
    j %= 8
    if j >= 4:
        c = -c
        j -= 4
    if j == 0:
        return c
    out = np.roll(c, j, axis=0)
    out[:j] = -out[:j]
    return out


def _times_sqrt2(c: np.ndarray) -> np.ndarray:
    a, b, cc, d = c
    return np.stack([b - d, a + cc, b + d, cc - a])


class ExactMatrix:
    __slots__ = ("coeffs", "k")

    def __init__(self, coeffs: np.ndarray, k: int = 0, normalize: bool = True):
        coeffs = np.asarray(coeffs)
        if coeffs.ndim != 3 or coeffs.shape[0] != 4 or coeffs.shape[1] != coeffs.shape[2]:
            raise ValueError("coefficient array must have shape (4, d, d)")
        self.coeffs = coeffs
        self.k = k
        if normalize:
            self._normalize()

    # -- construction -------------------------------------------------
    @classmethod
    def identity(cls, dim: int) -> ExactMatrix:
        c = np.zeros((4, dim, dim), dtype=np.int64)
        c[0] = np.eye(dim, dtype=np.int64)
        return cls(c)

    @classmethod
    def scalar(cls, value: RingScalar, dim: int = 1) -> ExactMatrix:
        c = np.zeros((4, dim, dim), dtype=np.int64)
        for r, v in enumerate(value.coeffs):
            c[r] = v * np.eye(dim, dtype=np.int64)
        return cls(c, value.k)

    @classmethod
    def from_entries(cls, rows) -> ExactMatrix:
        rows = [list(r) for r in rows]
        dim = len(rows)
        k = max((e.k for r in rows for e in r), default=0)
        c = np.zeros((4, dim, dim), dtype=object)
        for i, r in enumerate(rows):
            for j, e in enumerate(r):
                v = e.coeffs
                for _ in range(k - e.k):
                    v = tuple(_times_sqrt2(np.array(v, dtype=object)))
                c[:, i, j] = v
        return cls(c, k)

    # -- basic properties ---------------------------------------------
    @property
    def dim(self) -> int:
        return self.coeffs.shape[1]

    def _normalize(self) -> None:
        c, k = self.coeffs, self.k
        if not c.any():
            self.k = 0
            return
        while k > 0:
            a, b, cc, d = c
            if ((a - cc) % 2).any() or ((b - d) % 2).any():
                break
            c = _times_sqrt2(c) // 2
            k -= 1
        self.coeffs, self.k = c, k

    def entry(self, i: int, j: int) -> RingScalar:
        return ring_normalize(RingScalar(*(int(v) for v in self.coeffs[:, i, j]), self.k))

    def copy(self) -> ExactMatrix:
        return ExactMatrix(self.coeffs.copy(), self.k, normalize=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.k == other.k
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash((self.k, self.coeffs.astype(np.int64).tobytes()))

    def times_omega(self, j: int) -> ExactMatrix:
        return ExactMatrix(_rot(self.coeffs, j), self.k, normalize=False)

    def dagger(self) -> ExactMatrix:
        a, b, c, d = self.coeffs
        conj = np.stack([a, -d, -c, -b])
        return ExactMatrix(conj.transpose(0, 2, 1).copy(), self.k)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        A, B = self.coeffs, other.coeffs
        bound = int(np.abs(A).max(initial=0)) * int(np.abs(B).max(initial=0)) * self.dim * 4
        if bound >= 1 << 62 or A.dtype == object or B.dtype == object:
            A, B = A.astype(object), B.astype(object)
        out = np.zeros((4, self.dim, self.dim), dtype=A.dtype)
        for r in range(4):
            for s in range(4):
                prod = A[r] @ B[s]
                if r + s < 4:
                    out[r + s] += prod
                else:
                    out[r + s - 4] -= prod
        return ExactMatrix(out, self.k + other.k)

    def is_unitary(self) -> bool:
        return self @ self.dagger() == ExactMatrix.identity(self.dim)

    def to_complex(self) -> np.ndarray:
        w = np.exp(1j * np.pi / 4)
        c = self.coeffs.astype(float)
        val = c[0] + c[1] * w + c[2] * w**2 + c[3] * w**3
        return val / (2 ** (self.k / 2))

    def format_rows(self, decimal: bool = False) -> str:
        lines = []
        if decimal:
            z = self.to_complex()
            for row in z:
                lines.append("  ".join(f"{v.real:+.6f}{v.imag:+.6f}i" for v in row))
        else:
            for i in range(self.dim):
                lines.append(" ".join(str(self.entry(i, j)) for j in range(self.dim)))
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"ExactMatrix(dim={self.dim}, k={self.k})"

    # -- in-place gate application (rows) ------------------------------
    def _apply_1q(self, kind: str, w: int, n: int) -> None:
        c = self.coeffs.reshape(4, 1 << w, 2, 1 << (n - w - 1), self.dim)
        r0, r1 = c[:, :, 0], c[:, :, 1]
        if kind == "H":
            s, d = r0 + r1, r0 - r1
            c[:, :, 0], c[:, :, 1] = s, d
            self.k += 1
            self._normalize()
            return
        if kind == "S":
            c[:, :, 1] = _rot(r1, 2)
        elif kind == "X":
            c[:, :, 0], c[:, :, 1] = r1.copy(), r0.copy()
        else:
            raise ValueError(kind)

    def _apply_cz(self, a: int, b: int, n: int) -> None:
        rows = _cz_rows(n, a, b)
        self.coeffs[:, rows, :] *= -1


@lru_cache(maxsize=None)
def _cz_rows(n: int, a: int, b: int) -> np.ndarray:
    idx = np.arange(1 << n)
    ba, bb = n - 1 - a, n - 1 - b
    return idx[((idx >> ba) & 1 & (idx >> bb)) == 1]


def _apply_word(u: ExactMatrix, gates, n: int, allow_nonadjacent: bool) -> ExactMatrix:
    from .gates import realization

    for g in gates:
        if g.kind == "W":
            u.coeffs = _rot(u.coeffs, 1)
        elif g.kind == "CZ":
            if not g.is_adjacent and not allow_nonadjacent:
                raise ValueError(f"non-adjacent {g}; expand it first")
            u._apply_cz(g.wires[0], g.wires[1], n)
        elif g.kind in ("H", "S", "X"):
            u._apply_1q(g.kind, g.wires[0], n)
        else:
            base = g.wires[0]
            word = [h.shifted(base) for h in realization(g.kind, g.index)]
            _apply_word(u, word, n, allow_nonadjacent)
    return u


def circuit_unitary(
    c: Circuit,
    limit: int = DEFAULT_ORACLE_LIMIT,
    allow_nonadjacent: bool = False,
) -> ExactMatrix:
    """Exact unitary of ``c``; the first gate of the circuit acts first."""
    if c.n > limit:
        raise OracleLimitError(f"{c.n} qubits exceeds the oracle limit of {limit}")
    u = ExactMatrix.identity(1 << c.n)
    u.coeffs = u.coeffs.copy()
    _apply_word(u, c.gates, c.n, allow_nonadjacent)
    u._normalize()
    return u


def gate_matrix(g: Gate) -> ExactMatrix:
    """Matrix of a single gate on its own wires (``len(g.wires)`` qubits)."""
    local = Gate(g.kind, tuple(range(len(g.wires))), g.index) if g.wires else g
    if len(g.wires) == 2 and g.wires[0] > g.wires[1]:
        local = Gate(g.kind, (1, 0), g.index)
    return circuit_unitary(Circuit(len(g.wires), [local]))


def global_phase_ratio(u: ExactMatrix, v: ExactMatrix) -> int | None:
    """``p`` with ``u == ω**p · v``, or ``None`` when no such power exists."""
    if u.dim != v.dim:
        raise ValueError("dimension mismatch")
    for p in range(8):
        if u == v.times_omega(p):
            return p
    return None


def pauli_matrix(p: PauliOperator) -> ExactMatrix:
    dim = 1 << p.n
    c = np.zeros((4, dim, dim), dtype=np.int64)
    for col in range(dim):
        row = col
        phase = 2 * p.phase  # in units of ω
        for q in range(p.n):
            bit = p.n - 1 - q
            xb, zb = (p.x >> q) & 1, (p.z >> q) & 1
            v = (col >> bit) & 1
            if zb and v:
                phase += 4
            if xb and zb:
                # Y = iXZ
                phase += 2
            if xb:
                row ^= 1 << bit
        phase %= 8
        coeff = [0, 0, 0, 0]
        coeff[phase % 4] = -1 if phase >= 4 else 1
        c[:, row, col] = coeff
    return ExactMatrix(c)


def conjugate_pauli_by_matrix(u: ExactMatrix, p: PauliOperator) -> PauliOperator:
    """Decode ``u P u⁻¹`` as a Pauli operator (``u`` must be Clifford)."""
    if u.dim != 1 << p.n:
        raise ValueError("dimension mismatch")
    m = u @ pauli_matrix(p) @ u.dagger()
    n = p.n
    col0 = np.flatnonzero(m.coeffs[:, :, 0].any(axis=0))
    if len(col0) != 1:
        raise ValueError("conjugate is not a Pauli operator")
    row = int(col0[0])
    x = 0
    for q in range(n):
        if (row >> (n - 1 - q)) & 1:
            x |= 1 << q
    # column e_q picks up (-1)^{z_q} relative to column 0
    ref = m.coeffs[:, row, 0]
    z = 0
    for q in range(n):
        col = 1 << (n - 1 - q)
        entry = m.coeffs[:, row ^ col, col]
        if np.array_equal(entry, -ref):
            z |= 1 << q
    cand = PauliOperator(n, x, z)
    ratio = global_phase_ratio(m, pauli_matrix(cand))
    if ratio is None or ratio % 2:
        raise ValueError("conjugate is not a Pauli operator")
    return PauliOperator(n, x, z, ratio // 2)
