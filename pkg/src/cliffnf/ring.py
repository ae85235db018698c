"""Scalars of the ring Z[ω, 1/√2] with ω = exp(iπ/4).

A value is ``(a + bω + cω² + dω³) / √2**k``.  Every entry of a Clifford
unitary lives here, so equality tests are exact.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

__all__ = ["RingScalar", "ring_normalize", "OMEGA", "ONE", "ZERO"]


def mul_omega_power(v: tuple[int, int, int, int], j: int) -> tuple[int, int, int, int]:
    """Multiply a coefficient 4-tuple by ω**j (ω⁴ = -1)."""
    a, b, c, d = v
    for _ in range(j % 8):
        a, b, c, d = -d, a, b, c
    return a, b, c, d


def _times_sqrt2(v):
    # √2 = ω - ω³
    a, b, c, d = v
    return (b - d, a + c, b + d, c - a)


def _divisible_by_sqrt2(v) -> bool:
    a, b, c, d = v
    return (a - c) % 2 == 0 and (b - d) % 2 == 0


def _div_sqrt2(v):
    t = _times_sqrt2(v)
    return tuple(u // 2 for u in t)


@dataclass(frozen=True, slots=True)
class RingScalar:
    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0
    k: int = 0

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def omega_power(cls, j: int) -> RingScalar:
        return cls(*mul_omega_power((1, 0, 0, 0), j))

    def normalized(self) -> RingScalar:
        return ring_normalize(self)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: RingScalar) -> RingScalar:
        u, v = self.coeffs, other.coeffs
        k = max(self.k, other.k)
        for _ in range(k - self.k):
            u = _times_sqrt2(u)
        for _ in range(k - other.k):
            v = _times_sqrt2(v)
        return ring_normalize(RingScalar(*(p + q for p, q in zip(u, v)), k))

    def __neg__(self) -> RingScalar:
        return RingScalar(-self.a, -self.b, -self.c, -self.d, self.k)

    def __sub__(self, other: RingScalar) -> RingScalar:
        return self + (-other)

    def __mul__(self, other: RingScalar) -> RingScalar:
        u, v = self.coeffs, other.coeffs
        out = [0, 0, 0, 0]
        for r in range(4):
            for s in range(4):
                prod = u[r] * v[s]
                t = r + s
                if t >= 4:
                    out[t - 4] -= prod
                else:
                    out[t] += prod
        return ring_normalize(RingScalar(*out, self.k + other.k))

    def conjugate(self) -> RingScalar:
        # conj(ω^j) = ω^{8-j} = -ω^{4-j}
        return RingScalar(self.a, -self.d, -self.c, -self.b, self.k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingScalar):
            return NotImplemented
        p, q = ring_normalize(self), ring_normalize(other)
        return p.coeffs == q.coeffs and p.k == q.k

    def __hash__(self) -> int:
        p = ring_normalize(self)
        return hash((p.coeffs, p.k))

    def __complex__(self) -> complex:
        w = cmath.exp(1j * cmath.pi / 4)
        val = self.a + self.b * w + self.c * w**2 + self.d * w**3
        return val / (2 ** (self.k / 2))

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c},{self.d})/√2^{self.k}"


def ring_normalize(s: RingScalar) -> RingScalar:
    """Canonical representative: the smallest denominator exponent."""
    v, k = s.coeffs, s.k
    if not any(v):
        return RingScalar(0, 0, 0, 0, 0)
    while k > 0 and _divisible_by_sqrt2(v):
        v = _div_sqrt2(v)
        k -= 1
    return RingScalar(*v, k)


ZERO = RingScalar()
ONE = RingScalar(1)
OMEGA = RingScalar(0, 1)
