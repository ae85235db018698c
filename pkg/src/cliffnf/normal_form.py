"""Unique normal forms of Clifford operators: synthesis, layout and counting.

A normal form on ``n`` wires is a nest of levels ``k = n, n-1, ..., 1``.  Level
``k`` acts on wires ``0..k-1`` and consists of a Z-layer followed by an
X-layer; together they steer ``φ⁻¹(Z_{k-1})`` and ``φ⁻¹(X_{k-1})`` onto the
bottom wire of the level, which is then left alone.  A global phase ``ω**p``
closes the circuit.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, replace
from typing import Iterator

from .circuit import Circuit, Gate
from .exact import DEFAULT_ORACLE_LIMIT, circuit_unitary, global_phase_ratio
from .gates import A_INDEX, B_INDEX, D_INDEX, E_INDEX, realization
from .pauli import PauliOperator, basis_pauli, pauli_commutes
from .tableau import CliffordTableau, circuit_tableau, gate_action

__all__ = [
    "ZLayer",
    "XLayer",
    "NormalForm",
    "synthesize_z_layer",
    "synthesize_x_layer",
    "synthesize",
    "normalize_circuit",
    "nf_to_circuit",
    "clifford_order",
    "enumerate_normal_forms",
    "format_normal_form",
    "parse_normal_form",
    "identity_normal_form",
]


@dataclass(frozen=True)
class ZLayer:
    """``A_i`` on wire ``m-1``, a B staircase up to wire 0, then ``C_c``."""

    k: int
    m: int
    i: int
    j: tuple[int, ...]
    c: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "j", tuple(self.j))
        if not 1 <= self.m <= self.k:
            raise ValueError(f"m={self.m} outside 1..{self.k}")
        if len(self.j) != self.m - 1:
            raise ValueError(f"Z-layer needs {self.m - 1} B indices, got {len(self.j)}")
        if not 1 <= self.i <= 3 or not 1 <= self.c <= 2 or any(not 1 <= v <= 4 for v in self.j):
            raise ValueError("Z-layer index out of range")

    def gates(self) -> list[Gate]:
        a = self.m - 1
        out = [Gate("A", (a,), self.i)]
        for p, jp in enumerate(self.j, start=1):
            out.append(Gate("B", (a - p, a - p + 1), jp))
        out.append(Gate("C", (0,), self.c))
        return out

    def __str__(self) -> str:
        js = ",".join(map(str, self.j))
        return f"L {self.k} : m={self.m} i={self.i} j=[{js}] c={self.c}"


@dataclass(frozen=True)
class XLayer:
    """A D staircase from wire 0 down to wire ``k-1``, then ``E_h``."""

    k: int
    l: tuple[int, ...]  # noqa: E741
    h: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "l", tuple(self.l))
        if len(self.l) != self.k - 1:
            raise ValueError(f"X-layer needs {self.k - 1} D indices, got {len(self.l)}")
        if not 1 <= self.h <= 4 or any(not 1 <= v <= 4 for v in self.l):
            raise ValueError("X-layer index out of range")

    def gates(self) -> list[Gate]:
        out = [Gate("D", (q - 1, q), lq) for q, lq in enumerate(self.l, start=1)]
        out.append(Gate("E", (self.k - 1,), self.h))
        return out

    def __str__(self) -> str:
        ls = ",".join(map(str, self.l))
        return f"X {self.k} : l=[{ls}] h={self.h}"


@dataclass(frozen=True)
class NormalForm:
    n: int
    levels: tuple[tuple[ZLayer, XLayer], ...]
    p: int = 0
    phase_exact: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(tuple(lv) for lv in self.levels))
        object.__setattr__(self, "p", self.p % 8)
        widths = [(z.k, x.k) for z, x in self.levels]
        if widths != [(k, k) for k in range(self.n, 0, -1)]:
            raise ValueError(f"levels must have widths {self.n}..1, got {widths}")

    def clean_gates(self) -> list[Gate]:
        out: list[Gate] = []
        for z, x in self.levels:
            out += z.gates() + x.gates()
        return out

    def without_phase(self) -> NormalForm:
        return replace(self, p=0)

    def __str__(self) -> str:
        return format_normal_form(self)


def identity_normal_form(n: int) -> NormalForm:
    """All levels full width with every index 1; its circuit is the identity."""
    levels = [
        (ZLayer(k, k, 1, (1,) * (k - 1), 1), XLayer(k, (1,) * (k - 1), 1))
        for k in range(n, 0, -1)
    ]
    return NormalForm(n, tuple(levels), 0)


# -- synthesis -----------------------------------------------------------


def _apply(p: PauliOperator, g: Gate) -> PauliOperator:
    return gate_action(g).conjugate(p, g.wires)


def _check_involution(p: PauliOperator, what: str) -> None:
    if not p.is_hermitian:
        raise ValueError(f"{what} must square to the identity, got {p}")


def synthesize_z_layer(p: PauliOperator) -> ZLayer:
    """The Z-layer ``L`` with ``L•P = Z⊗I⊗…⊗I``."""
    _check_involution(p, "P")
    if p.x == 0 and p.z == 0:
        raise ValueError("P must not be ±I")
    k = p.n
    m = max(p.support) + 1
    a = m - 1
    i = A_INDEX.index(p.letter(a)) + 1
    cur = _apply(p, Gate("A", (a,), i))
    js = []
    for q in range(1, m):
        jq = B_INDEX.index(cur.letter(a - q)) + 1
        js.append(jq)
        cur = _apply(cur, Gate("B", (a - q, a - q + 1), jq))
    c = 1 if cur.phase == 0 else 2
    cur = _apply(cur, Gate("C", (0,), c))
    if cur != basis_pauli(k, "Z", 0):
        raise AssertionError(f"Z-layer synthesis left {cur}")
    return ZLayer(k, m, i, tuple(js), c)


def synthesize_x_layer(q: PauliOperator) -> XLayer:
    """The X-layer ``M`` with ``M•Q = I⊗…⊗I⊗X``."""
    _check_involution(q, "Q")
    k = q.n
    if k == 0 or pauli_commutes(q, basis_pauli(k, "Z", 0)):
        raise ValueError(f"Q must anticommute with Z on wire 0, got {q}")
    cur = q
    ls = []
    for w in range(1, k):
        lw = D_INDEX.index(cur.letter(w)) + 1
        ls.append(lw)
        cur = _apply(cur, Gate("D", (w - 1, w), lw))
    last = cur.letter(k - 1)
    sign = "-" if cur.phase == 2 else ""
    h = E_INDEX.index(sign + last) + 1
    cur = _apply(cur, Gate("E", (k - 1,), h))
    if cur != basis_pauli(k, "X", k - 1):
        raise AssertionError(f"X-layer synthesis left {cur}")
    return XLayer(k, tuple(ls), h)


def _restrict_top(t: CliffordTableau) -> CliffordTableau:
    """Drop the bottom wire of a tableau that fixes ``X`` and ``Z`` there."""
    k = t.n
    wires = list(range(k - 1))
    xs, zs = [], []
    for img in t.x_images[: k - 1] + t.z_images[: k - 1]:
        if img.letter(k - 1) != "I":
            raise AssertionError("residual operator does not factor off the bottom wire")
    xs = [img.restrict(wires) for img in t.x_images[: k - 1]]
    zs = [img.restrict(wires) for img in t.z_images[: k - 1]]
    return CliffordTableau(k - 1, tuple(xs), tuple(zs))


def synthesize(
    t: CliffordTableau,
    phase_source: Circuit | None = None,
    oracle_limit: int = DEFAULT_ORACLE_LIMIT,
) -> NormalForm:
    """Normal form of the operator with tableau ``t``.

    With ``phase_source`` the exponent ``p`` is fixed by comparing exact
    unitaries; otherwise ``p = 0`` and the result is marked phase-free.
    """
    if not t.is_valid():
        raise ValueError("tableau is not a Clifford automorphism")
    n = t.n
    levels = []
    cur = t
    for k in range(n, 0, -1):
        inv = cur.inverse()
        p_op = inv.action(basis_pauli(k, "Z", k - 1))
        q_op = inv.action(basis_pauli(k, "X", k - 1))
        zl = synthesize_z_layer(p_op)
        lt = CliffordTableau.identity(k).then(zl.gates())
        xl = synthesize_x_layer(lt.action(q_op))
        levels.append((zl, xl))
        ml = lt.then(xl.gates())
        cur = _restrict_top(cur.compose(ml.inverse()))
    nf = NormalForm(n, tuple(levels), 0, phase_exact=phase_source is not None)
    if phase_source is None:
        return nf
    if phase_source.n != n:
        raise ValueError("phase source acts on a different number of wires")
    u = circuit_unitary(phase_source, oracle_limit)
    v = circuit_unitary(nf_to_circuit(nf), oracle_limit)
    p = global_phase_ratio(u, v)
    if p is None:
        raise AssertionError("normal form is not proportional to its source")
    return replace(nf, p=p)


def normalize_circuit(
    c: Circuit, exact_phase: bool = True, oracle_limit: int = DEFAULT_ORACLE_LIMIT
) -> NormalForm:
    return synthesize(circuit_tableau(c), c if exact_phase else None, oracle_limit)


def nf_to_circuit(nf: NormalForm, expand: bool = False) -> Circuit:
    """Circuit ``L⁽ⁿ⁾ M⁽ⁿ⁾ … L⁽¹⁾ M⁽¹⁾`` followed by ``p`` ω gates."""
    gates = nf.clean_gates()
    if expand:
        gates = [h.shifted(g.wires[0]) for g in gates for h in realization(g.kind, g.index)]
    gates += [Gate("W")] * nf.p
    return Circuit(nf.n, gates)


# -- counting and enumeration ---------------------------------------------


def clifford_order(n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    total = 8
    for i in range(1, n + 1):
        total *= 2 * (4**i - 1) * 4**i
    return total


def _z_layers(k: int) -> Iterator[ZLayer]:
    for m in range(1, k + 1):
        for i in range(1, 4):
            for js in itertools.product(range(1, 5), repeat=m - 1):
                for c in (1, 2):
                    yield ZLayer(k, m, i, js, c)


def _x_layers(k: int) -> Iterator[XLayer]:
    for ls in itertools.product(range(1, 5), repeat=k - 1):
        for h in range(1, 5):
            yield XLayer(k, ls, h)


def enumerate_normal_forms(n: int, phases: bool = True) -> Iterator[NormalForm]:
    """Every normal form on ``n`` wires once, in lexicographic parameter order."""
    per_level = [
        [(z, x) for z in _z_layers(k) for x in _x_layers(k)] for k in range(n, 0, -1)
    ]
    for combo in itertools.product(*per_level):
        if not phases:
            yield NormalForm(n, combo, 0, phase_exact=False)
            continue
        for p in range(8):
            yield NormalForm(n, combo, p)


# -- text format -----------------------------------------------------------

_L_RE = re.compile(r"L (\d+) : m=(\d+) i=(\d+) j=\[([\d,]*)\] c=(\d+)$")
_X_RE = re.compile(r"X (\d+) : l=\[([\d,]*)\] h=(\d+)$")
_P_RE = re.compile(r"p=(\d+|\?)$")


def format_normal_form(nf: NormalForm) -> str:
    lines = [f"qubits {nf.n}"]
    for z, x in nf.levels:
        lines += [str(z), str(x)]
    lines.append(f"p={nf.p if nf.phase_exact else '?'}")
    return "\n".join(lines) + "\n"


def _ints(s: str) -> tuple[int, ...]:
    return tuple(int(v) for v in s.split(",") if v)


def parse_normal_form(text: str) -> NormalForm:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("qubits "):
        raise ValueError("normal form text must start with 'qubits <n>'")
    n = int(lines[0].split()[1])
    body, levels = lines[1:], []
    if len(body) != 2 * n + 1:
        raise ValueError(f"expected {2 * n + 1} lines after the header, got {len(body)}")
    for zl, xl in zip(body[0:-1:2], body[1:-1:2]):
        mz, mx = _L_RE.match(zl), _X_RE.match(xl)
        if not mz or not mx:
            raise ValueError(f"malformed level lines {zl!r} / {xl!r}")
        k, m, i, js, c = mz.groups()
        z = ZLayer(int(k), int(m), int(i), _ints(js), int(c))
        kx, ls, h = mx.groups()
        levels.append((z, XLayer(int(kx), _ints(ls), int(h))))
    mp = _P_RE.match(body[-1])
    if not mp:
        raise ValueError(f"malformed phase line {body[-1]!r}")
    exact = mp.group(1) != "?"
    return NormalForm(n, tuple(levels), int(mp.group(1)) if exact else 0, phase_exact=exact)
