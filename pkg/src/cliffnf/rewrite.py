"""Syntactic normalization: relations, generated rewrite rules and the driver.

A *dirty normal form* is the clean gate list of a normal form with extra
generator gates ("dirty" gates H, S, X, CZ) interleaved.  Which dirty gate may
sit where is decided by the label of each wire, read off from the next clean
gate on that wire:

====  =============================================================
 1    input of A, top input of B, bottom input of D
 2    bottom input of B, input of C
 3    top input of D on wires (0, 1), i.e. right after C
 4    top input of any other D, input of E
====  =============================================================

H may sit on label 1, S anywhere, X on label 2, and CZ on a pair whose top
wire has label 1, 2 or 3 and whose bottom wire has label 1.

Rules rewrite a dirty gate together with the clean gate(s) it feeds into
(the *window*) into new clean gates followed by dirty gates that are again
allowed where they land.  They are generated mechanically and checked
against the exact oracle.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .circuit import FAMILIES, Circuit, Gate, format_gate, parse_gate_token
from .exact import circuit_unitary, global_phase_ratio
from .normal_form import NormalForm, XLayer, ZLayer, identity_normal_form
from .pauli import PauliOperator
from .tableau import CliffordTableau, gate_action

__all__ = [
    "Relation",
    "RelationResult",
    "builtin_relations",
    "verify_relations",
    "RewriteRule",
    "RuleSet",
    "RewriteError",
    "generate_rules",
    "load_rules",
    "DirtyNormalForm",
    "wire_label",
    "termination_measure",
    "rewrite_normalize",
    "rewrite_step",
    "find_window",
    "parse_skeleton",
    "DEFAULT_SUFFIX_BOUND",
]

DEFAULT_SUFFIX_BOUND = 12
_RULES_FILE = "rules.txt"
_OMEGA8 = tuple([Gate("W")] * 8)


class RewriteError(RuntimeError):
    pass


def _word(text: str) -> tuple[Gate, ...]:
    return tuple(parse_gate_token(t) for t in text.split(";") if t.strip())


# -- relations ---------------------------------------------------------------


@dataclass(frozen=True)
class Relation:
    name: str
    n: int
    lhs: tuple[Gate, ...]
    rhs: tuple[Gate, ...]

    @property
    def circuits(self) -> tuple[Circuit, Circuit]:
        return Circuit(self.n, self.lhs), Circuit(self.n, self.rhs)


_RELATION_TEXT = [
    ("omega-order", 0, "W;" * 8, ""),
    ("h-square", 1, "H 0; H 0", ""),
    ("s-order", 1, "S 0;" * 4, ""),
    ("sh-cube", 1, "S 0; H 0;" * 3, "W"),
    ("cz-square", 2, "CZ 0 1; CZ 0 1", ""),
    ("s-top-cz", 2, "S 0; CZ 0 1", "CZ 0 1; S 0"),
    ("s-bottom-cz", 2, "S 1; CZ 0 1", "CZ 0 1; S 1"),
    ("x-top-cz", 2, "H 0; S 0; S 0; H 0; CZ 0 1", "CZ 0 1; S 1; S 1; H 0; S 0; S 0; H 0"),
    ("x-bottom-cz", 2, "H 1; S 1; S 1; H 1; CZ 0 1", "CZ 0 1; S 0; S 0; H 1; S 1; S 1; H 1"),
    ("cz-h-top-cz", 2, "CZ 0 1; H 0; CZ 0 1", "S 0; H 0; CZ 0 1; S 1; S 0; H 0; S 0;" + "W;" * 7),
    ("cz-h-bottom-cz", 2, "CZ 0 1; H 1; CZ 0 1", "S 1; H 1; CZ 0 1; S 0; S 1; H 1; S 1;" + "W;" * 7),
    ("cz-commute", 3, "CZ 1 2; CZ 0 1", "CZ 0 1; CZ 1 2"),
    (
        "three-wire-braid",
        3,
        "CZ 0 1; H 0; H 1; CZ 0 1; H 1; H 2; CZ 1 2; H 1; H 2; CZ 0 1; H 0; H 1; CZ 0 1",
        "CZ 1 2; H 2; H 1; CZ 1 2; H 1; H 0; CZ 0 1; H 1; H 0; CZ 1 2; H 2; H 1; CZ 1 2",
    ),
    (
        "three-wire-cycle-top",
        3,
        "CZ 0 1; H 0; H 1; CZ 0 1; H 0; H 1; CZ 1 2; CZ 0 1; H 0; H 1; CZ 0 1; H 0; H 1;"
        " CZ 1 2; CZ 0 1; H 0; H 1; CZ 0 1; H 1; H 0; CZ 1 2",
        "",
    ),
    (
        "three-wire-cycle-bottom",
        3,
        "CZ 1 2; H 2; H 1; CZ 1 2; H 2; H 1; CZ 0 1; CZ 1 2; H 2; H 1; CZ 1 2; H 2; H 1;"
        " CZ 0 1; CZ 1 2; H 2; H 1; CZ 1 2; H 1; H 2; CZ 0 1",
        "",
    ),
    ("wire-identity", 1, "", "A1 0; C1 0; E1 0"),
    ("lower-c-identity", 2, "C1 1", "B1 0 1; C1 0; D1 0 1"),
]


def builtin_relations() -> list[Relation]:
    """The fifteen defining relations plus the two identities for the wire."""
    return [Relation(name, n, _word(lhs), _word(rhs)) for name, n, lhs, rhs in _RELATION_TEXT]


@dataclass(frozen=True)
class RelationResult:
    relation: Relation
    ok: bool
    detail: str

    def __str__(self) -> str:
        return f"{self.relation.name:24s} n={self.relation.n}  {'pass' if self.ok else 'FAIL'}  {self.detail}"


def verify_relations(relations: Iterable[Relation] | None = None) -> list[RelationResult]:
    """Compare both sides of every relation as exact unitaries."""
    out = []
    for rel in builtin_relations() if relations is None else relations:
        lhs, rhs = rel.circuits
        u, v = circuit_unitary(lhs), circuit_unitary(rhs)
        if u == v:
            out.append(RelationResult(rel, True, "exact"))
        else:
            p = global_phase_ratio(u, v)
            detail = "not proportional" if p is None else f"off by ω^{p}"
            out.append(RelationResult(rel, False, detail))
    return out


# -- wire labels and dirty normal forms -------------------------------------------


def _next_on_wire(gates: Sequence[Gate], pos: int, wire: int, clean_only: bool) -> int | None:
    for idx in range(pos, len(gates)):
        g = gates[idx]
        if wire in g.wires and (g.is_clean or not clean_only):
            return idx
    return None


def _input_label(g: Gate, wire: int) -> int:
    if g.kind == "A":
        return 1
    if g.kind == "B":
        return 1 if wire == g.wires[0] else 2
    if g.kind == "C":
        return 2
    if g.kind == "D":
        if wire == g.wires[1]:
            return 1
        return 3 if g.wires[0] == 0 else 4
    return 4


def wire_label(gates: Sequence[Gate], pos: int, wire: int) -> int | None:
    """Label of ``wire`` just before list position ``pos`` (``None``: no clean gate follows)."""
    idx = _next_on_wire(gates, pos, wire, clean_only=True)
    return None if idx is None else _input_label(gates[idx], wire)


def _permitted(gates: Sequence[Gate], pos: int, g: Gate) -> bool:
    return _allowed_by_labels(g, [wire_label(gates, pos, w) for w in g.wires])


def _allowed_by_labels(g: Gate, labels: Sequence[int | None]) -> bool:
    if None in labels:
        return False
    if g.kind == "H":
        return labels[0] == 1
    if g.kind == "S":
        return True
    if g.kind == "X":
        return labels[0] == 2
    if g.kind == "CZ":
        return g.wires[1] == g.wires[0] + 1 and labels[0] in (1, 2, 3) and labels[1] == 1
    return False


@dataclass
class DirtyNormalForm:
    n: int
    gates: list[Gate]
    omega: int = 0

    @classmethod
    def from_circuit(cls, c: Circuit) -> DirtyNormalForm:
        """The circuit followed by the identity normal form, ω gates counted aside."""
        dirty: list[Gate] = []
        omega = 0
        for g in c.gates:
            if g.kind == "W":
                omega += 1
            elif g.kind == "X":
                w = g.wires
                dirty += [Gate("H", w), Gate("S", w), Gate("S", w), Gate("H", w)]
            elif g.kind in ("H", "S", "CZ"):
                if not g.is_adjacent:
                    raise ValueError(f"non-adjacent {g}; expand it first")
                dirty.append(g)
            else:
                raise ValueError(f"input circuits contain generators only, got {g}")
        return cls(c.n, dirty + identity_normal_form(c.n).clean_gates(), omega)

    def dirty_positions(self) -> list[int]:
        return [i for i, g in enumerate(self.gates) if not g.is_clean]

    def is_valid(self) -> bool:
        """Every dirty gate sits where the wire labels allow it (one backward sweep)."""
        labels: list[int | None] = [None] * self.n
        for g in reversed(self.gates):
            if g.is_clean:
                for w in g.wires:
                    labels[w] = _input_label(g, w)
            elif not _allowed_by_labels(g, [labels[w] for w in g.wires]):
                return False
        return True

    def circuit(self) -> Circuit:
        return Circuit(self.n, list(self.gates) + [Gate("W")] * (self.omega % 8))

    def to_normal_form(self) -> NormalForm:
        if self.dirty_positions():
            raise RewriteError("dirty gates remain")
        return parse_skeleton(self.n, self.gates, self.omega)


def parse_skeleton(n: int, gates: Sequence[Gate], p: int = 0) -> NormalForm:
    """Read a clean gate list laid out as a normal form back into parameters."""
    it = iter(gates)
    levels = []

    def take(kind: str, wires: tuple[int, ...]) -> int:
        g = next(it, None)
        if g is None or g.kind != kind or g.wires != wires:
            raise RewriteError(f"expected {kind} on {wires}, found {g}")
        return g.index

    for k in range(n, 0, -1):
        g = next(it, None)
        if g is None or g.kind != "A" or g.wires[0] >= k:
            raise RewriteError(f"level {k} must start with an A gate, found {g}")
        a = g.wires[0]
        js = tuple(take("B", (a - q, a - q + 1)) for q in range(1, a + 1))
        c = take("C", (0,))
        ls = tuple(take("D", (q - 1, q)) for q in range(1, k))
        h = take("E", (k - 1,))
        levels.append((ZLayer(k, a + 1, g.index, js, c), XLayer(k, ls, h)))
    if next(it, None) is not None:
        raise RewriteError("trailing gates after the last level")
    return NormalForm(n, tuple(levels), p)


def termination_measure(d: DirtyNormalForm | Sequence[Gate], n: int | None = None) -> tuple[int, ...]:
    """For each clean gate in list order, how many dirty gates lie in its past."""
    if isinstance(d, DirtyNormalForm):
        gates, n = d.gates, d.n
    else:
        gates = d
        n = n if n is not None else 1 + max((w for g in gates for w in g.wires), default=-1)
    past = [0] * n
    v = []
    for idx, g in enumerate(gates):
        acc = 0
        for w in g.wires:
            acc |= past[w]
        if g.is_clean:
            v.append(acc.bit_count())
        else:
            acc |= 1 << idx
        for w in g.wires:
            past[w] = acc
    return tuple(v)


# -- windows -------------------------------------------------------------------------


def find_window(gates: Sequence[Gate], i: int) -> list[int] | None:
    """List positions of the clean gates the dirty gate at ``i`` is rewritten with.

    ``None`` when some wire of the dirty gate next meets a dirty gate, or when
    the window would enclose another dirty gate on its wires.
    """
    d = gates[i]
    nxt = [_next_on_wire(gates, i + 1, w, clean_only=False) for w in d.wires]
    if any(j is None or not gates[j].is_clean for j in nxt):
        return None
    if len(nxt) == 1 or nxt[0] == nxt[1]:
        window = [nxt[0]]
    else:
        j1, j2 = nxt
        k1, k2 = gates[j1].kind, gates[j2].kind
        if k1 == "B" and k2 in ("A", "B"):
            window = [j2, j1]
        elif k1 == "D" and k2 == "D":
            window = [j1, j2]
        elif k1 in ("A", "B", "C") and k2 == "D":
            window = [j1]
        else:
            raise RewriteError(f"unexpected context for {d}: {gates[j1]} / {gates[j2]}")
    if len(window) == 2:
        wires = set(gates[window[0]].wires) | set(gates[window[1]].wires)
        for idx in range(window[0] + 1, window[1]):
            g = gates[idx]
            if wires & set(g.wires):
                return None
    return window


def _candidate_shapes(d: Gate, window: Sequence[Gate]) -> list[tuple[tuple[str, tuple[int, ...]], ...]]:
    """Clean shapes (family, wires) that may replace the window."""
    same = tuple((g.kind, g.wires) for g in window)
    shapes = [same]
    kinds = tuple(g.kind for g in window)
    if d.kind == "CZ" and kinds == ("A", "B"):
        shapes.append((("A", (d.wires[0],)),))
    if d.kind == "CZ" and kinds == ("A",):
        a = window[0].wires[0]
        shapes.append((("A", (a + 1,)), ("B", (a, a + 1))))
    return shapes


# -- rules ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple[Gate, ...]
    rhs: tuple[Gate, ...]
    phase: int = 0  # lhs = ω**phase · rhs

    @property
    def n(self) -> int:
        return 1 + max((w for g in self.lhs + self.rhs for w in g.wires), default=-1)

    def is_sound(self) -> bool:
        u = circuit_unitary(Circuit(self.n, self.lhs))
        v = circuit_unitary(Circuit(self.n, self.rhs + (Gate("W"),) * self.phase))
        return u == v

    def __str__(self) -> str:
        lhs = ", ".join(map(format_gate, self.lhs))
        rhs = ", ".join(map(format_gate, self.rhs))
        return f"{lhs} => {rhs} | {self.phase}".replace("=>  |", "=> |")


def _parse_rule(line: str) -> RewriteRule:
    body, _, phase = line.rpartition("|")
    lhs, _, rhs = body.partition("=>")

    def gates(s: str) -> tuple[Gate, ...]:
        return tuple(parse_gate_token(t) for t in s.split(",") if t.strip())

    return RewriteRule(gates(lhs), gates(rhs), int(phase))


@dataclass
class RuleSet:
    rules: dict[tuple[Gate, ...], RewriteRule] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules.values())

    def lookup(self, lhs: tuple[Gate, ...]) -> RewriteRule:
        try:
            return self.rules[lhs]
        except KeyError:
            raise RewriteError("no rule for " + ", ".join(map(format_gate, lhs))) from None

    def format(self) -> str:
        body = "".join(f"{r}\n" for r in self.rules.values())
        digest = hashlib.sha256(body.encode()).hexdigest()
        return f"# rewrite rules sha256={digest}\n" + body

    @classmethod
    def parse(cls, text: str) -> RuleSet:
        lines = text.splitlines()
        body = "".join(line + "\n" for line in lines[1:])
        digest = lines[0].rsplit("sha256=", 1)[-1].strip()
        if hashlib.sha256(body.encode()).hexdigest() != digest:
            raise ValueError("rule file hash mismatch")
        rules = [_parse_rule(line) for line in lines[1:] if line.strip()]
        return cls({r.lhs: r for r in rules})


class _SubgroupBall:
    """Shortest words (shortlex) over a fixed gate list, by breadth-first search.

    Operators on a few local wires are stored as tuples of packed Pauli codes
    so that applying a gate is a table lookup per image.
    """

    def __init__(self, nloc: int, gens: Sequence[Gate], bound: int):
        self.nloc, self.gens, self.bound = nloc, list(gens), bound
        size = 1 << (2 * nloc + 2)
        self.maps = []
        for g in self.gens:
            act = gate_action(g)
            self.maps.append(tuple(_encode(act.conjugate(_decode(c, nloc), g.wires), nloc) for c in range(size)))
        start = _state(CliffordTableau.identity(nloc))
        self.words: dict[tuple[int, ...], tuple[int, ...]] = {start: ()}
        frontier = [start]
        for _ in range(bound):
            nxt = []
            for s in frontier:
                base = self.words[s]
                for gi, m in enumerate(self.maps):
                    t = tuple(m[c] for c in s)
                    if t not in self.words:
                        self.words[t] = base + (gi,)
                        nxt.append(t)
            if not nxt:
                break
            frontier = nxt

    def find(self, t: CliffordTableau) -> tuple[Gate, ...] | None:
        w = self.words.get(_state(t))
        return None if w is None else tuple(self.gens[i] for i in w)


def _encode(p: PauliOperator, n: int) -> int:
    return p.x | (p.z << n) | (p.phase << (2 * n))


def _decode(code: int, n: int) -> PauliOperator:
    mask = (1 << n) - 1
    return PauliOperator(n, code & mask, (code >> n) & mask, code >> (2 * n))


def _state(t: CliffordTableau) -> tuple[int, ...]:
    return tuple(_encode(p, t.n) for p in t.x_images + t.z_images)


_DIRTY_ORDER = {"H": 0, "S": 1, "X": 2, "CZ": 3}


def _local_dirty_gates(nloc: int) -> list[Gate]:
    gates = [Gate(k, (w,)) for w in range(nloc) for k in ("H", "S", "X")]
    gates += [Gate("CZ", (w, w + 1)) for w in range(nloc - 1)]
    return sorted(gates, key=lambda g: (_DIRTY_ORDER[g.kind], g.wires))


def _skeletons(n: int) -> Iterable[list[Gate]]:
    """Clean gate lists of every normal-form shape on ``n`` wires (indices 1)."""
    for ms in itertools.product(*[range(1, k + 1) for k in range(n, 0, -1)]):
        levels = [
            (ZLayer(k, m, 1, (1,) * (m - 1), 1), XLayer(k, (1,) * (k - 1), 1))
            for k, m in zip(range(n, 0, -1), ms)
        ]
        yield NormalForm(n, tuple(levels)).clean_gates()


@dataclass
class _Pattern:
    lhs_shape: tuple[tuple[str, tuple[int, ...]], ...]  # dirty gate first, then window families
    dirty: Gate
    contexts: list[tuple[int, list[Gate], int, list[int], int]] = field(default_factory=list)


def _collect_patterns(max_n: int) -> dict:
    patterns: dict = {}
    for n in range(1, max_n + 1):
        for skel in _skeletons(n):
            for pos in range(len(skel) + 1):
                for d in _local_dirty_gates(n):
                    if not _permitted(skel, pos, d):
                        continue
                    gates = skel[:pos] + [d] + skel[pos:]
                    window = find_window(gates, pos)
                    if window is None:
                        raise RewriteError(f"no window for {d} at {pos}")
                    wg = [gates[j] for j in window]
                    off = min(w for g in [d] + wg for w in g.wires)
                    ld = d.shifted(-off)
                    shape = ((ld.kind, ld.wires),) + tuple((g.kind, g.shifted(-off).wires) for g in wg)
                    pat = patterns.setdefault(shape, _Pattern(shape, ld))
                    pat.contexts.append((n, gates, pos, window, off))
    return patterns


def _splice(gates: Sequence[Gate], i: int, window: Sequence[int], new: Sequence[Gate]) -> tuple[list[Gate], int]:
    """Remove position ``i`` and the window, insert ``new`` at the window start."""
    drop = {i, *window}
    rest = [g for j, g in enumerate(gates) if j not in drop]
    before = sum(1 for j in range(window[0]) if j not in drop)
    return rest[:before] + list(new) + rest[before:], before


def _allowed_outputs(pattern: _Pattern, shape, nloc: int) -> list[Gate]:
    allowed = None
    for n, gates, pos, window, off in pattern.contexts:
        new = [Gate(k, tuple(w + off for w in ws), 1) for k, ws in shape]
        spliced, at = _splice(gates, pos, window, new)
        here = {
            g
            for g in _local_dirty_gates(nloc)
            if max(g.wires) + off < n and _permitted(spliced, at + len(new), g.shifted(off))
        }
        allowed = here if allowed is None else allowed & here
    return sorted(allowed or (), key=lambda g: (_DIRTY_ORDER[g.kind], g.wires))


def generate_rules(
    suffix_bound: int = DEFAULT_SUFFIX_BOUND, max_context: int = 4, verify: bool = True
) -> RuleSet:
    """Derive one rule per (dirty gate, window) left-hand side.

    For each left-hand side every candidate window replacement is tried; the
    remaining operator must be a word over the dirty gates allowed right after
    the replacement.  The shortest such right-hand side wins, ties going to
    the earlier candidate.  Phases come from the exact oracle.
    """
    rules: dict[tuple[Gate, ...], RewriteRule] = {}
    balls: dict = {}
    for shape, pat in sorted(_collect_patterns(max_context).items(), key=lambda kv: _shape_key(kv[0])):
        d = pat.dirty
        window_shape = shape[1:]
        nloc = 1 + max(w for _, ws in shape for w in ws)
        cand_shapes = _candidate_shapes(d, [Gate(k, ws, 1) for k, ws in window_shape])
        outputs = {cs: tuple(_allowed_outputs(pat, cs, nloc)) for cs in cand_shapes}
        for idxs in itertools.product(*[range(1, FAMILIES[k][1] + 1) for k, _ in window_shape]):
            lhs = (d,) + tuple(Gate(k, ws, i) for (k, ws), i in zip(window_shape, idxs))
            t_lhs = CliffordTableau.identity(nloc).then(lhs)
            best = None
            for cs in cand_shapes:
                key = (nloc, outputs[cs])
                if key not in balls:
                    balls[key] = _SubgroupBall(nloc, outputs[cs], suffix_bound)
                ball = balls[key]
                for cidx in itertools.product(*[range(1, FAMILIES[k][1] + 1) for k, _ in cs]):
                    new = tuple(Gate(k, ws, i) for (k, ws), i in zip(cs, cidx))
                    t_new = CliffordTableau.identity(nloc).then(new)
                    suffix = ball.find(t_lhs.compose(t_new.inverse()))
                    if suffix is not None and (best is None or len(suffix) < len(best[1])):
                        best = (new, suffix)
            if best is None:
                raise RewriteError("no right-hand side for " + ", ".join(map(format_gate, lhs)))
            rhs = best[0] + best[1]
            p = global_phase_ratio(
                circuit_unitary(Circuit(nloc, lhs)), circuit_unitary(Circuit(nloc, rhs))
            )
            if p is None:
                raise RewriteError(f"rule for {lhs} is not sound")
            rule = RewriteRule(lhs, rhs, p)
            if verify and not rule.is_sound():
                raise RewriteError(f"rule {rule} failed the oracle")
            rules[lhs] = rule
    rules[_OMEGA8] = RewriteRule(_OMEGA8, (), 0)
    return RuleSet(rules)


def _shape_key(shape) -> tuple:
    return tuple((k, ws) for k, ws in shape)


def write_rules(path: Path | str, suffix_bound: int = DEFAULT_SUFFIX_BOUND) -> RuleSet:
    rs = generate_rules(suffix_bound)
    Path(path).write_text(rs.format())
    return rs


@lru_cache(maxsize=1)
def load_rules() -> RuleSet:
    try:
        text = resources.files("cliffnf.data").joinpath(_RULES_FILE).read_text()
    except FileNotFoundError:
        return generate_rules()
    return RuleSet.parse(text)


# -- driver ---------------------------------------------------------------------------


def _eligible(gates: Sequence[Gate]) -> list[tuple[int, list[int]]]:
    # backward sweep: a dirty gate is a candidate only if every wire next meets a clean gate
    nxt_clean = [False] * (1 + max((w for g in gates for w in g.wires), default=-1))
    candidates = []
    for i in range(len(gates) - 1, -1, -1):
        g = gates[i]
        if not g.is_clean and all(nxt_clean[w] for w in g.wires):
            candidates.append(i)
        for w in g.wires:
            nxt_clean[w] = g.is_clean
    out = []
    for i in reversed(candidates):
        window = find_window(gates, i)
        if window is not None:
            out.append((i, window))
    return out


def rewrite_step(dnf: DirtyNormalForm, i: int, window: Sequence[int], rules: RuleSet) -> None:
    gates = dnf.gates
    d = gates[i]
    wg = [gates[j] for j in window]
    off = min(w for g in [d] + wg for w in g.wires)
    lhs = tuple(g.shifted(-off) for g in [d] + wg)
    rule = rules.lookup(lhs)
    new = [g.shifted(off) for g in rule.rhs]
    dnf.gates, _ = _splice(gates, i, window, new)
    dnf.omega += rule.phase


def rewrite_normalize(
    c: Circuit,
    strategy: str = "rightmost",
    rng: random.Random | None = None,
    rules: RuleSet | None = None,
    check: bool = True,
    max_steps: int = 1_000_000,
) -> NormalForm:
    """Normal form of ``c`` reached by rewriting alone.

    ``strategy`` picks the dirty gate to rewrite: the rightmost one, or a
    random eligible one.  With ``check`` the termination measure is asserted
    to drop strictly at every step and the dirty normal form is re-validated.
    """
    if strategy not in ("rightmost", "random"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rules = rules if rules is not None else load_rules()
    rng = rng or random.Random(0)
    dnf = DirtyNormalForm.from_circuit(c)
    trace: list[str] = []
    measure = termination_measure(dnf) if check else None
    for _ in range(max_steps):
        while dnf.omega >= 8:
            dnf.omega -= 8  # ω⁸ = 1, the one step allowed to keep the measure
        if strategy == "rightmost":
            dirty = dnf.dirty_positions()
            if not dirty:
                break
            i = dirty[-1]
            window = find_window(dnf.gates, i)
            if window is None:
                raise RewriteError(f"rightmost dirty gate {dnf.gates[i]} has no window")
        else:
            options = _eligible(dnf.gates)
            if not options:
                if dnf.dirty_positions():
                    raise RewriteError("dirty gates remain but none is eligible")
                break
            i, window = rng.choice(options)
        before = str(dnf.gates[i])
        rewrite_step(dnf, i, window, rules)
        if check:
            new_measure = termination_measure(dnf)
            if not new_measure < measure:
                trace.append(f"{before}: {measure} -> {new_measure}")
                raise RewriteError("termination measure did not decrease\n" + "\n".join(trace))
            measure = new_measure
            if not dnf.is_valid():
                raise RewriteError(f"rewriting {before} left an invalid dirty normal form")
    else:
        raise RewriteError(f"no normal form after {max_steps} steps")
    return dnf.to_normal_form()
