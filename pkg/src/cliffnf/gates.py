"""The clean gate families A, B, C, D and E used to build normal forms.

Each family member is pinned down by how it must conjugate a few Pauli
operators; a concrete word over H, S and CZ is then found by breadth-first
search (shortest word, ties broken lexicographically).
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .circuit import FAMILIES, Gate, format_gate, parse_gate_token, swap_word
from .pauli import PauliOperator
from .tableau import CliffordTableau, LocalAction

__all__ = [
    "Constraint",
    "family_constraints",
    "satisfies",
    "derive_realizations",
    "realization",
    "realization_table",
    "format_realizations",
    "parse_realizations",
    "library_action",
    "write_realizations",
    "library_tableau",
    "B_INDEX",
    "D_INDEX",
    "E_INDEX",
    "A_INDEX",
]

# index conventions (1-based positions)
A_INDEX = "ZXY"  # A_i sends this letter to ±Z
B_INDEX = "IXYZ"  # B_j sends (letter ⊗ Z) to Z ⊗ I
D_INDEX = "IXYZ"  # D_l sends (X ⊗ letter) to I ⊗ X
E_INDEX = ("X", "-X", "Y", "-Y")  # E_h sends this to X

DEFAULT_DEPTH = 12
_DATA_FILE = "realizations.txt"


@dataclass(frozen=True)
class Constraint:
    source: PauliOperator
    target: PauliOperator
    up_to_sign: bool = False

    def holds(self, t: CliffordTableau) -> bool:
        img = t.action(self.source)
        if self.up_to_sign:
            return img.unsigned() == self.target.unsigned() and img.is_hermitian
        return img == self.target

    def __str__(self) -> str:
        arrow = "→ ±" if self.up_to_sign else "→ "
        return f"{self.source}{arrow}{self.target.unsigned() if self.up_to_sign else self.target}"


def _p(letters: str, negative: bool = False) -> PauliOperator:
    return PauliOperator.from_letters(letters, 2 if negative else 0)


def family_constraints(family: str, index: int) -> list[Constraint]:
    if family not in FAMILIES or not 1 <= index <= FAMILIES[family][1]:
        raise ValueError(f"invalid family member {family}{index}")
    if family == "A":
        letter = A_INDEX[index - 1]
        return [Constraint(_p(letter), _p("Z"), up_to_sign=index != 1)]
    if family == "B":
        return [Constraint(_p(B_INDEX[index - 1] + "Z"), _p("ZI"))]
    if family == "C":
        return [Constraint(_p("Z"), _p("Z", negative=index == 2))]
    if family == "D":
        return [
            Constraint(_p("X" + D_INDEX[index - 1]), _p("IX")),
            Constraint(_p("ZI"), _p("IZ")),
        ]
    src = E_INDEX[index - 1]
    return [Constraint(_p(src[-1], src.startswith("-")), _p("X")), Constraint(_p("Z"), _p("Z"))]


def satisfies(t: CliffordTableau, family: str, index: int) -> bool:
    return all(c.holds(t) for c in family_constraints(family, index))


def _generators(arity: int) -> list[Gate]:
    if arity == 1:
        return [Gate("H", (0,)), Gate("S", (0,))]
    return [Gate("H", (0,)), Gate("H", (1,)), Gate("S", (0,)), Gate("S", (1,)), Gate("CZ", (0, 1))]


def _shortlex_search(arity: int, wanted: dict[tuple[str, int], list[Constraint]], max_depth: int):
    """Breadth-first search over group elements; BFS order is shortlex order."""
    gens = _generators(arity)
    start = CliffordTableau.identity(arity)
    seen = {start.key()}
    queue = deque([(start, ())])
    found: dict[tuple[str, int], tuple[Gate, ...]] = {}

    def check(t, word):
        for member, cons in wanted.items():
            if member not in found and all(c.holds(t) for c in cons):
                found[member] = word

    check(start, ())
    while queue and len(found) < len(wanted):
        t, word = queue.popleft()
        if len(word) >= max_depth:
            continue
        for g in gens:
            nt = t.then([g])
            key = nt.key()
            if key in seen:
                continue
            seen.add(key)
            nw = word + (g,)
            check(nt, nw)
            queue.append((nt, nw))
    missing = sorted(set(wanted) - set(found))
    if missing:
        raise RuntimeError(f"no realization within depth {max_depth} for {missing}")
    return found


def derive_realizations(max_depth: int = DEFAULT_DEPTH) -> dict[tuple[str, int], tuple[Gate, ...]]:
    """Deterministic table (family, index) → word over H, S, CZ on local wires."""
    table: dict[tuple[str, int], tuple[Gate, ...]] = {}
    pinned = {("B", 1): tuple(swap_word(0, 1)), ("D", 1): tuple(swap_word(0, 1))}
    for arity in (1, 2):
        wanted = {
            (fam, i): family_constraints(fam, i)
            for fam, (ar, count) in FAMILIES.items()
            if ar == arity
            for i in range(1, count + 1)
            if (fam, i) not in pinned
        }
        table.update(_shortlex_search(arity, wanted, max_depth))
    for member, word in pinned.items():
        t = CliffordTableau.identity(2).then(word)
        if not satisfies(t, *member):
            raise RuntimeError(f"pinned word for {member} violates its constraints")
        table[member] = word
    return {m: table[m] for m in sorted(table)}


def format_realizations(table) -> str:
    body = "".join(
        f"{fam} {i} : {', '.join(format_gate(g) for g in word)}\n".replace(" : \n", " :\n")
        for (fam, i), word in sorted(table.items())
    )
    digest = hashlib.sha256(body.encode()).hexdigest()
    return f"# clean gate realizations sha256={digest}\n" + body


def parse_realizations(text: str) -> dict[tuple[str, int], tuple[Gate, ...]]:
    lines = text.splitlines()
    header, body = lines[0], "".join(line + "\n" for line in lines[1:])
    digest = header.rsplit("sha256=", 1)[-1].strip()
    if hashlib.sha256(body.encode()).hexdigest() != digest:
        raise ValueError("realization table hash mismatch")
    table = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        head, _, rest = line.partition(":")
        fam, idx = head.split()
        word = tuple(parse_gate_token(tok) for tok in rest.split(",") if tok.strip())
        table[(fam, int(idx))] = word
    return table


@lru_cache(maxsize=1)
def realization_table() -> dict[tuple[str, int], tuple[Gate, ...]]:
    try:
        text = resources.files("cliffnf.data").joinpath(_DATA_FILE).read_text()
    except FileNotFoundError:
        return derive_realizations()
    return parse_realizations(text)


def write_realizations(path: Path | str, max_depth: int = DEFAULT_DEPTH) -> str:
    text = format_realizations(derive_realizations(max_depth))
    Path(path).write_text(text)
    return text


def realization(family: str, index: int) -> tuple[Gate, ...]:
    return realization_table()[(family, index)]


@lru_cache(maxsize=None)
def library_tableau(family: str, index: int) -> CliffordTableau:
    arity = FAMILIES[family][0]
    return CliffordTableau.identity(arity).then(realization(family, index))


@lru_cache(maxsize=None)
def library_action(family: str, index: int) -> LocalAction:
    t = library_tableau(family, index)
    return LocalAction(t.x_images, t.z_images)
