"""Acceptance gate: one test per criterion, each printing a pass/fail line."""

import itertools
import random
import time

import numpy as np
import pytest

from cliffnf.circuit import Circuit, Gate, expand_nonadjacent, random_circuit, swap_word
from cliffnf.cli import main
from cliffnf.exact import ExactMatrix, circuit_unitary, conjugate_pauli_by_matrix
from cliffnf.normal_form import (
    XLayer,
    clifford_order,
    enumerate_normal_forms,
    format_normal_form,
    nf_to_circuit,
    normalize_circuit,
    synthesize_x_layer,
    synthesize_z_layer,
)
from cliffnf.pauli import PauliOperator, basis_pauli, pauli_commutes
from cliffnf.rewrite import builtin_relations, load_rules, rewrite_normalize, verify_relations
from cliffnf.tableau import CliffordTableau, circuit_tableau


@pytest.fixture
def report(capsys):
    def emit(number: int, title: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")
        assert ok, detail

    return emit


def test_criterion_1_group_orders(report, capsys):
    expected = {1: "192", 2: "92160", 3: "743178240"}
    outputs, worst = {}, 0.0
    for n in expected:
        code = main(["count", str(n)])
        outputs[n] = capsys.readouterr().out.strip() if code == 0 else None
        # the bound applies to the computation; parser construction alone costs a few ms
        start = time.perf_counter()
        str(clifford_order(n))
        worst = max(worst, time.perf_counter() - start)
    ok = outputs == expected and worst < 1e-3
    report(1, "group orders", ok, f"{outputs}, slowest {worst * 1e3:.3f} ms")


def test_criterion_2_enumeration_one_qubit(report):
    start = time.perf_counter()
    forms = list(enumerate_normal_forms(1))
    mats = {circuit_unitary(nf_to_circuit(nf)) for nf in forms}
    elapsed = time.perf_counter() - start
    ok = len(forms) == 192 and len(mats) == 192 and elapsed < 5
    report(2, "enumeration n=1", ok, f"{len(forms)} forms, {len(mats)} distinct unitaries, {elapsed:.2f} s")


def test_criterion_3_enumeration_two_qubits(report):
    start = time.perf_counter()
    pairs = set()
    count = 0
    cache: dict = {}
    for nf in enumerate_normal_forms(2):
        shape = nf.without_phase()
        if shape not in cache:
            cache[shape] = circuit_tableau(nf_to_circuit(shape))
        pairs.add((cache[shape], nf.p))
        count += 1
    elapsed = time.perf_counter() - start
    ok = count == 92160 and len(pairs) == 92160 and elapsed < 120
    report(3, "enumeration n=2", ok, f"{count} forms, {len(pairs)} distinct (tableau, p), {elapsed:.1f} s")


def test_criterion_4_round_trip(report):
    rng = random.Random(4)
    failures = 0
    for _ in range(1000):
        n = rng.randint(1, 5)
        c = random_circuit(n, rng.randint(0, 100), rng, ("H", "S", "X", "CZ", "W"))
        if circuit_unitary(nf_to_circuit(normalize_circuit(c))) != circuit_unitary(c):
            failures += 1
    report(4, "round trip", failures == 0, f"1000 circuits, {failures} failures")


def _padded_pair(c: Circuit, rng: random.Random, count: int = 3) -> tuple[Circuit, Circuit]:
    """Insert relation instances: left sides into one copy, right sides at the same spots in the other."""
    inserts = []
    for _ in range(count):
        rel = rng.choice([r for r in builtin_relations() if r.n <= c.n])
        off = rng.randint(0, c.n - rel.n)
        inserts.append((rng.randint(0, len(c)), rel, off))
    inserts.sort(key=lambda t: t[0])
    a, b, last = [], [], 0
    for pos, rel, off in inserts:
        a += c.gates[last:pos]
        b += c.gates[last:pos]
        a += [g.shifted(off) for g in rel.lhs]
        b += [g.shifted(off) for g in rel.rhs]
        last = pos
    a += c.gates[last:]
    b += c.gates[last:]
    return Circuit(c.n, a), Circuit(c.n, b)


def test_criterion_5_uniqueness(report):
    rng = random.Random(5)
    failures = 0
    for _ in range(200):
        c = random_circuit(rng.randint(1, 4), rng.randint(0, 40), rng, ("H", "S", "X", "CZ", "W"))
        a, b = _padded_pair(c, rng)
        if a.gates == b.gates or format_normal_form(normalize_circuit(a)) != format_normal_form(normalize_circuit(b)):
            failures += 1
    report(5, "uniqueness", failures == 0, f"200 padded pairs, {failures} failures")


def test_criterion_6_relations(report):
    start = time.perf_counter()
    results = verify_relations()
    elapsed = time.perf_counter() - start
    passed = sum(r.ok for r in results)
    widest = max(r.relation.n for r in results)
    ok = passed == len(results) == 17 and widest <= 3 and elapsed < 10
    report(6, "relations", ok, f"{passed}/{len(results)} exact, n <= {widest}, {elapsed:.2f} s")


def test_criterion_7_rewrite_engine(report):
    start = time.perf_counter()
    rules = load_rules()
    unsound = [str(r) for r in rules if not r.is_sound()]
    rng = random.Random(7)
    mismatches = 0
    for _ in range(500):
        n = rng.randint(1, 3)
        c = random_circuit(n, rng.randint(0, 60), rng, ("H", "S", "X", "CZ", "W"))
        # check=True asserts the termination measure drops at every step
        if rewrite_normalize(c, rules=rules, check=True) != normalize_circuit(c):
            mismatches += 1
    elapsed = time.perf_counter() - start
    ok = not unsound and mismatches == 0 and elapsed < 120
    detail = f"{len(rules)} rules, {len(unsound)} unsound, 500 circuits, {mismatches} mismatches, {elapsed:.1f} s"
    report(7, "rewrite engine", ok, detail)


def _random_hermitian(n: int, rng: random.Random) -> PauliOperator:
    while True:
        p = PauliOperator(n, rng.randrange(1 << n), rng.randrange(1 << n), 0)
        if not p.is_scalar:
            # literal Y carries no extra phase, so either sign is Hermitian
            return p if rng.random() < 0.5 else p.negate()


def test_criterion_8_layer_properties(report):
    failures = 0
    for k in range(1, 4):
        for ls in itertools.product(range(1, 5), repeat=k - 1):
            for h in range(1, 5):
                t = CliffordTableau.identity(k).then(XLayer(k, ls, h).gates())
                failures += t.action(basis_pauli(k, "Z", 0)) != basis_pauli(k, "Z", k - 1)
    rng = random.Random(8)
    for _ in range(500):
        k = rng.randint(1, 5)
        p = _random_hermitian(k, rng)
        u = circuit_unitary(Circuit(k, synthesize_z_layer(p).gates()))
        failures += conjugate_pauli_by_matrix(u, p) != basis_pauli(k, "Z", 0)
        q = _random_hermitian(k, rng)
        while pauli_commutes(q, basis_pauli(k, "Z", 0)):
            q = _random_hermitian(k, rng)
        u = circuit_unitary(Circuit(k, synthesize_x_layer(q).gates()))
        failures += conjugate_pauli_by_matrix(u, q) != basis_pauli(k, "X", k - 1)
    report(8, "layer properties", failures == 0, f"{failures} failures")


def _permutation(perm: list[int]) -> ExactMatrix:
    m = np.eye(len(perm), dtype=np.int64)[perm]
    return ExactMatrix(np.stack([m, 0 * m, 0 * m, 0 * m]))


def test_criterion_9_swap_and_expansion(report):
    # index bits: wire 0 is the most significant
    def swapped(i: int, a: int, b: int) -> int:
        ba, bb = 2 - a, 2 - b
        if (i >> ba & 1) != (i >> bb & 1):
            i ^= (1 << ba) | (1 << bb)
        return i

    checks = []
    for a in (0, 1):
        word = Circuit(3, swap_word(a, a + 1))
        checks.append(circuit_unitary(word) == _permutation([swapped(i, a, a + 1) for i in range(8)]))
    raw = Circuit(3, [Gate("CZ", (0, 2))])
    expanded = expand_nonadjacent(raw)
    checks.append(expanded.is_adjacent())
    checks.append(circuit_unitary(expanded) == circuit_unitary(raw, allow_nonadjacent=True))
    report(9, "swap and expansion", all(checks), f"{sum(checks)}/{len(checks)} exact checks, {len(expanded)} gates")
