import dataclasses
import random
from importlib import resources

import pytest
from hypothesis import given, settings

from cliffnf.circuit import Circuit, Gate, parse_circuit, random_circuit
from cliffnf.normal_form import format_normal_form, identity_normal_form, normalize_circuit
from cliffnf.rewrite import (
    DEFAULT_SUFFIX_BOUND,
    DirtyNormalForm,
    RewriteError,
    RewriteRule,
    RuleSet,
    builtin_relations,
    generate_rules,
    load_rules,
    rewrite_normalize,
    termination_measure,
    verify_relations,
    wire_label,
)

from conftest import circuits


def test_all_relations_hold_exactly():
    results = verify_relations()
    assert len(results) == 17
    assert len({r.relation.name for r in results}) == 17
    assert all(r.ok and r.detail == "exact" for r in results)


def test_long_relations_use_three_wires():
    rels = {r.name: r for r in builtin_relations()}
    for name in ("cz-commute", "three-wire-braid", "three-wire-cycle-top", "three-wire-cycle-bottom"):
        used = {w for g in rels[name].lhs + rels[name].rhs for w in g.wires}
        assert used == {0, 1, 2}


def test_corrupted_relation_is_reported():
    rels = {r.name: r for r in builtin_relations()}
    bad = dataclasses.replace(rels["sh-cube"], rhs=())
    (res,) = verify_relations([bad])
    assert not res.ok and res.detail == "off by ω^1"
    broken = dataclasses.replace(rels["h-square"], rhs=(Gate("S", (0,)),))
    (res,) = verify_relations([broken])
    assert res.detail == "not proportional"
    assert "FAIL" in str(res)


def test_wire_labels_on_identity_form():
    gates = identity_normal_form(2).clean_gates()
    # level 2 starts with A on wire 1, B on (0, 1) is next on wire 0
    assert [wire_label(gates, 0, w) for w in (0, 1)] == [1, 1]
    c_pos = next(i for i, g in enumerate(gates) if g.kind == "C")
    assert wire_label(gates, c_pos, 0) == 2


def test_termination_measure_examples():
    h, a, c = Gate("H", (0,)), Gate("A", (0,), 1), Gate("C", (0,), 1)
    assert termination_measure([a, c]) == (0, 0)
    assert termination_measure([h, a, c]) == (1, 1)
    assert termination_measure([a, h, c]) == (0, 1)
    assert termination_measure([h, h, a, c]) == (2, 2)


def test_empty_and_trivial_circuits():
    for n in range(4):
        assert rewrite_normalize(Circuit(n)) == identity_normal_form(n)
    nf = rewrite_normalize(parse_circuit("qubits 1\nH 0\nH 0"))
    assert nf == identity_normal_form(1) and nf.p == 0
    nf = rewrite_normalize(Circuit(1, [Gate("S", (0,)), Gate("H", (0,))] * 3))
    assert nf.without_phase() == identity_normal_form(1) and nf.p == 1


def test_dirty_form_from_circuit():
    c = Circuit(2, [Gate("X", (1,)), Gate("W"), Gate("CZ", (0, 1))])
    d = DirtyNormalForm.from_circuit(c)
    assert d.omega == 1
    assert [str(g) for g in d.gates[:5]] == ["H 1", "S 1", "S 1", "H 1", "CZ 0 1"]
    assert d.dirty_positions() == [0, 1, 2, 3, 4] and d.is_valid()
    with pytest.raises(ValueError):
        DirtyNormalForm.from_circuit(Circuit(1, [Gate("A", (0,), 2)]))


def test_every_rule_is_sound():
    rules = load_rules()
    assert len(rules) == 100
    assert all(rule.is_sound() for rule in rules)


def test_rule_file_matches_generator():
    golden = resources.files("cliffnf.data").joinpath("rules.txt").read_text()
    assert generate_rules(verify=False).format() == golden


def test_suffix_bound_is_needed():
    longest = max(len(r.rhs) - sum(g.is_clean for g in r.rhs) for r in load_rules())
    assert longest < DEFAULT_SUFFIX_BOUND
    with pytest.raises(RewriteError):
        generate_rules(suffix_bound=longest - 1, verify=False)


def test_rule_text_format():
    rule = RewriteRule((Gate("H", (0,)), Gate("A", (0,), 1)), (Gate("A", (0,), 2),), 0)
    assert str(rule) == "H 0, A1 0 => A2 0 | 0"
    assert str(RewriteRule((Gate("W"),) * 8, ())) == "W, W, W, W, W, W, W, W => | 0"


def test_tampered_rule_file_is_rejected():
    golden = resources.files("cliffnf.data").joinpath("rules.txt").read_text()
    lines = golden.splitlines(keepends=True)
    lhs, _, phase = lines[5].rpartition("|")
    tampered = "".join(lines[:5] + [f"{lhs}| {(int(phase) + 1) % 8}\n"] + lines[6:])
    with pytest.raises(ValueError, match="hash"):
        RuleSet.parse(tampered)


def test_unsound_rule_is_detected():
    rule = next(iter(load_rules()))
    assert not dataclasses.replace(rule, phase=(rule.phase + 1) % 8).is_sound()


def test_agrees_with_synthesis_including_phase():
    rng = random.Random(2024)
    for _ in range(120):
        n = rng.randint(1, 3)
        c = random_circuit(n, rng.randint(0, 40), rng, ("H", "S", "X", "CZ", "W"))
        assert rewrite_normalize(c) == normalize_circuit(c)


@settings(max_examples=25)
@given(circuits(max_n=3, max_len=15, kinds=("H", "S", "X", "CZ", "W")))
def test_strategies_agree(c):
    rng = random.Random(len(c))
    assert rewrite_normalize(c, strategy="random", rng=rng) == rewrite_normalize(c)


def test_relation_sides_normalize_identically():
    for rel in builtin_relations()[:15]:
        lhs, rhs = rel.circuits
        a, b = rewrite_normalize(lhs), rewrite_normalize(rhs)
        assert format_normal_form(a) == format_normal_form(b), rel.name


def test_non_adjacent_input_is_refused():
    with pytest.raises(ValueError):
        rewrite_normalize(Circuit(3, [Gate("CZ", (0, 2))]))


def test_unknown_strategy():
    with pytest.raises(ValueError):
        rewrite_normalize(Circuit(1), strategy="leftmost")


def test_missing_rule_raises():
    c = Circuit(1, [Gate("H", (0,))])
    with pytest.raises(RewriteError, match="no rule"):
        rewrite_normalize(c, rules=RuleSet())
