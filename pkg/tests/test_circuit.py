import numpy as np
import pytest
from hypothesis import given

from cliffnf.circuit import (
    Circuit,
    CircuitSyntaxError,
    Gate,
    expand_nonadjacent,
    format_circuit,
    parse_circuit,
    swap_word,
)
from cliffnf.exact import ExactMatrix, circuit_unitary

from conftest import circuits


def test_parse_simple():
    c = parse_circuit("qubits 1\nH 0\nH 0")
    assert c == Circuit(1, [Gate("H", (0,))] * 2)


def test_comments_blank_lines_and_library_gates():
    c = parse_circuit("# demo\nqubits 2  # two wires\n\nW\nB3 0 1\ncz 0 1\n")
    assert c.gates == (Gate("W"), Gate("B", (0, 1), 3), Gate("CZ", (0, 1)))


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("H 0", "header"),
        ("qubits 1\nT 0", "unknown gate"),
        ("qubits 1\nH 1", "out of range"),
        ("qubits 2\nCZ 0 0", "distinct"),
        ("qubits 2\nH x", "bad wire"),
        ("qubits 1\nA4 0", "outside 1..3"),
        ("qubits 3\nCZ 0 2", "non-adjacent"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(CircuitSyntaxError) as err:
        parse_circuit(text)
    assert fragment in str(err.value)


def test_error_reports_line_number():
    with pytest.raises(CircuitSyntaxError) as err:
        parse_circuit("qubits 2\nH 0\n\nS 5\n")
    assert err.value.line == 4


def test_canonical_text_round_trips_byte_identically():
    text = "qubits 3\nH 0\nS 2\nX 1\nCZ 1 2\nW\nD4 0 1\n"
    assert format_circuit(parse_circuit(text)) == text


@given(circuits())
def test_round_trip_random(c):
    assert parse_circuit(format_circuit(c)) == c


def test_swap_word_pattern():
    word = swap_word(0, 1)
    assert [str(g) for g in word] == ["H 0", "H 1", "CZ 0 1"] * 3
    perm = np.eye(4, dtype=np.int64)[[0, 2, 1, 3]]
    swap = ExactMatrix(np.stack([perm, 0 * perm, 0 * perm, 0 * perm]))
    assert circuit_unitary(Circuit(2, word)) == swap


def test_expand_nonadjacent_three_wires():
    c = parse_circuit("qubits 3\nCZ 0 2", expand_nonadjacent_cz=True)
    assert c.is_adjacent()
    assert len(c) == 19
    direct = circuit_unitary(Circuit(3, [Gate("CZ", (0, 2))]), allow_nonadjacent=True)
    assert circuit_unitary(c) == direct


def test_expand_leaves_adjacent_circuits_alone():
    c = Circuit(2, [Gate("H", (0,)), Gate("CZ", (0, 1))])
    assert expand_nonadjacent(c) == c


def test_expand_longer_distances():
    for n, (a, b) in [(4, (0, 3)), (5, (4, 1))]:
        raw = Circuit(n, [Gate("CZ", (a, b))])
        assert circuit_unitary(expand_nonadjacent(raw)) == circuit_unitary(raw, allow_nonadjacent=True)


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("B", (0, 2), 1)
    with pytest.raises(ValueError):
        Gate("H", (0,), 2)
    with pytest.raises(ValueError):
        Circuit(1, [Gate("H", (1,))])


def test_inverse_circuit():
    c = Circuit(2, [Gate("S", (0,)), Gate("H", (1,)), Gate("CZ", (0, 1)), Gate("W")])
    assert circuit_unitary(c + c.inverse()) == circuit_unitary(Circuit(2))
