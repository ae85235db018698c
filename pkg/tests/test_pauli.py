import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliffnf.exact import pauli_matrix
from cliffnf.pauli import PauliOperator, basis_pauli, parse_pauli, pauli_commutes, pauli_mul

from conftest import paulis


def P(text):
    return parse_pauli(text)


def test_product_examples():
    assert pauli_mul(P("Z"), P("Z")) == PauliOperator(1)
    assert pauli_mul(P("X"), P("Z")) == P("-iY")
    assert pauli_mul(P("XI"), P("IZ")) == P("XZ")


def test_x_times_z_matches_matrices():
    assert pauli_matrix(P("X")) @ pauli_matrix(P("Z")) == pauli_matrix(P("-iY"))


def test_commutation_examples():
    assert not pauli_commutes(P("X"), P("Z"))
    assert pauli_commutes(P("XX"), P("ZZ"))
    assert pauli_commutes(P("XYZ"), P("III"))


def test_basis_pauli():
    assert basis_pauli(3, "Z", 2) == P("IIZ")
    assert basis_pauli(1, "X", 0) == P("X")
    assert basis_pauli(2, "Z", 0) == P("ZI")
    with pytest.raises(IndexError):
        basis_pauli(2, "Z", 2)
    with pytest.raises(ValueError):
        basis_pauli(2, "Y", 0)


def test_size_mismatch():
    with pytest.raises(ValueError):
        pauli_mul(P("X"), P("XX"))
    with pytest.raises(ValueError):
        pauli_commutes(P("X"), P("XX"))


def test_text_forms_round_trip():
    p = P("-iXYZ")
    assert str(p) == "−i·X⊗Y⊗Z"
    assert p.compact() == "-iXYZ"
    assert parse_pauli(str(p)) == p
    assert parse_pauli("+X⊗Z") == P("XZ")


def test_scalars_on_zero_qubits():
    i = PauliOperator(0, 0, 0, 1)
    assert (i * i).phase == 2
    assert i.is_scalar


@given(st.integers(0, 6).flatmap(lambda n: st.tuples(paulis(n), paulis(n), paulis(n))))
def test_group_laws(triple):
    a, b, c = triple
    one = PauliOperator(a.n)
    assert (a * b) * c == a * (b * c)
    assert a * one == a == one * a


@given(st.integers(0, 6).flatmap(lambda n: st.tuples(paulis(n), paulis(n))))
def test_commutation_is_the_phase_of_swapping(pair):
    a, b = pair
    ab, ba = a * b, b * a
    if pauli_commutes(a, b):
        assert ab == ba
    else:
        assert ab == ba.negate()


@given(paulis())
def test_square_is_scalar_and_plus_one_iff_hermitian(p):
    sq = p * p
    assert sq.is_scalar
    assert (sq.phase == 0) == p.is_hermitian


@given(st.integers(0, 4).flatmap(lambda n: st.tuples(paulis(n), paulis(n))))
def test_product_agrees_with_matrices(pair):
    a, b = pair
    assert pauli_matrix(a * b) == pauli_matrix(a) @ pauli_matrix(b)
