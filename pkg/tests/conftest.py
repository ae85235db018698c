import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cliffnf.circuit import Circuit, Gate
from cliffnf.pauli import PauliOperator

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def paulis(draw, n=None, hermitian=False):
    n = draw(st.integers(0, 6)) if n is None else n
    x = draw(st.integers(0, (1 << n) - 1))
    z = draw(st.integers(0, (1 << n) - 1))
    phase = draw(st.sampled_from([0, 2])) if hermitian else draw(st.integers(0, 3))
    return PauliOperator(n, x, z, phase)


@st.composite
def gates_on(draw, n, kinds=("H", "S", "X", "CZ", "W")):
    kinds = [k for k in kinds if (k != "CZ" or n >= 2) and (k == "W" or n >= 1)]
    kind = draw(st.sampled_from(kinds))
    if kind == "W":
        return Gate("W")
    if kind == "CZ":
        w = draw(st.integers(0, n - 2))
        return Gate("CZ", (w, w + 1))
    return Gate(kind, (draw(st.integers(0, n - 1)),))


@st.composite
def circuits(draw, n=None, max_len=30, kinds=("H", "S", "X", "CZ", "W"), min_n=1, max_n=4):
    n = draw(st.integers(min_n, max_n)) if n is None else n
    gs = draw(st.lists(gates_on(n, kinds), max_size=max_len))
    return Circuit(n, gs)


@pytest.fixture
def rng():
    return random.Random(20240611)
