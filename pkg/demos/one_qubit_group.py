"""Walk through the single-qubit Clifford group.

Every one of the 192 operators gets a unique normal form.  We list a few,
check they are pairwise distinct as exact matrices, and show how a familiar
identity (SH)^3 = ω comes out as the identity form with phase 1.
"""

from cliffnf.circuit import Circuit, Gate, format_circuit
from cliffnf.exact import circuit_unitary
from cliffnf.normal_form import clifford_order, enumerate_normal_forms, format_normal_form, nf_to_circuit, normalize_circuit

forms = list(enumerate_normal_forms(1))
print(f"{len(forms)} normal forms, expected {clifford_order(1)}")

# %% pairwise distinct as exact unitaries
mats = {circuit_unitary(nf_to_circuit(nf)) for nf in forms}
print(f"{len(mats)} distinct matrices")

# %% a few of them, as layers and as gates
for nf in forms[8:40:8]:
    print(format_normal_form(nf), end="")
    print(format_circuit(nf_to_circuit(nf, expand=True)).replace("\n", "; "))
    print()

# %% (SH)^3 is the scalar ω
shshsh = Circuit(1, [Gate("S", (0,)), Gate("H", (0,))] * 3)
print(format_normal_form(normalize_circuit(shshsh)), end="")
print(circuit_unitary(shshsh).format_rows(decimal=True))
