"""Decide circuit equalities by comparing normal forms.

Three swap-like circuits on two wires, and a long CZ expanded through
swaps, checked against the exact matrices.
"""

from cliffnf.circuit import Circuit, Gate, expand_nonadjacent, parse_circuit
from cliffnf.exact import circuit_unitary, global_phase_ratio
from cliffnf.normal_form import format_normal_form, normalize_circuit

swap_by_cz = parse_circuit("qubits 2\n" + "H 0\nH 1\nCZ 0 1\n" * 3)
swap_by_cnot = parse_circuit("qubits 2\n" + "H 1\nCZ 0 1\nH 1\nH 0\nCZ 0 1\nH 0\nH 1\nCZ 0 1\nH 1\n")
not_a_swap = parse_circuit("qubits 2\nH 0\nH 1\nCZ 0 1\n")

ref = normalize_circuit(swap_by_cz)
print(format_normal_form(ref), end="")
for name, c in [("three CNOTs", swap_by_cnot), ("one round", not_a_swap)]:
    nf = normalize_circuit(c)
    same = nf.without_phase() == ref.without_phase()
    print(f"{name}: {'same operator' if nf == ref else 'same up to phase' if same else 'different'}")

# %% CZ between wires 0 and 2, rewritten with adjacent gates only
raw = Circuit(3, [Gate("CZ", (0, 2))])
adj = expand_nonadjacent(raw)
print(f"\nexpanded into {len(adj)} adjacent gates")
ratio = global_phase_ratio(circuit_unitary(adj), circuit_unitary(raw, allow_nonadjacent=True))
print("phase ratio against the direct matrix:", ratio)
