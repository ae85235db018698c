"""Normalize a small circuit by rewriting alone and print every step.

The circuit is placed in front of the identity normal form.  At each step the
rightmost generator gate is pushed through the library gate(s) in front of it,
and the termination measure (dirty gates in the past of each clean gate) drops.
"""

from cliffnf.circuit import format_gate, parse_circuit
from cliffnf.normal_form import format_normal_form, normalize_circuit
from cliffnf.rewrite import DirtyNormalForm, find_window, load_rules, rewrite_step, termination_measure

circuit = parse_circuit("""
qubits 2
H 0
CZ 0 1
S 1
""")

rules = load_rules()
dnf = DirtyNormalForm.from_circuit(circuit)


def show(d: DirtyNormalForm) -> str:
    return " ".join(("*" if not g.is_clean else "") + format_gate(g) for g in d.gates)


print("start:", show(dnf))
step = 0
while dnf.dirty_positions():
    i = dnf.dirty_positions()[-1]
    window = find_window(dnf.gates, i)
    lhs = [dnf.gates[i]] + [dnf.gates[j] for j in window]
    rewrite_step(dnf, i, window, rules)
    step += 1
    print(f"{step:2d}. rewrote {', '.join(map(format_gate, lhs)):24s} measure {termination_measure(dnf)}")
    print("   ", show(dnf))

nf = dnf.to_normal_form()
print()
print(format_normal_form(nf), end="")
print("matches semantic synthesis:", nf == normalize_circuit(circuit))
