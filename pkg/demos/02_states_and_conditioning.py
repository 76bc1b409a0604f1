"""States, the state polytope, and conditional probabilities.

States assign probabilities to events, additively on orthogonal pairs.
On a powerset they are classical distributions and conditioning is the
familiar ratio; on the lantern MO2 the conditional on one block leaves
the other block completely undetermined.
"""

from fractions import Fraction as F

from qlogic import (
    State,
    check_condition_F,
    check_condition_G,
    check_condition_H,
    conditional_probability,
    state_polytope,
    validate_logic,
)
from qlogic.builders import boolean_algebra, mo_logic, nonfaithful_logic

b3 = validate_logic(boolean_algebra(3))
mo2 = validate_logic(mo_logic(2))

print("== state polytopes ==")
poly = state_polytope(b3)
print(f"powerset on 3 atoms: {len(poly.vertices)} extreme states "
      "(the point masses)")
poly2 = state_polytope(mo2)
print(f"MO2: {len(poly2.vertices)} extreme states; the two blocks are "
      "independent coins:")
for v in poly2.vertices:
    print(f"   value(a)={v[mo2.index('a')]}, value(b)={v[mo2.index('b')]}")

print()
print("== the three state-space conditions ==")
for name, logic in (("powerset", b3), ("MO2", mo2)):
    f = check_condition_F(logic).holds
    g = check_condition_G(logic).holds
    h = check_condition_H(logic).holds
    print(f"{name}: faithful state {f}, unique conditionals {g}, "
          f"strong state space {h}")

nf = validate_logic(nonfaithful_logic())
rep = check_condition_F(nf)
print(f"a pasting with a value-forcing gadget: faithful state "
      f"{rep.holds} (every state vanishes on "
      f"{nf.labels[rep.failing_element]!r})")

print()
print("== classical conditioning on the powerset ==")
uniform = State(b3, [F(len(b3.atoms_below(e)), 3) for e in range(b3.n)])
e = b3.index("z'")  # the event {x, y}
res = conditional_probability(b3, uniform, e)
print(f"conditioning the uniform state on {{x,y}}: {res.kind}")
print(f"   mu(x) = {res.state[b3.index('x')]}, "
      f"mu(y) = {res.state[b3.index('y')]}, "
      f"mu(z) = {res.state[b3.index('z')]}")

print()
print("== ambiguous conditioning on MO2 ==")
rho = State(mo2, [0, F(1, 2), F(1, 2), F(1, 2), F(1, 2), 1])
res = conditional_probability(mo2, rho, mo2.index("a"))
print(f"conditioning on a: {res.kind}")
w1, w2 = res.witnesses
print(f"   one conditional has value(b) = {w1[mo2.index('b')]}, "
      f"another has value(b) = {w2[mo2.index('b')]}")
print("   the constraints fix the a-block but say nothing about b")
