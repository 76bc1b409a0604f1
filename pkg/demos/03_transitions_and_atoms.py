"""State-independent transition probabilities and atomic states.

For some event pairs every state concentrated on e agrees about f; that
common value is the transition probability out of e.  Out of an atom it
exists for every event and assembles into the atomic state, the discrete
counterpart of a pure quantum state.
"""

from qlogic import (
    atom_equivalences,
    atomic_state,
    transition_probability,
    validate_logic,
)
from qlogic.builders import boolean_algebra, mo_logic
from qlogic.errors import NotUnique

b3 = validate_logic(boolean_algebra(3))
mo2 = validate_logic(mo_logic(2))

print("== transitions on the powerset ==")
x, xy = b3.index("x"), b3.index("z'")
res = transition_probability(b3, xy, x)
print(f"out of the atom x into {{x,y}}: exists={res.exists}, value={res.value}")
res = transition_probability(b3, x, xy)
print(f"out of {{x,y}} into x: exists={res.exists} "
      f"(states on that face put anywhere from {res.low} to {res.high} on x)")

print()
print("== transitions characterize order and orthogonality ==")
for f, e in ((x, xy), (xy, x)):
    r = transition_probability(b3, e, f)
    print(f"P({b3.labels[e]}|{b3.labels[f]}) = "
          f"{r.value if r.exists else 'undefined'};  "
      f"below: {bool(b3.leq[f, e])}, orthogonal: {b3.orthogonal(e, f)}")

print()
print("== atomic states ==")
st = atomic_state(b3, x)
print(f"the atomic state of x: {[str(v) for v in st.values]}")
print("   (value 1 exactly above x: a point mass)")

try:
    atomic_state(mo2, mo2.index("a"))
except NotUnique as exc:
    print(f"MO2 has no unique state on its atoms: {exc}")

print()
print("== the four atom identities rise and fall together ==")
for e, f in ((x, x), (x, b3.index("y"))):
    rep = atom_equivalences(b3, e, f)
    flags = ", ".join(f"{k}: {v}" for k, v in rep.identities.items())
    print(f"({b3.labels[e]}, {b3.labels[f]}): {flags}")
