"""Morphisms, dual state maps, automorphism groups, invariance.

Structure maps preserve order, complement and the unit; pulling states
back along them preserves the whole conditional calculus.  Transition
probabilities are invariant, and dual maps permute atomic states the way
the inverse permutes atoms.
"""

from qlogic import (
    atomic_state,
    automorphisms,
    check_lemma1a,
    check_lemma1b,
    dual_state,
    validate_logic,
    validate_morphism,
)
from qlogic.builders import boolean_algebra, mo_logic

b2 = validate_logic(boolean_algebra(2))
b3 = validate_logic(boolean_algebra(3))

print("== an embedding of the four-element algebra ==")
m = [0] * b2.n
m[b2.one] = b3.one
m[b2.index("x")] = b3.index("x")
m[b2.index("y")] = b3.index("x'")  # x' = {y, z}
emb = validate_morphism(b2, b3, m)
print(f"x -> x and y -> {{y,z}}; injective: {emb.is_injective}")

mass = atomic_state(b3, b3.index("x"))
pulled = dual_state(emb, mass)
print(f"pulling back the point mass on x gives values "
      f"{[str(v) for v in pulled.values]} on the small algebra")

print()
print("== automorphism groups ==")
for name, logic in (("2-atom powerset", b2), ("3-atom powerset", b3),
                    ("MO2", validate_logic(mo_logic(2)))):
    autos = automorphisms(logic)
    print(f"{name}: {len(autos)} automorphisms")

print()
print("== transitions are invariant under morphisms ==")
rep = check_lemma1a(emb, b2.index("x"), b2.index("y"))
print(f"P(y|x) = {rep.source_value} upstairs and downstairs: {rep.holds}")

print()
print("== dual maps permute atomic states ==")
swap = next(t for t in automorphisms(b3)
            if t.map[b3.index("x")] == b3.index("y")
            and t.map[b3.index("z")] == b3.index("z"))
rep = check_lemma1b(swap, b3.index("x"))
print(f"for the x<->y swap, the dual of the atomic state of x is the "
      f"atomic state of {b3.labels[rep.preimage_atom]}: {rep.holds}")
