"""Building and validating finite event logics.

An event logic is described by labels, a generating order relation, an
orthocomplementation and its bounds.  Validation closes the order and
checks the orthomodular axioms; the hexagon shows what rejection looks
like.
"""

from qlogic import validate_logic
from qlogic.builders import boolean_algebra, hexagon_o6, mo_logic
from qlogic.errors import AxiomViolation

print("== the powerset algebra on three atoms ==")
b3 = validate_logic(boolean_algebra(3))
print(f"elements: {b3.n}, labels: {', '.join(b3.labels)}")
print(f"atoms: {[b3.labels[a] for a in b3.atoms]}")
print(f"Boolean: {b3.is_boolean}")

x, y = b3.index("x"), b3.index("y")
print(f"x and y orthogonal? {b3.orthogonal(x, y)}")
print(f"x v y = {b3.labels[b3.sup(x, y)]}, x ^ y = {b3.labels[b3.inf(x, y)]}")

print()
print("== the two-block lantern MO2 ==")
mo2 = validate_logic(mo_logic(2))
print(f"elements: {', '.join(mo2.labels)}")
a, b = mo2.index("a"), mo2.index("b")
print(f"a and b orthogonal? {mo2.orthogonal(a, b)}   "
      f"(different blocks share only the bounds)")
print(f"a ^ b = {mo2.labels[mo2.inf(a, b)]}, a v b = {mo2.labels[mo2.sup(a, b)]}")
print(f"Boolean: {mo2.is_boolean}")

print()
print("== the hexagon violates the orthomodular law ==")
try:
    validate_logic(hexagon_o6())
except AxiomViolation as exc:
    print(f"rejected: {exc}")
    print(f"witness elements: {[hexagon_o6().labels[i] for i in exc.witness]}")

print()
print("== logics round-trip through the interchange format ==")
text = b3.to_json()
print(text.splitlines()[1], "...")
from qlogic import LogicDescription
again = validate_logic(LogicDescription.from_json(text))
print(f"re-validated: {again.n} elements, same atoms: "
      f"{[again.labels[a] for a in again.atoms]}")
