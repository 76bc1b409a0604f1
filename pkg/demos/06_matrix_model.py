"""The matrix model: projections, the trace rule, unitary cloning.

On a complex Hilbert space the events are self-adjoint projections and
conditioning is the projective-measurement update.  The operator
identity e f e = s e singles out the state-independent transitions, and
on unit vectors the no-cloning contradiction is one line of arithmetic.
"""

import numpy as np

from qlogic import hilbert as hb

print("== the trace rule ==")
a = hb.DensityOperator.maximally_mixed(3)
e = hb.ProjectionOperator(np.diag([1, 1, 0]))
f = hb.ProjectionOperator(np.diag([0, 1, 1]))
print(f"commuting example: conditional = {hb.trace_cond_prob(a, e, f):.4f} "
      "(the classical ratio 1/2)")

print()
print("== operator transitions ==")
print(f"e to e: s = {hb.transition_exists(e, e)}")
xi = hb.PureVector([1, 0, 0])
overlap_proj = hb.ProjectionOperator.onto([np.array([1, 1, 0]) / np.sqrt(2)])
s = hb.transition_exists(xi.projector(), overlap_proj)
print(f"rank-1 event to a tilted line: s = {s:.4f} "
      f"= squared overlap {hb.atom_transition(xi, overlap_proj):.4f}")
print(f"rank-2 e to a tilted line: "
      f"{hb.transition_exists(e, overlap_proj)} (e f e is not a multiple of e)")

print()
print("== two copies via the tensor product ==")
first = hb.tensor_embed(xi.projector(), "first", 3)
second = hb.tensor_embed(overlap_proj, "second", 3)
meet = hb.ProjectionOperator(first.matrix @ second.matrix)
print(f"(e x 1)(1 x f) is again a projection of rank {meet.rank()}: "
      "the meet of the embedded events")
rng = np.random.default_rng(42)
ps = [hb.random_rank1_projection(rng, 3) for _ in range(4)]
rep = hb.lemma2_matrix_check(*ps)
print(f"product identity on a random rank-1 quadruple: residual "
      f"{rep.residual:.2e}")

print()
print("== unitary cloning of basis states ==")
U = hb.basis_copy_unitary(2)
basis = [hb.basis_vector(2, 0), hb.basis_vector(2, 1)]
print(f"the basis-copy permutation clones the computational basis: "
      f"{hb.test_unitary_cloner(U, basis, basis[0])}")
plus = hb.PureVector(np.array([1, 1]) / np.sqrt(2))
print(f"the same unitary on {{|0>, |+>}}: "
      f"{hb.test_unitary_cloner(U, [basis[0], plus], basis[0])}")

print()
print("== why no unitary can do better ==")
wit = hb.no_cloning_witness(basis[0], plus)
print(f"overlap s = {wit.overlap:.4f}; a cloner would force s = s^2 = "
      f"{wit.squared:.4f}")
print(f"cloneable: {wit.cloneable} (only orthogonal or identical pure "
      "states can be copied)")
for note in wit.notes:
    print(f"note: {note}")
