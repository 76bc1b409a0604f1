"""Matrix model: trace rule, operator transitions, cloning witnesses."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlogic import hilbert as hb
from qlogic.errors import (
    DimensionMismatch,
    OperatorInvariantError,
    ZeroCondition,
)


def rng_for(seed):
    return np.random.default_rng(seed)


# ---------------------------------------------------------------------------
# operator invariants
# ---------------------------------------------------------------------------

def test_projection_invariants_enforced():
    with pytest.raises(OperatorInvariantError):
        hb.ProjectionOperator([[0.5, 0.4], [0.1, 0.5]])  # not self-adjoint
    with pytest.raises(OperatorInvariantError):
        hb.ProjectionOperator([[0.5, 0.0], [0.0, 0.5]])  # not idempotent
    hb.ProjectionOperator(np.diag([1.0, 0.0]))


def test_density_invariants_enforced():
    with pytest.raises(OperatorInvariantError):
        hb.DensityOperator(np.diag([0.8, 0.8]))  # trace 1.6
    with pytest.raises(OperatorInvariantError):
        hb.DensityOperator(np.diag([1.5, -0.5]))  # negative eigenvalue
    hb.DensityOperator(np.diag([0.25, 0.75]))


def test_unit_vector_and_unitary_invariants():
    with pytest.raises(OperatorInvariantError):
        hb.PureVector([1.0, 1.0])
    with pytest.raises(OperatorInvariantError):
        hb.UnitaryOperator([[1.0, 0.0], [1.0, 1.0]])
    hb.PureVector(np.array([1, 1]) / np.sqrt(2))
    hb.UnitaryOperator(np.array([[0, 1], [1, 0]]))


# ---------------------------------------------------------------------------
# trace rule
# ---------------------------------------------------------------------------

def test_trace_rule_on_commuting_example():
    a = hb.DensityOperator.maximally_mixed(3)
    e = hb.ProjectionOperator(np.diag([1, 1, 0]))
    f = hb.ProjectionOperator(np.diag([0, 1, 1]))
    assert trace_close(hb.trace_cond_prob(a, e, f), 0.5, hb.STRICT_TOL)


def trace_close(x, y, tol):
    return abs(x - y) <= tol


def test_trace_rule_boundary_cases():
    rng = rng_for(0)
    e = hb.random_projection(rng, 4, 2)
    a = hb.random_density(rng, 4)
    assert trace_close(hb.trace_cond_prob(a, e, e), 1.0, 1e-12)
    assert trace_close(
        hb.trace_cond_prob(a, e, e.complement()), 0.0, 1e-12
    )


def test_trace_rule_matches_classical_ratio_when_commuting():
    rng = rng_for(1)
    for _ in range(200):
        dim = int(rng.integers(2, 5))
        probs = rng.random(dim)
        a = hb.DensityOperator(np.diag(probs / probs.sum()))
        em = np.diag(rng.integers(0, 2, dim).astype(float))
        fm = np.diag(rng.integers(0, 2, dim).astype(float))
        if np.trace(a.matrix @ em).real <= 1e-9:
            continue
        e, f = hb.ProjectionOperator(em), hb.ProjectionOperator(fm)
        classical = (np.trace(a.matrix @ em @ fm) / np.trace(a.matrix @ em)).real
        assert trace_close(hb.trace_cond_prob(a, e, f), classical, 1e-12)


def test_trace_rule_two_forms_agree():
    rng = rng_for(2)
    for _ in range(50):
        a = hb.random_density(rng, 3)
        e = hb.random_projection(rng, 3, 2)
        f = hb.random_rank1_projection(rng, 3)
        am, em, fm = a.matrix, e.matrix, f.matrix
        lhs = (np.trace(am @ em @ fm @ em) / np.trace(am @ em)).real
        rhs = (np.trace(em @ am @ em @ fm) / np.trace(am @ em)).real
        assert trace_close(lhs, rhs, 1e-10)


def test_zero_condition_raises():
    a = hb.DensityOperator(np.diag([1.0, 0.0]))
    e = hb.ProjectionOperator(np.diag([0.0, 1.0]))
    with pytest.raises(ZeroCondition):
        hb.trace_cond_prob(a, e, e)


def test_conditionalization_is_additive_over_orthogonal_events():
    rng = rng_for(3)
    for _ in range(50):
        a = hb.random_density(rng, 4)
        e = hb.random_projection(rng, 4, 3)
        g = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
        q, _ = np.linalg.qr(g)
        f1 = hb.ProjectionOperator(np.outer(q[:, 0], q[:, 0].conj()))
        f2 = hb.ProjectionOperator(np.outer(q[:, 1], q[:, 1].conj()))
        both = hb.ProjectionOperator(f1.matrix + f2.matrix)
        lhs = hb.trace_cond_prob(a, e, both)
        rhs = hb.trace_cond_prob(a, e, f1) + hb.trace_cond_prob(a, e, f2)
        assert trace_close(lhs, rhs, 1e-9)


# ---------------------------------------------------------------------------
# operator transitions
# ---------------------------------------------------------------------------

def test_transition_reflexive():
    e = hb.ProjectionOperator(np.diag([1, 1, 0]))
    assert trace_close(hb.transition_exists(e, e), 1.0, 1e-12)


def test_transition_rank1_equals_overlap():
    rng = rng_for(4)
    for dim in (2, 3, 4):
        for _ in range(100):
            xi = hb.random_unit_vector(rng, dim)
            f = hb.random_projection(rng, dim, int(rng.integers(1, dim)))
            s = hb.transition_exists(xi.projector(), f)
            assert s is not None
            assert trace_close(s, hb.atom_transition(xi, f), 1e-9)


def test_transition_missing_for_mismatched_ranks():
    e = hb.ProjectionOperator(np.diag([1, 1, 0]))
    f = hb.ProjectionOperator.onto([np.array([0, 1, 1]) / np.sqrt(2)])
    assert hb.transition_exists(e, f) is None


def test_transition_orthogonal_is_zero():
    e = hb.ProjectionOperator(np.diag([1, 0, 0]))
    f = hb.ProjectionOperator(np.diag([0, 1, 0]))
    assert trace_close(hb.transition_exists(e, f), 0.0, 1e-12)


def test_atom_transition_examples():
    xi = hb.basis_vector(3, 0)
    f_fix = hb.ProjectionOperator(np.diag([1, 1, 0]))
    assert trace_close(hb.atom_transition(xi, f_fix), 1.0, 1e-12)
    f_half = hb.ProjectionOperator.onto([np.array([1, 1, 0]) / np.sqrt(2)])
    assert trace_close(hb.atom_transition(xi, f_half), 0.5, 1e-12)
    f_kill = hb.ProjectionOperator(np.diag([0, 0, 1]))
    assert trace_close(hb.atom_transition(xi, f_kill), 0.0, 1e-12)


# ---------------------------------------------------------------------------
# tensor embeddings
# ---------------------------------------------------------------------------

def test_embed_identity_is_identity():
    e = hb.ProjectionOperator.identity(3)
    emb = hb.tensor_embed(e, "first", 2)
    assert np.allclose(emb.matrix, np.eye(6))


def test_embed_multiplies_rank():
    rng = rng_for(5)
    e = hb.random_rank1_projection(rng, 3)
    assert hb.tensor_embed(e, "first", 4).rank() == 4
    assert hb.tensor_embed(e, "second", 4).rank() == 4


def test_embedded_meets_are_products():
    rng = rng_for(6)
    e = hb.random_rank1_projection(rng, 3)
    f = hb.random_projection(rng, 3, 2)
    first = hb.tensor_embed(e, "first", 3)
    second = hb.tensor_embed(f, "second", 3)
    product = first.matrix @ second.matrix
    assert np.allclose(product, second.matrix @ first.matrix, atol=1e-12)
    assert np.allclose(product, np.kron(e.matrix, f.matrix), atol=1e-12)
    hb.ProjectionOperator(product)  # the commuting product is a projection


# ---------------------------------------------------------------------------
# product identity on matrices
# ---------------------------------------------------------------------------

def test_matrix_lemma2_trivial_cases():
    v = hb.basis_vector(2, 0).projector()
    rep = hb.lemma2_matrix_check(v, v, v, v)
    assert rep.holds and trace_close(rep.product_transition, 1.0, 1e-12)
    w = hb.basis_vector(2, 1).projector()
    rep = hb.lemma2_matrix_check(v, w, v, v)
    assert rep.holds and trace_close(rep.product_transition, 0.0, 1e-12)


def test_matrix_lemma2_random_quadruples():
    rng = rng_for(7)
    for dim in (2, 3, 4):
        for _ in range(100):
            ps = [hb.random_rank1_projection(rng, dim) for _ in range(4)]
            rep = hb.lemma2_matrix_check(*ps, tol=1e-9)
            assert rep.holds and rep.residual <= 1e-9


# ---------------------------------------------------------------------------
# unitary cloners and the witness
# ---------------------------------------------------------------------------

def test_identity_clones_blank_on_itself():
    f = hb.basis_vector(2, 0)
    U = hb.UnitaryOperator(np.eye(4))
    assert hb.test_unitary_cloner(U, [f], f)


def test_basis_copier_clones_computational_basis():
    for dim in (2, 3):
        U = hb.basis_copy_unitary(dim)
        C = [hb.basis_vector(dim, i) for i in range(dim)]
        assert hb.test_unitary_cloner(U, C, hb.basis_vector(dim, 0))


def test_basis_copier_matches_explicit_matrix():
    # oracle: the 4x4 permutation sending |10> -> |11> and |11> -> |10>
    expected = np.eye(4)[:, [0, 1, 3, 2]]
    assert np.allclose(hb.basis_copy_unitary(2).matrix, expected)


def test_no_unitary_clones_overlapping_pair():
    rng = rng_for(8)
    zero = hb.basis_vector(2, 0)
    plus = hb.PureVector(np.array([1, 1]) / np.sqrt(2))
    assert not hb.test_unitary_cloner(hb.basis_copy_unitary(2), [zero, plus], zero)
    for _ in range(25):
        U = hb.random_unitary(rng, 4)
        assert not hb.test_unitary_cloner(U, [zero, plus], zero)


def test_cloner_existence_implies_cloneable_witnesses():
    # contrapositive of the impossibility statement as a property
    rng = rng_for(9)
    for _ in range(40):
        dim = int(rng.integers(2, 4))
        U = hb.random_unitary(rng, dim * dim)
        C = [hb.random_unit_vector(rng, dim) for _ in range(2)]
        f = hb.random_unit_vector(rng, dim)
        if hb.test_unitary_cloner(U, C, f):
            rep = hb.no_cloning_witness(C[0], C[1])
            assert rep.cloneable


def test_witness_examples():
    zero, one = hb.basis_vector(2, 0), hb.basis_vector(2, 1)
    plus = hb.PureVector(np.array([1, 1]) / np.sqrt(2))
    assert hb.no_cloning_witness(zero, one).cloneable
    assert hb.no_cloning_witness(zero, zero).cloneable
    rep = hb.no_cloning_witness(zero, plus)
    assert not rep.cloneable
    assert trace_close(rep.overlap, 0.5, 1e-12)
    assert trace_close(rep.squared, 0.25, 1e-12)
    assert rep.notes  # the dimension-2 caveat is surfaced


@given(st.integers(0, 2 ** 16 - 1))
@settings(max_examples=60, deadline=None)
def test_witness_cloneable_iff_extreme_overlap(seed):
    rng = rng_for(seed)
    dim = int(rng.integers(2, 5))
    xi1 = hb.random_unit_vector(rng, dim)
    xi2 = hb.random_unit_vector(rng, dim)
    rep = hb.no_cloning_witness(xi1, xi2)
    assert 0.0 <= rep.overlap <= 1.0 + 1e-12
    assert rep.cloneable == (min(rep.overlap, abs(rep.overlap - 1)) <= 1e-9)
    assert trace_close(rep.contradiction, abs(rep.overlap - rep.squared), 1e-12)


def test_dimension_mismatch_raised():
    with pytest.raises(DimensionMismatch):
        hb.atom_transition(hb.basis_vector(2, 0),
                           hb.ProjectionOperator(np.diag([1, 0, 0])))
    with pytest.raises(DimensionMismatch):
        hb.test_unitary_cloner(hb.UnitaryOperator(np.eye(4)),
                               [hb.basis_vector(3, 0)], hb.basis_vector(3, 0))
