"""Cloning transformations on composite logics and their impossibility.

A cloning transformation for a set C of factor atoms (with blank atom f)
is an ambient automorphism that, on every joint state whose first
restriction is an atomic state from C and whose second restriction is
the blank atomic state, copies the first restriction onto the second.
The qualifying joint states are exactly the atomic states of the
embedded atom meets, which reduces the quantifier over all states to
finitely many evaluations; the equivalent inverse-image criterion on
those meet atoms gives a cheap pre-filter for the search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .composite import (
    CompositeLogic,
    check_condition_I,
    check_condition_J,
    meet_embed,
    require_state_conditions,
)
from .errors import (
    CertificateFailed,
    ConstructionFailed,
    InternalInvariantError,
    LogicInputError,
    NotBoolean,
    PreconditionFailed,
)
from .morphisms import (
    Automorphism,
    DEFAULT_SEARCH_BUDGET,
    _atom_extender,
    _iter_atom_perms,
    dual_state,
    iter_automorphisms,
    validate_automorphism,
)
from .states import atomic_state, transition_probability


class CloneProblem:
    """A composite logic, a set C of factor atoms to clone, a blank atom f.

    Construction verifies every precondition: C and f are atoms, both
    structural conditions hold on the composite, and the ambient logic
    passes the three state-space conditions.
    """

    def __init__(self, composite: CompositeLogic, C, f: int):
        self.composite = composite
        self.C = tuple(sorted(set(C)))
        self.f = f
        factor = composite.factor
        if not self.C:
            raise PreconditionFailed("C must be a non-empty set of atoms")
        for a in self.C + (f,):
            if not factor.is_atom(a):
                raise PreconditionFailed(f"{factor.labels[a]!r} is not an atom")
        if composite.checked_compat == "unchecked":
            check_condition_I(composite)
        if composite.checked_atom_meets == "unchecked":
            check_condition_J(composite)
        if composite.checked_compat != "holds":
            raise PreconditionFailed("embedded copies are not mutually compatible")
        if composite.checked_atom_meets != "holds":
            raise PreconditionFailed("embedded atom meets are not all atoms")
        require_state_conditions(composite.ambient, "cloning analysis")

        ambient = composite.ambient
        # meet atoms carrying the qualifying joint states
        self.input_atom = {e: meet_embed(composite, e, f) for e in self.C}
        self.copied_atom = {e: meet_embed(composite, e, e) for e in self.C}
        self.joint_state = {
            e: atomic_state(ambient, self.input_atom[e]) for e in self.C
        }
        self.factor_state = {e: atomic_state(factor, e) for e in self.C}
        self.blank_state = atomic_state(factor, f)


def is_cloning_transformation(problem: CloneProblem, T: Automorphism,
                              method: str = "atomic") -> bool:
    """Does the automorphism satisfy the cloning definition?

    method "atomic" evaluates the definition on the qualifying atomic
    states; method "vertices" instead sweeps the ambient polytope
    vertices for qualifying states (slow cross-validation path).  Both
    are compared against the inverse-image criterion on meet atoms; a
    divergence would falsify the reduction and aborts.
    """
    comp = problem.composite
    if T.source is not comp.ambient:
        raise LogicInputError("automorphism does not act on the ambient logic")
    if method == "atomic":
        definition_ok = _definition_on_atomic_states(problem, T)
    elif method == "vertices":
        definition_ok = _definition_on_vertices(problem, T)
    else:
        raise ValueError(f"unknown method {method!r}")
    grid_ok = all(
        T.inverse[problem.input_atom[e]] == problem.copied_atom[e]
        for e in problem.C
    )
    if definition_ok != grid_ok:
        raise InternalInvariantError(
            f"cloning criteria diverge (definition={definition_ok}, "
            f"inverse-image={grid_ok}) for map {T.map!r}"
        )
    return definition_ok


def _definition_on_atomic_states(problem: CloneProblem, T: Automorphism) -> bool:
    comp = problem.composite
    for e in problem.C:
        rho = problem.joint_state[e]
        pulled = dual_state(T, rho)
        want = problem.factor_state[e]
        if dual_state(comp.pi1, pulled) != want:
            return False
        if dual_state(comp.pi2, pulled) != want:
            return False
    return True


def _definition_on_vertices(problem: CloneProblem, T: Automorphism) -> bool:
    from .states import state_polytope

    comp = problem.composite
    targets = set(problem.factor_state.values())
    poly = state_polytope(comp.ambient)
    for rho in poly.vertices:
        first = dual_state(comp.pi1, rho)
        if first not in targets:
            continue
        if dual_state(comp.pi2, rho) != problem.blank_state:
            continue
        pulled = dual_state(T, rho)
        if dual_state(comp.pi1, pulled) != first:
            return False
        if dual_state(comp.pi2, pulled) != first:
            return False
    return True


# ---------------------------------------------------------------------------
# the classical cloner on Boolean ambients
# ---------------------------------------------------------------------------

def classical_cloner(problem: CloneProblem) -> Automorphism:
    """Swap each input meet atom with its copied meet atom, fix the rest.

    Extends the atom transposition to the whole Boolean ambient through
    the atom masks and verifies both the automorphism property and the
    cloning definition before returning.
    """
    comp = problem.composite
    ambient = comp.ambient
    if not ambient.is_boolean:
        raise NotBoolean("the explicit cloner construction needs a Boolean ambient")
    factor = comp.factor
    for i, e1 in enumerate(problem.C):
        for e2 in problem.C[i + 1:]:
            if not factor.orthogonal(e1, e2):
                raise PreconditionFailed(
                    f"atoms {factor.labels[e1]!r}, {factor.labels[e2]!r} "
                    "are not orthogonal"
                )
    pos = {a: i for i, a in enumerate(ambient.atoms)}
    sigma = list(range(len(ambient.atoms)))
    for e in problem.C:
        i, j = pos[problem.copied_atom[e]], pos[problem.input_atom[e]]
        sigma[i], sigma[j] = sigma[j], sigma[i]
    auto = _atom_extender(ambient).extend(tuple(sigma))
    if auto is None:
        raise ConstructionFailed("atom transposition does not extend")
    try:
        auto = validate_automorphism(ambient, auto.map)
    except Exception as exc:
        raise ConstructionFailed(f"extension is not an automorphism: {exc}") from exc
    if not is_cloning_transformation(problem, auto):
        raise ConstructionFailed(
            "constructed transposition does not satisfy the cloning definition"
        )
    return auto


# ---------------------------------------------------------------------------
# exhaustive search and the impossibility certificate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CloneReport:
    cloner: Automorphism | None
    pairwise: dict                 # (e1, e2) -> TransitionProbability of P(e2|e1)
    orthogonal: bool
    theorem_consistent: bool       # cloner found implies pairwise orthogonal
    scanned: int = 0               # automorphism candidates examined


def _pairwise_table(problem: CloneProblem) -> dict:
    factor = problem.composite.factor
    table = {}
    for e1 in problem.C:
        for e2 in problem.C:
            table[(e1, e2)] = transition_probability(factor, e2, e1)
    return table


def clone_search(problem: CloneProblem,
                 budget=DEFAULT_SEARCH_BUDGET) -> CloneReport:
    """Filter the full ambient automorphism group for cloning maps.

    Candidates failing the inverse-image pre-filter cannot satisfy the
    definition (the two criteria agree; this is asserted on every
    candidate that reaches the full check), so the stream only
    materializes automorphisms whose meet atoms line up.
    """
    comp = problem.composite
    ambient = comp.ambient
    cloner = None
    scanned = 0
    if ambient.order_is_mask_inclusion:
        ext = _atom_extender(ambient)
        pos = {a: i for i, a in enumerate(ambient.atoms)}
        needed = [(pos[problem.copied_atom[e]], pos[problem.input_atom[e]])
                  for e in problem.C]
        for sigma in _iter_atom_perms(ambient, budget):
            scanned += 1
            if any(sigma[i] != j for i, j in needed):
                continue
            auto = ext.extend(sigma)
            if auto is None:
                continue
            if is_cloning_transformation(problem, auto):
                cloner = auto
                break
    else:
        for auto in iter_automorphisms(ambient, budget):
            scanned += 1
            if any(auto.map[problem.copied_atom[e]] != problem.input_atom[e]
                   for e in problem.C):
                continue
            if is_cloning_transformation(problem, auto):
                cloner = auto
                break

    factor = comp.factor
    orthogonal = all(
        factor.orthogonal(e1, e2)
        for i, e1 in enumerate(problem.C) for e2 in problem.C[i + 1:]
    )
    return CloneReport(
        cloner=cloner,
        pairwise=_pairwise_table(problem),
        orthogonal=orthogonal,
        theorem_consistent=(cloner is None) or orthogonal,
        scanned=scanned,
    )


@dataclass(frozen=True)
class CertificatePair:
    pair: tuple            # (e1, e2)
    transition: object     # P(e2|e1) in the factor
    direct: object         # ambient transition between input meet atoms
    pulled_back: object    # ambient transition between copied meet atoms
    idempotent: bool       # transition in {0, 1}


@dataclass(frozen=True)
class TheoremCertificate:
    holds: bool
    pairs: tuple
    cloner: Automorphism


def theorem1_certificate(problem: CloneProblem,
                         T: Automorphism | None = None,
                         budget=DEFAULT_SEARCH_BUDGET) -> TheoremCertificate:
    """Replay the impossibility argument numerically for a cloner.

    For every pair in C the ambient transition between the input meet
    atoms is computed twice: directly (which multiplies out to the
    factor transition) and through the cloner's inverse image (which
    squares it).  Their equality forces every pairwise transition into
    {0, 1}, i.e. the atoms of C are orthogonal or identical.
    """
    if T is None:
        T = clone_search(problem, budget).cloner
    if T is None:
        raise PreconditionFailed("no cloning transformation supplied or found")
    if not is_cloning_transformation(problem, T):
        raise PreconditionFailed("the supplied automorphism is not a cloner")
    comp = problem.composite
    factor, ambient = comp.factor, comp.ambient
    rows = []
    for e1 in problem.C:
        for e2 in problem.C:
            s = transition_probability(factor, e2, e1)
            if not s.exists:
                raise CertificateFailed(
                    f"transition between atoms {factor.labels[e1]!r}, "
                    f"{factor.labels[e2]!r} does not exist",
                    details={"pair": (e1, e2)},
                )
            for e in (e1, e2):
                if T.inverse[problem.input_atom[e]] != problem.copied_atom[e]:
                    raise CertificateFailed(
                        "cloner does not map the copied meet atom to the "
                        f"input meet atom for {factor.labels[e]!r}",
                        details={"atom": e},
                    )
            direct = transition_probability(
                ambient, problem.input_atom[e2], problem.input_atom[e1]
            )
            pulled = transition_probability(
                ambient, problem.copied_atom[e2], problem.copied_atom[e1]
            )
            ok = (direct.exists and pulled.exists
                  and direct.value == s.value
                  and pulled.value == s.value * s.value
                  and direct.value == pulled.value)
            if not ok:
                raise CertificateFailed(
                    f"certificate mismatch for pair ({factor.labels[e1]!r}, "
                    f"{factor.labels[e2]!r}): transition {s.value}, direct "
                    f"{direct}, pulled back {pulled}",
                    details={"pair": (e1, e2), "transition": s,
                             "direct": direct, "pulled": pulled},
                )
            rows.append(CertificatePair(
                pair=(e1, e2), transition=s.value,
                direct=direct.value, pulled_back=pulled.value,
                idempotent=s.value in (0, 1),
            ))
            if not rows[-1].idempotent:
                raise CertificateFailed(
                    f"transition {s.value} is not idempotent although the "
                    "certificate chain closed",
                    details={"pair": (e1, e2)},
                )
    return TheoremCertificate(holds=True, pairs=tuple(rows), cloner=T)
