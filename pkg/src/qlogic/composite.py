"""Two embedded copies of a factor logic inside an ambient logic.

Carries the two injections, the verification of the compatibility
condition on their images and of the atomicity condition on embedded
atom meets, the Boolean product construction, and the mechanical checks
of the product identity for transitions and of the restriction
equivalence for atomic states.
"""

from __future__ import annotations

from dataclasses import dataclass

from .builders import boolean_algebra
from .compat import mutually_compatible, DEFAULT_NODE_BUDGET
from .core import FiniteLogic, validate_logic
from .errors import (
    LemmaViolated,
    LogicInputError,
    NoInfimum,
    NotBoolean,
    NotInjective,
    PreconditionFailed,
)
from .morphisms import Morphism, dual_state, validate_morphism
from .states import (
    atomic_state,
    check_condition_F,
    check_condition_G,
    check_condition_H,
    transition_probability,
)


@dataclass
class CompositeLogic:
    """A factor logic E with two injections into an ambient logic L.

    ``checked_compat`` and ``checked_atom_meets`` record the verification
    state of the two structural conditions: "holds", "fails" or
    "unchecked".
    """

    factor: FiniteLogic
    ambient: FiniteLogic
    pi1: Morphism
    pi2: Morphism
    checked_compat: str = "unchecked"
    checked_atom_meets: str = "unchecked"

    def to_dict(self, factor_ref=None, ambient_ref=None) -> dict:
        return {
            "factor": factor_ref if factor_ref is not None
            else self.factor.describe().to_dict(),
            "ambient": ambient_ref if ambient_ref is not None
            else self.ambient.describe().to_dict(),
            "pi1": list(self.pi1.map),
            "pi2": list(self.pi2.map),
        }


def make_composite(factor: FiniteLogic, ambient: FiniteLogic,
                   map1, map2) -> CompositeLogic:
    pi1 = validate_morphism(factor, ambient, map1)
    pi2 = validate_morphism(factor, ambient, map2)
    for name, pi in (("pi1", pi1), ("pi2", pi2)):
        if not pi.is_injective:
            raise NotInjective(f"{name} is not injective")
    return CompositeLogic(factor, ambient, pi1, pi2)


# ---------------------------------------------------------------------------
# Boolean product construction
# ---------------------------------------------------------------------------

def boolean_product(factor: FiniteLogic) -> CompositeLogic:
    """The product algebra of a Boolean logic with itself.

    Ambient atoms are pairs of factor atoms; the first injection sends e
    to e x 1, the second to 1 x e.  Both structural conditions are
    verified on the result, not assumed.
    """
    if not factor.is_boolean:
        raise NotBoolean("boolean_product needs a Boolean factor")
    atoms = factor.atoms
    k = len(atoms)
    if k * k > 12:
        raise LogicInputError(
            f"product would have 2^{k * k} elements; the dense order matrix "
            "supports factors with at most 3 atoms"
        )
    names = [
        f"({factor.labels[a]},{factor.labels[b]})" for a in atoms for b in atoms
    ]
    ambient = validate_logic(boolean_algebra(k * k, atom_names=names),
                             max_elements=1 << (k * k))
    mask_index = ambient._mask_index

    def row_mask(e):
        m = 0
        for i, a in enumerate(atoms):
            if factor.leq[a, e]:
                for j in range(k):
                    m |= 1 << (i * k + j)
        return m

    def col_mask(e):
        m = 0
        for j, b in enumerate(atoms):
            if factor.leq[b, e]:
                for i in range(k):
                    m |= 1 << (i * k + j)
        return m

    map1 = [mask_index[row_mask(e)] for e in range(factor.n)]
    map2 = [mask_index[col_mask(e)] for e in range(factor.n)]
    comp = make_composite(factor, ambient, map1, map2)
    check_condition_I(comp)
    check_condition_J(comp)
    if comp.checked_compat != "holds" or comp.checked_atom_meets != "holds":
        raise PreconditionFailed(
            "product construction failed its own structural checks"
        )
    return comp


# ---------------------------------------------------------------------------
# conditions (I) and (J)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompatImagesReport:
    holds: bool


@dataclass(frozen=True)
class AtomMeetsReport:
    holds: bool
    failing_pair: tuple | None = None  # (e, f) factor atoms
    meet: int | None = None            # ambient element, None if no infimum


def check_condition_I(comp: CompositeLogic,
                      budget=DEFAULT_NODE_BUDGET) -> CompatImagesReport:
    """Are the two embedded copies compatible with each other?"""
    ok = mutually_compatible(
        comp.ambient, set(comp.pi1.map), set(comp.pi2.map), budget
    )
    comp.checked_compat = "holds" if ok else "fails"
    return CompatImagesReport(holds=ok)


def check_condition_J(comp: CompositeLogic) -> AtomMeetsReport:
    """Is every meet of embedded factor atoms an ambient atom?"""
    ambient = comp.ambient
    for e in comp.factor.atoms:
        for f in comp.factor.atoms:
            m = ambient.inf_or_none(comp.pi1.map[e], comp.pi2.map[f])
            if m is None or not ambient.is_atom(m):
                comp.checked_atom_meets = "fails"
                return AtomMeetsReport(holds=False, failing_pair=(e, f), meet=m)
    comp.checked_atom_meets = "holds"
    return AtomMeetsReport(holds=True)


def meet_embed(comp: CompositeLogic, e: int, f: int) -> int:
    """The ambient infimum of pi1(e) and pi2(f)."""
    m = comp.ambient.inf_or_none(comp.pi1.map[e], comp.pi2.map[f])
    if m is None:
        raise NoInfimum(
            f"pi1({comp.factor.labels[e]!r}) ^ pi2({comp.factor.labels[f]!r}) "
            "does not exist in the ambient logic"
        )
    return m


# ---------------------------------------------------------------------------
# state conditions on a logic, cached
# ---------------------------------------------------------------------------

def state_condition_reports(logic: FiniteLogic):
    """(F), (G), (H) reports for a logic, computed once and cached."""
    return (
        check_condition_F(logic),
        check_condition_G(logic),
        check_condition_H(logic),
    )


def require_state_conditions(logic: FiniteLogic, context: str) -> None:
    f, g, h = state_condition_reports(logic)
    missing = [name for name, rep in (("F", f), ("G", g), ("H", h))
               if not rep.holds]
    if missing:
        raise PreconditionFailed(
            f"{context} needs conditions {', '.join(missing)} to hold"
        )


# ---------------------------------------------------------------------------
# Lemma 2: transitions multiply across the two copies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lemma2Report:
    holds: bool
    tuple_: tuple               # (e1, e2, f1, f2)
    factor_values: tuple        # (P(e2|e1), P(f2|f1))
    ambient_value: object       # P(meet2 | meet1)


def check_lemma2(comp: CompositeLogic, e1: int, e2: int,
                 f1: int, f2: int) -> Lemma2Report:
    if comp.checked_compat == "unchecked":
        check_condition_I(comp)
    if comp.checked_compat != "holds":
        raise PreconditionFailed(
            "the product identity is only proved under mutual compatibility "
            "of the embedded copies"
        )
    factor = comp.factor
    se = transition_probability(factor, e2, e1)
    sf = transition_probability(factor, f2, f1)
    if not (se.exists and sf.exists):
        raise PreconditionFailed(
            "both factor transitions must exist for the product identity"
        )
    m1 = meet_embed(comp, e1, f1)
    m2 = meet_embed(comp, e2, f2)
    lhs = transition_probability(comp.ambient, m2, m1)
    product = se.value * sf.value
    if not lhs.exists or lhs.value != product:
        raise LemmaViolated(
            f"product identity fails: ambient transition "
            f"{'undefined' if not lhs.exists else lhs.value} vs "
            f"{se.value} * {sf.value} = {product}",
            details={"tuple": (e1, e2, f1, f2), "ambient": lhs,
                     "factors": (se, sf)},
        )
    return Lemma2Report(True, (e1, e2, f1, f2), (se.value, sf.value), lhs.value)


# ---------------------------------------------------------------------------
# Lemma 3: restrictions are atomic iff the joint state is atomic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lemma3Report:
    holds: bool
    atoms: tuple                 # (e, f)
    restrictions_atomic: bool    # rho o pi1 = P_e and rho o pi2 = P_f
    joint_atomic: bool           # rho = P_(pi1 e ^ pi2 f)


def check_lemma3(comp: CompositeLogic, e: int, f: int, rho) -> Lemma3Report:
    if comp.checked_compat == "unchecked":
        check_condition_I(comp)
    if comp.checked_atom_meets == "unchecked":
        check_condition_J(comp)
    if comp.checked_compat != "holds" or comp.checked_atom_meets != "holds":
        raise PreconditionFailed(
            "restriction equivalence requires both structural conditions"
        )
    require_state_conditions(comp.ambient, "the restriction equivalence")
    factor = comp.factor
    for x in (e, f):
        if not factor.is_atom(x):
            raise PreconditionFailed(f"{factor.labels[x]!r} is not an atom")
    lhs = (dual_state(comp.pi1, rho) == atomic_state(factor, e)
           and dual_state(comp.pi2, rho) == atomic_state(factor, f))
    joint = atomic_state(comp.ambient, meet_embed(comp, e, f))
    rhs = rho == joint
    if lhs != rhs:
        raise LemmaViolated(
            f"restriction equivalence fails for atoms "
            f"({factor.labels[e]!r}, {factor.labels[f]!r}): "
            f"restrictions atomic = {lhs}, joint atomic = {rhs}",
            details={"atoms": (e, f), "state": rho},
        )
    return Lemma3Report(True, (e, f), lhs, rhs)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def composite_from_dict(data: dict, load_logic_fn) -> CompositeLogic:
    """Build a composite from its file form.

    ``load_logic_fn`` resolves a path string or inline object to a
    validated FiniteLogic.
    """
    try:
        factor = load_logic_fn(data["factor"])
        ambient = load_logic_fn(data["ambient"])
        map1 = [int(x) for x in data["pi1"]]
        map2 = [int(x) for x in data["pi2"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise LogicInputError(f"malformed composite description: {exc}") from exc
    return make_composite(factor, ambient, map1, map2)
