"""Decision procedures for pervasiveness, weak pervasiveness, fordability and (P).

Every question of the form "is there x > 0 with i(x) below some element of the
cover" reduces to a support system. For a set T of cover coordinates:

    F x >= 0,   (F x)_j = 0 for j not in T,   sum_{j in T} (F x)_j >= 1.

Its solutions are the positive x with supp(F x) inside T, normalized; any
solution scales below an element whose coordinates on T are strictly positive.
F maps K into the nonnegative orthant without cancellation, so the system is
feasible exactly when some extreme ray r has supp(F r) inside T. The LP is
still solved wherever a verdict needs a certificate.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from riesz.core.arrangement import positive_supports
from riesz.core.cover import (
    FunctionalRepresentation,
    Positivity,
    positivity_oracle,
    riesz_element,
)
from riesz.core.errors import CapacityError, PreconditionError
from riesz.core.lp import LPOutcome, LPStatus, feasible_point
from riesz.core.model import Comparison, compare, is_positive
from riesz.core.rational import (
    QVector,
    add,
    dot,
    express,
    neg,
    nullspace,
    positive_part,
    primitive,
    qvector,
    scale,
    support,
    vmin,
    zeros,
)
from riesz.core.report import (
    DecisionReport,
    FarkasCertificate,
    FordabilityWitness,
    MeetWitness,
    PairWitness,
    PervasivenessWitness,
    Property,
    measured,
    support_label,
)
from riesz.utils.config import Limits


logger = logging.getLogger(__name__)

Support = frozenset[int]


def support_key(s: Support) -> tuple[int, tuple[int, ...]]:
    """Canonical order of supports: by size, then lexicographically."""
    return len(s), tuple(sorted(s))


class SupportFamily:
    """Supports of F K: ray supports and their closures, with realizers.

    Closures are computed on first use and capped at ``limits.max_closure``.
    """

    def __init__(self, rep: FunctionalRepresentation, limits: Limits = Limits()):
        self.rep = rep
        self.limits = limits
        self.rays = tuple(rep.model.cone.rays)
        self.ray_supports = tuple(rep.support(r) for r in self.rays)

    def contains_ray_support(self, t: Support) -> int | None:
        """Index of the first ray whose support lies inside ``t``."""
        return next((i for i, s in enumerate(self.ray_supports) if s <= t), None)

    @cached_property
    def union_closure(self) -> dict[Support, QVector]:
        """Every union of ray supports, realized by the sum of its rays."""
        found: dict[Support, QVector] = {}
        for s, r in zip(self.ray_supports, self.rays):
            additions = {s: r}
            for member, realizer in found.items():
                merged = member | s
                if merged not in found and merged not in additions:
                    additions[merged] = add(realizer, r)
            found.update({k: v for k, v in additions.items() if k not in found})
            if len(found) > self.limits.max_closure:
                raise CapacityError("support closure", len(found), self.limits.max_closure)
        return dict(sorted(found.items(), key=lambda item: support_key(item[0])))

    @cached_property
    def intersection_closure(self) -> dict[Support, tuple[int, ...]]:
        """Nonempty intersections of ray supports, with the rays intersected.

        Intersections of unions are unions of these, so this family carries
        every support of a finite meet of positive elements.
        """
        found: dict[Support, tuple[int, ...]] = {}
        for i, s in enumerate(self.ray_supports):
            additions: dict[Support, tuple[int, ...]] = {}
            if s not in found:
                additions[s] = (i,)
            for member, rays in found.items():
                meet = member & s
                if meet and meet not in found and meet not in additions:
                    additions[meet] = rays + (i,)
            found.update(additions)
            if len(found) > self.limits.max_closure:
                raise CapacityError("support closure", len(found), self.limits.max_closure)
        return dict(sorted(found.items(), key=lambda item: support_key(item[0])))


def support_family(rep: FunctionalRepresentation, limits: Limits = Limits()) -> SupportFamily:
    return SupportFamily(rep, limits)


def support_system(rep: FunctionalRepresentation, t: Support) -> tuple[list[QVector], list[Fraction]]:
    """Rows and right-hand sides of the support system for ``t``."""
    rows: list[QVector] = list(rep.rows)
    rhs: list[Fraction] = [Fraction(0)] * rep.m
    for j in range(rep.m):
        if j not in t:
            rows.append(neg(rep.rows[j]))
            rhs.append(Fraction(0))
    total = zeros(rep.model.dim)
    for j in sorted(t):
        total = add(total, rep.rows[j])
    rows.append(total)
    rhs.append(Fraction(1))
    return rows, rhs


def solve_support_system(rep: FunctionalRepresentation, t: Support) -> LPOutcome:
    rows, rhs = support_system(rep, t)
    return feasible_point(rows, rhs, rep.model.dim)


def scale_below(rep: FunctionalRepresentation, x: QVector, bound: Sequence[Fraction]) -> QVector:
    """Scale x > 0 so that F x <= bound, tight on some coordinate."""
    values = rep.apply(x)
    factor = min(bound[j] / v for j, v in enumerate(values) if v > 0)
    return scale(factor, x)


class CheckStatus(str, Enum):
    WITNESS = "witness"
    FAILURE = "failure"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CheckResult:
    status: CheckStatus
    element: QVector | None = None
    certificate: FarkasCertificate | None = None
    support: Support = frozenset()

    @property
    def succeeded(self) -> bool:
        return self.status is CheckStatus.WITNESS


def _below(rep: FunctionalRepresentation, bound: Sequence[Fraction]) -> CheckResult:
    """x > 0 with F x <= bound, for a bound >= 0."""
    t = support(bound)
    outcome = solve_support_system(rep, t)
    if outcome.status is LPStatus.INFEASIBLE:
        return CheckResult(CheckStatus.FAILURE, certificate=FarkasCertificate.from_outcome(outcome), support=t)
    return CheckResult(CheckStatus.WITNESS, element=scale_below(rep, outcome.primal, bound), support=t)


@measured
def decide_pervasive(rep: FunctionalRepresentation, limits: Limits = Limits()) -> DecisionReport:
    """For every b with i(b) not <= 0 there is x with 0 < i(x) <= i(b) v 0.

    Realizable positive supports come from positive_supports, the sign-cell
    DFS with its branching cut to two ways (> 0 or <= 0) and pruned: a subtree
    whose positive set already holds a ray support is feasible and is skipped.
    The first surviving support is the witness.
    """
    family = support_family(rep, limits)

    def covered(chosen: Support) -> bool:
        return family.contains_ray_support(chosen) is not None

    for chosen, b in positive_supports(rep.matrix, covered, limits.max_functionals, limits.max_cells):
        outcome = solve_support_system(rep, chosen)
        if outcome.status is not LPStatus.INFEASIBLE:
            continue
        logger.info("not pervasive: positive support %s", support_label(chosen, rep.labels))
        witness = PervasivenessWitness(b, chosen, FarkasCertificate.from_outcome(outcome))
        return DecisionReport(
            Property.PERVASIVE,
            False,
            witness=witness,
            certificate={"F_b": rep.apply(b), "positive_support_labels": support_label(chosen, rep.labels)},
        )
    return DecisionReport(
        Property.PERVASIVE,
        True,
        certificate={"ray_supports": [sorted(s) for s in family.ray_supports]},
    )


def thm7_witness_check(rep: FunctionalRepresentation, b: Sequence[Fraction]) -> CheckResult:
    """x with 0 < i(x) <= i(b) v 0, or a certificate that there is none."""
    b = qvector(b)
    if compare(rep.model, b, zeros(rep.model.dim)) in (Comparison.LESS, Comparison.EQUAL):
        raise PreconditionError("b <= 0")
    return _below(rep, positive_part(rep.apply(b)))


def theorem5_check(
    rep: FunctionalRepresentation,
    a_set: Sequence[Sequence[Fraction]],
    b_set: Sequence[Sequence[Fraction]],
) -> CheckResult:
    """x > 0 with A^u ⊆ (x + B)^u, i.e. F x <= max F(A) - max F(B)."""
    verdict = positivity_oracle(rep, a_set, b_set)
    if verdict is not Positivity.STRICTLY_POSITIVE:
        raise PreconditionError(f"A^u is not strictly inside B^u (oracle: {verdict.value})")
    return _below(rep, riesz_element(rep, a_set, b_set))


@measured
def decide_weakly_pervasive(rep: FunctionalRepresentation, limits: Limits = Limits()) -> DecisionReport:
    """For positive b1, b2 with i(b1) ^ i(b2) != 0 there is 0 < i(x) <= i(b1) ^ i(b2).

    Intersections of unions of ray supports are unions of pairwise ray
    intersections, so pairs of extreme rays suffice.
    """
    family = support_family(rep, limits)
    for i, j in combinations(range(len(family.rays)), 2):
        meet = family.ray_supports[i] & family.ray_supports[j]
        if not meet or family.contains_ray_support(meet) is not None:
            continue
        outcome = solve_support_system(rep, meet)
        if outcome.status is not LPStatus.INFEASIBLE:
            continue
        b1, b2 = family.rays[i], family.rays[j]
        logger.info("not weakly pervasive: rays %d, %d meet on %s", i, j, support_label(meet, rep.labels))
        witness = PairWitness(b1, b2, meet, FarkasCertificate.from_outcome(outcome))
        return DecisionReport(
            Property.WEAKLY_PERVASIVE,
            False,
            witness=witness,
            certificate={"support_labels": support_label(meet, rep.labels)},
        )
    return DecisionReport(
        Property.WEAKLY_PERVASIVE,
        True,
        certificate={"ray_supports": [sorted(s) for s in family.ray_supports]},
    )


def lemma9_witness_check(
    rep: FunctionalRepresentation, b1: Sequence[Fraction], b2: Sequence[Fraction]
) -> CheckResult:
    """x with 0 < i(x) <= i(b1) ^ i(b2); not applicable for a disjoint pair."""
    b1, b2 = qvector(b1), qvector(b2)
    for name, b in (("b1", b1), ("b2", b2)):
        if not is_positive(rep.model, b):
            raise PreconditionError(f"{name} is not > 0")
    meet = vmin([rep.apply(b1), rep.apply(b2)])
    if not support(meet):
        return CheckResult(CheckStatus.NOT_APPLICABLE)
    return _below(rep, meet)


@measured
def decide_fordable(rep: FunctionalRepresentation) -> DecisionReport:
    """Every coordinate j carries some s with supp(F s) = {j}.

    Such s exists iff f_j is not in the span of the other rows.
    """
    n = rep.model.dim
    singletons: dict[str, QVector] = {}
    for j, f in enumerate(rep.rows):
        others = [row for k, row in enumerate(rep.rows) if k != j]
        kernel = nullspace(others, n)
        separating = next((k for k in kernel if dot(f, k) != 0), None)
        if separating is not None:
            s = separating if dot(f, separating) > 0 else neg(separating)
            singletons[rep.labels[j]] = primitive(s)
            continue
        coefficients = express(f, others, n) or ()
        combination = list(coefficients)
        combination.insert(j, Fraction(0))
        logger.info("not fordable at coordinate %s", rep.labels[j])
        witness = FordabilityWitness(j, rep.labels[j], tuple(kernel), tuple(combination))
        return DecisionReport(Property.FORDABLE, False, witness=witness)
    return DecisionReport(Property.FORDABLE, True, certificate={"singletons": singletons})


@measured
def decide_property_P(rep: FunctionalRepresentation, limits: Limits = Limits()) -> DecisionReport:
    """Finite meets of positive elements with nonzero meet dominate some x > 0."""
    family = support_family(rep, limits)
    for meet, ray_indices in family.intersection_closure.items():
        if family.contains_ray_support(meet) is not None:
            continue
        outcome = solve_support_system(rep, meet)
        if outcome.status is not LPStatus.INFEASIBLE:
            continue
        elements = tuple(family.rays[i] for i in ray_indices)
        logger.info("property (P) fails on %s", support_label(meet, rep.labels))
        witness = MeetWitness(elements, meet, FarkasCertificate.from_outcome(outcome))
        return DecisionReport(
            Property.PROPERTY_P,
            False,
            witness=witness,
            certificate={"support_labels": support_label(meet, rep.labels)},
        )
    return DecisionReport(
        Property.PROPERTY_P,
        True,
        certificate={"closure_size": len(family.intersection_closure)},
    )


@dataclass(frozen=True)
class DisjointComplement:
    """{y}^d for y with the given support, and what i(X) can reach inside it."""

    support: Support
    complement: Support
    covered: Support

    @property
    def fordable(self) -> bool:
        """Some S ⊆ X has i(S)^d = {y}^d."""
        return self.covered == self.support


def disjoint_complement(rep: FunctionalRepresentation, t: Sequence[int]) -> DisjointComplement:
    """Union of supp(F s) over s in X with supp(F s) inside t."""
    t = frozenset(t)
    n = rep.model.dim
    outside = [row for j, row in enumerate(rep.rows) if j not in t]
    kernel = nullspace(outside, n)
    covered = frozenset(j for j in t if any(dot(rep.rows[j], k) != 0 for k in kernel))
    return DisjointComplement(t, frozenset(range(rep.m)) - t, covered)
