"""Functional representations: the cover x -> F x in R^m, ordered coordinatewise.

The canonical representation takes the rows of F to be the extreme rays of the
dual cone, i.e. the facet normals of K. Order density is checked through the
gap function

    gamma_j(y) = min{(F d)_j - y_j : F d >= y},

which is nonnegative, positively homogeneous and subadditive in y, so it
vanishes everywhere as soon as it vanishes at every +e_k and -e_k. Several of
those 2m^2 values are settled in closed form:

  - y = -e_k, j != k: d = 0 attains (F d)_j = 0
  - y = +e_k, j = k:  a majorizing d0 with F d0 >= 1, scaled by 1/f_k(d0)

and one LP point certifies every coordinate j at which it is tight.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from riesz.core.cone import dual_cone, extreme_rays
from riesz.core.errors import (
    ArgumentError,
    CapacityError,
    CoverConstructionError,
    InvariantViolation,
    PreconditionError,
)
from riesz.core.lp import LPOutcome, LPStatus, Sense, feasible_point, solve_system
from riesz.core.model import PreRieszModel, upper_set
from riesz.core.polyhedron import Relation, includes, polyhedron_relation
from riesz.core.rational import (
    QMatrix,
    QVector,
    add,
    check_dim,
    dot,
    is_zero,
    neg,
    primitive,
    qvector,
    scale,
    sub,
    support,
    unit,
    vmax,
    zeros,
)
from riesz.utils.config import Limits


logger = logging.getLogger(__name__)

CoverElement = QVector


@dataclass(frozen=True)
class FunctionalRepresentation:
    """The embedding i(x) = F x of a model into R^m."""

    model: PreRieszModel
    matrix: QMatrix
    labels: tuple[str, ...]
    kind: str = "canonical"

    @property
    def m(self) -> int:
        return self.matrix.n_rows

    @property
    def rows(self) -> tuple[QVector, ...]:
        return self.matrix.rows

    def apply(self, x: Sequence[Fraction]) -> CoverElement:
        return self.matrix.apply(x)

    def support(self, x: Sequence[Fraction]) -> frozenset[int]:
        return support(self.apply(x))


class Positivity(str, Enum):
    ZERO = "zero"
    STRICTLY_POSITIVE = "strictly_positive"
    NONNEGATIVE = "nonnegative"
    NOT_NONNEGATIVE = "not_nonnegative"


@dataclass(frozen=True)
class DensityCertificate:
    """A point d with F d >= sign * e_k that is tight at every listed j."""

    k: int
    sign: int
    point: QVector
    coordinates: tuple[int, ...]


@dataclass(frozen=True)
class CoverVerification:
    bipositive: bool
    majorizing: bool
    order_dense: bool
    majorizing_point: QVector | None = None
    density: tuple[DensityCertificate, ...] = ()
    failure: str | None = None
    failing_pair: tuple[int, int, int] | None = None
    failing_outcome: LPOutcome | None = None

    @property
    def ok(self) -> bool:
        return self.bipositive and self.majorizing and self.order_dense


def _canonical_labels(model: PreRieszModel, rows: Sequence[QVector]) -> tuple[str, ...]:
    subspace = model.subspace
    if subspace is None:
        return tuple(f"y{j + 1}" for j in range(len(rows)))
    evaluation = subspace.evaluation_rows()
    labels = []
    for j, row in enumerate(rows):
        names = [
            subspace.label_of_ambient(i)
            for i, e in enumerate(evaluation)
            if not is_zero(e) and primitive(e) == row
        ]
        labels.append(",".join(names) if names else f"y{j + 1}")
    return tuple(labels)


def functional_representation(
    model: PreRieszModel, limits: Limits = Limits(), verify: bool = True
) -> FunctionalRepresentation:
    """The canonical cover: rows are the extreme rays of K*, in canonical order."""
    rows = extreme_rays(dual_cone(model.cone))
    if len(rows) > limits.max_functionals:
        raise CapacityError("functionals", len(rows), limits.max_functionals)
    rep = FunctionalRepresentation(
        model, QMatrix(tuple(rows), model.dim), _canonical_labels(model, rows)
    )
    if verify:
        verification = verify_cover(rep)
        if not verification.ok:
            raise CoverConstructionError(
                f"canonical cover of {model.name or 'model'} failed: {verification.failure}",
                verification,
            )
    logger.info("canonical cover: m=%d", rep.m)
    return rep


def ambient_representation(model: PreRieszModel) -> FunctionalRepresentation:
    """The coordinate embedding of a subspace model into its ambient space."""
    subspace = model.subspace
    if subspace is None:
        raise ArgumentError("ambient representation needs a subspace model")
    rows, labels = [], []
    for i, e in enumerate(subspace.evaluation_rows()):
        if not is_zero(e):
            rows.append(e)
            labels.append(subspace.label_of_ambient(i))
    return FunctionalRepresentation(model, QMatrix(tuple(rows), model.dim), tuple(labels), kind="ambient")


def manual_representation(
    model: PreRieszModel, rows: Sequence[Sequence[object]], labels: Sequence[str] | None = None
) -> FunctionalRepresentation:
    matrix = QMatrix.from_rows(rows, model.dim)
    names = tuple(labels) if labels else tuple(f"y{j + 1}" for j in range(matrix.n_rows))
    return FunctionalRepresentation(model, matrix, names, kind="manual")


def _check_bipositive(rep: FunctionalRepresentation) -> str | None:
    cone = rep.model.cone
    for r in cone.rays:
        if any(v < 0 for v in rep.apply(r)):
            return f"ray {r} of K is not mapped into the positive cone"
    present = set(rep.rows)
    m = rep.m
    for g in cone.normals:
        if g in present:
            continue
        # g must be a nonnegative combination of the rows of F
        rows = [unit(m, i) for i in range(m)]
        rhs = [Fraction(0)] * m
        for c in range(rep.model.dim):
            column = tuple(row[c] for row in rep.rows)
            rows += [column, neg(column)]
            rhs += [g[c], -g[c]]
        if feasible_point(rows, rhs, m).status is LPStatus.INFEASIBLE:
            return f"F x >= 0 does not imply <{g}, x> >= 0"
    return None


def verify_cover(rep: FunctionalRepresentation) -> CoverVerification:
    """Check that (R^m, F) is bipositive, majorizing and order dense."""
    m, n = rep.m, rep.model.dim
    rows = rep.rows

    bipositive_failure = _check_bipositive(rep)

    majorizing_outcome = feasible_point(rows, [Fraction(1)] * m, n)
    majorizing = majorizing_outcome.status is not LPStatus.INFEASIBLE
    d0 = majorizing_outcome.primal if majorizing else None

    certificates: list[DensityCertificate] = []
    failing_pair = None
    failing_outcome = None
    for k in range(m):
        for sign in (1, -1):
            target = unit(m, k, sign)
            pending = set(range(m))
            if sign == -1:
                trivial = tuple(j for j in range(m) if j != k)
                certificates.append(DensityCertificate(k, sign, zeros(n), trivial))
                pending -= set(trivial)
            elif d0 is not None:
                d = scale(1 / dot(rows[k], d0), d0)
                certificates.append(DensityCertificate(k, sign, d, (k,)))
                pending.discard(k)
            while pending:
                j = min(pending)
                outcome = solve_system(rows, target, rows[j], Sense.MIN, n)
                if outcome.status is not LPStatus.OPTIMAL or outcome.value != target[j]:
                    failing_pair = (j, k, sign)
                    failing_outcome = outcome
                    break
                values = rep.apply(outcome.primal)
                tight = tuple(sorted(i for i in pending if values[i] == target[i]))
                certificates.append(DensityCertificate(k, sign, outcome.primal, tight))
                pending -= set(tight)
            if failing_pair:
                break
        if failing_pair:
            break

    failure = bipositive_failure
    if failure is None and not majorizing:
        failure = "no d with F d >= 1"
    if failure is None and failing_pair is not None:
        j, k, sign = failing_pair
        failure = f"inf of embedded elements above {'+' if sign > 0 else '-'}e{k + 1} differs at coordinate {j + 1}"

    result = CoverVerification(
        bipositive=bipositive_failure is None,
        majorizing=majorizing,
        order_dense=failing_pair is None,
        majorizing_point=d0,
        density=tuple(certificates),
        failure=failure,
        failing_pair=failing_pair,
        failing_outcome=failing_outcome,
    )
    logger.debug("cover verification (%s, m=%d): %s", rep.kind, m, failure or "ok")
    return result


def riesz_element(
    rep: FunctionalRepresentation,
    a_set: Sequence[Sequence[Fraction]],
    b_set: Sequence[Sequence[Fraction]],
) -> CoverElement:
    """max F(A) - max F(B), coordinatewise."""
    if not a_set or not b_set:
        raise ArgumentError("riesz_element needs nonempty A and B")
    top_a = vmax([rep.apply(a) for a in a_set])
    top_b = vmax([rep.apply(b) for b in b_set])
    return sub(top_a, top_b)


def normalize_representation(
    rep: FunctionalRepresentation,
    a_tilde: Sequence[Sequence[Fraction]],
    b_tilde: Sequence[Sequence[Fraction]],
) -> tuple[list[QVector], list[QVector]]:
    """Positive A, B with the same cover element: A = x + A~, B = x + B~.

    x is a minimal upper bound of -A~, -B~ and 0, so both shifted sets lie in
    K, and max F(x + A~) - max F(x + B~) = F x - F x + max F(A~) - max F(B~).
    """
    if not a_tilde or not b_tilde:
        raise ArgumentError("normalize_representation needs nonempty sets")
    n = rep.model.dim
    a_tilde = [qvector(v) for v in a_tilde]
    b_tilde = [qvector(v) for v in b_tilde]
    for v in a_tilde + b_tilde:
        check_dim(v, n, "element")

    negated = [neg(v) for v in a_tilde + b_tilde] + [zeros(n)]
    region = upper_set(rep.model, negated).region
    weight = tuple(sum(column) for column in zip(*rep.rows))
    outcome = solve_system(region.rows, region.rhs, weight, Sense.MIN, n)
    if outcome.status is not LPStatus.OPTIMAL:
        raise InvariantViolation("directed model without a common upper bound")
    x = outcome.primal

    a_set = [add(x, a) for a in a_tilde]
    b_set = [add(x, b) for b in b_tilde]
    if riesz_element(rep, a_set, b_set) != riesz_element(rep, a_tilde, b_tilde):
        raise InvariantViolation("normalization changed the cover element")
    return a_set, b_set


def _cover_verdict(y: CoverElement, strict: bool) -> Positivity:
    nonnegative = all(v >= 0 for v in y)
    if not strict:
        return Positivity.NONNEGATIVE if nonnegative else Positivity.NOT_NONNEGATIVE
    if not nonnegative:
        return Positivity.NOT_NONNEGATIVE
    return Positivity.ZERO if is_zero(y) else Positivity.STRICTLY_POSITIVE


def positivity_oracle(
    rep: FunctionalRepresentation,
    a_set: Sequence[Sequence[Fraction]],
    b_set: Sequence[Sequence[Fraction]],
    strict: bool = True,
) -> Positivity:
    """Sign of max F(A) - max F(B), cross-checked against A^u versus B^u.

    With ``strict`` the comparison distinguishes zero from strictly positive;
    without it only y >= 0 (A^u ⊆ B^u) is decided.
    """
    model = rep.model
    for name, family in (("A", a_set), ("B", b_set)):
        for v in family:
            if not model.cone.contains(v):
                raise PreconditionError(f"{name} contains {tuple(v)}, which is not positive")

    cover = _cover_verdict(riesz_element(rep, a_set, b_set), strict)

    upper_a = upper_set(model, a_set).region
    upper_b = upper_set(model, b_set).region
    if strict:
        relation = polyhedron_relation(upper_a, upper_b).relation
        intrinsic = {
            Relation.EQUAL: Positivity.ZERO,
            Relation.SUBSET: Positivity.STRICTLY_POSITIVE,
        }.get(relation, Positivity.NOT_NONNEGATIVE)
    else:
        inside, _ = includes(upper_a, upper_b)
        intrinsic = Positivity.NONNEGATIVE if inside else Positivity.NOT_NONNEGATIVE

    if cover is not intrinsic:
        raise InvariantViolation(
            f"positivity: cover sign says {cover.value}, upper sets say {intrinsic.value}"
        )
    return cover


def sup_over_interval(rep: FunctionalRepresentation, y: Sequence[Fraction]) -> CoverElement:
    """s_j = max{(F x)_j : 0 <= F x <= y}."""
    check_dim(y, rep.m, "cover element")
    y = qvector(y)
    if any(v < 0 for v in y) or is_zero(y):
        raise ArgumentError("sup_over_interval needs y > 0")
    n = rep.model.dim
    rows = list(rep.rows) + [neg(f) for f in rep.rows]
    rhs = [Fraction(0)] * rep.m + [-v for v in y]
    values = []
    for f in rep.rows:
        outcome = solve_system(rows, rhs, f, Sense.MAX, n)
        values.append(outcome.value)
    return tuple(values)
