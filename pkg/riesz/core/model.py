"""Finite-dimensional pre-Riesz spaces (R^n, K) and their order calculus."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from riesz.core.cone import Cone
from riesz.core.errors import (
    ArgumentError,
    CapacityError,
    InvariantViolation,
    ModelValidationError,
    PreconditionError,
)
from riesz.core.lp import LPStatus, Sense, feasible_point, solve_system
from riesz.core.polyhedron import Polyhedron, Relation, RelationResult, polyhedron_relation
from riesz.core.rational import (
    QVector,
    add,
    check_dim,
    combine,
    dot,
    neg,
    qvector,
    rank,
    scale,
    sub,
    support,
    zeros,
)
from riesz.core.report import (
    DecisionReport,
    DecompositionWitness,
    FarkasCertificate,
    HyperplaneWitness,
    InterpolationWitness,
    LineWitness,
    Property,
    measured,
)
from riesz.utils.config import Limits


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubspaceSpec:
    """A subspace D of R^ambient spanned by ``basis``, ordered coordinatewise."""

    ambient: int
    basis: tuple[QVector, ...]
    ambient_labels: tuple[str, ...] = ()
    basis_labels: tuple[str, ...] = ()

    def evaluation_rows(self) -> tuple[QVector, ...]:
        """Row i maps basis coordinates c to coordinate i of sum(c_k * basis_k)."""
        return tuple(tuple(v[i] for v in self.basis) for i in range(self.ambient))

    def embed(self, coefficients: Sequence[Fraction]) -> QVector:
        return combine(coefficients, self.basis, self.ambient)

    def label_of_ambient(self, i: int) -> str:
        return self.ambient_labels[i] if self.ambient_labels else f"x{i + 1}"


@dataclass(frozen=True)
class ModelSpec:
    """Input description of a model; exactly one cone description is set."""

    dimension: int
    cone_rays: tuple[QVector, ...] | None = None
    cone_inequalities: tuple[QVector, ...] | None = None
    subspace: SubspaceSpec | None = None
    name: str = ""


@dataclass(frozen=True)
class PreRieszModel:
    """(R^n, K) with K pointed, generating and polyhedral."""

    dim: int
    cone: Cone
    spec: ModelSpec

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def subspace(self) -> SubspaceSpec | None:
        return self.spec.subspace

    def element(self, **coefficients: object) -> QVector:
        """Basis-coordinate vector from named basis coefficients (subspace models)."""
        labels = self.subspace.basis_labels if self.subspace else ()
        vector = list(zeros(self.dim))
        for label, value in coefficients.items():
            if label not in labels:
                raise ArgumentError(f"unknown basis element {label!r}")
            vector[labels.index(label)] = qvector([value])[0]
        return tuple(vector)

    def values(self, x: Sequence[Fraction]) -> QVector:
        """Ambient coordinates of x for a subspace model."""
        if self.subspace is None:
            raise ArgumentError("model has no ambient space")
        check_dim(x, self.dim, "element")
        return self.subspace.embed(x)


class Comparison(str, Enum):
    LESS = "x<y"
    EQUAL = "x=y"
    GREATER = "x>y"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class UpperSet:
    base: tuple[QVector, ...]
    region: Polyhedron

    def contains(self, x: Sequence[Fraction]) -> bool:
        return self.region.contains(x)


@dataclass(frozen=True)
class DisjointnessResult:
    disjoint: bool
    intrinsic: RelationResult
    support_x: frozenset[int]
    support_y: frozenset[int]


@dataclass(frozen=True)
class InterpolationResult:
    point: QVector | None
    certificate: FarkasCertificate | None

    @property
    def feasible(self) -> bool:
        return self.point is not None


@measured
def decide_pointed(cone: Cone) -> DecisionReport:
    """K ∩ (-K) = {0}; a failure names a line inside K."""
    line = cone.line_witness()
    if line is None:
        return DecisionReport(Property.POINTED, True, certificate={"rays": list(cone.rays)})
    return DecisionReport(Property.POINTED, False, witness=LineWitness(line))


@measured
def decide_directed(cone: Cone) -> DecisionReport:
    """K - K = R^n; a failure names a hyperplane containing every ray."""
    normal = cone.hyperplane_witness()
    if normal is None:
        return DecisionReport(Property.DIRECTED, True, certificate={"rank": rank(cone.rays, cone.ambient_dim)})
    return DecisionReport(Property.DIRECTED, False, witness=HyperplaneWitness(normal))


def _cone_of(spec: ModelSpec) -> Cone:
    given = [d for d in (spec.cone_rays, spec.cone_inequalities, spec.subspace) if d is not None]
    if len(given) != 1:
        raise ArgumentError("exactly one of cone_rays, cone_inequalities, subspace is required")

    if spec.cone_rays is not None:
        return Cone.from_rays(spec.cone_rays, spec.dimension)
    if spec.cone_inequalities is not None:
        return Cone.from_inequalities(spec.cone_inequalities, spec.dimension)

    subspace = spec.subspace
    if len(subspace.basis) != spec.dimension:
        raise ArgumentError(
            f"subspace basis has {len(subspace.basis)} vectors, dimension is {spec.dimension}"
        )
    for i, vector in enumerate(subspace.basis):
        check_dim(vector, subspace.ambient, f"basis vector {i}")
    for labels, size, what in (
        (subspace.ambient_labels, subspace.ambient, "ambient_labels"),
        (subspace.basis_labels, spec.dimension, "basis_labels"),
    ):
        if labels and len(labels) != size:
            raise ArgumentError(f"{what} has {len(labels)} entries, expected {size}")
    if rank(subspace.basis, subspace.ambient) != spec.dimension:
        raise ModelValidationError("subspace basis vectors are linearly dependent")
    # D ∩ R^m_+ in basis coordinates
    return Cone.from_inequalities(subspace.evaluation_rows(), spec.dimension)


def build_model(spec: ModelSpec, limits: Limits = Limits()) -> PreRieszModel:
    """Validate a spec and bring its cone into canonical form."""
    if spec.dimension < 1:
        raise ArgumentError(f"dimension must be positive, got {spec.dimension}")
    if spec.dimension > limits.max_dimension:
        raise CapacityError("dimension", spec.dimension, limits.max_dimension)

    cone = _cone_of(spec)

    pointed = decide_pointed(cone)
    if not pointed.verdict:
        raise ModelValidationError(
            f"cone is not pointed: it contains the line through {pointed.witness.direction}",
            pointed,
        )
    directed = decide_directed(cone)
    if not directed.verdict:
        raise ModelValidationError(
            f"cone is not generating: every ray lies in the hyperplane with normal {directed.witness.normal}",
            directed,
        )
    if len(cone.rays) > limits.max_rays:
        raise CapacityError("extreme rays", len(cone.rays), limits.max_rays)

    logger.info(
        "model %s: n=%d, %d extreme rays, %d facets",
        spec.name or "(unnamed)", spec.dimension, len(cone.rays), len(cone.normals),
    )
    return PreRieszModel(spec.dimension, cone, spec)


def upper_set(model: PreRieszModel, elements: Sequence[Sequence[Fraction]]) -> UpperSet:
    """A^u as the polyhedron {x : <f, x> >= <f, a> for every normal f and a in A}."""
    if not elements:
        raise ArgumentError("upper set of an empty set")
    base = tuple(qvector(a) for a in elements)
    for i, a in enumerate(base):
        check_dim(a, model.dim, f"element {i}")
    pairs = {(f, dot(f, a)) for f in model.cone.normals for a in base}
    return UpperSet(base, Polyhedron(model.dim, tuple(sorted(pairs, reverse=True))))


def compare(model: PreRieszModel, x: Sequence[Fraction], y: Sequence[Fraction]) -> Comparison:
    check_dim(x, model.dim, "x")
    check_dim(y, model.dim, "y")
    below = model.cone.contains(sub(y, x))
    above = model.cone.contains(sub(x, y))
    if below and above:
        return Comparison.EQUAL
    if below:
        return Comparison.LESS
    if above:
        return Comparison.GREATER
    return Comparison.INCOMPARABLE


def is_positive(model: PreRieszModel, x: Sequence[Fraction]) -> bool:
    """x > 0."""
    return compare(model, x, zeros(model.dim)) is Comparison.GREATER


def disjoint(model: PreRieszModel, x: Sequence[Fraction], y: Sequence[Fraction]) -> DisjointnessResult:
    """x ⊥ y, decided intrinsically and in the canonical cover, which must agree."""
    check_dim(x, model.dim, "x")
    check_dim(y, model.dim, "y")
    x, y = qvector(x), qvector(y)
    plus = upper_set(model, [add(x, y), neg(add(x, y))])
    minus = upper_set(model, [sub(x, y), sub(y, x)])
    intrinsic = polyhedron_relation(plus.region, minus.region)

    # the canonical cover rows are the facet normals of K
    support_x = support([dot(f, x) for f in model.cone.normals])
    support_y = support([dot(f, y) for f in model.cone.normals])
    cover_side = not (support_x & support_y)
    intrinsic_side = intrinsic.relation is Relation.EQUAL
    if cover_side != intrinsic_side:
        raise InvariantViolation(
            f"disjointness of {x} and {y}: upper sets say {intrinsic_side}, cover supports say {cover_side}"
        )
    return DisjointnessResult(cover_side, intrinsic, support_x, support_y)


def interpolate(
    model: PreRieszModel,
    lower: Sequence[Sequence[Fraction]],
    upper: Sequence[Sequence[Fraction]],
) -> InterpolationResult:
    """Find z with l <= z <= u for all l in lower and u in upper."""
    rows: list[QVector] = []
    rhs: list[Fraction] = []
    for l in lower:
        check_dim(l, model.dim, "lower element")
        for f in model.cone.normals:
            rows.append(f)
            rhs.append(dot(f, l))
    for u in upper:
        check_dim(u, model.dim, "upper element")
        for f in model.cone.normals:
            rows.append(neg(f))
            rhs.append(-dot(f, u))
    outcome = feasible_point(rows, rhs, model.dim)
    if outcome.status is LPStatus.INFEASIBLE:
        return InterpolationResult(None, FarkasCertificate.from_outcome(outcome))
    return InterpolationResult(outcome.primal, None)


def riesz_decompose(
    model: PreRieszModel,
    z: Sequence[Fraction],
    x1: Sequence[Fraction],
    x2: Sequence[Fraction],
) -> tuple[QVector, QVector] | FarkasCertificate:
    """Split 0 <= z <= x1 + x2 as z1 + z2 with 0 <= z1 <= x1 and 0 <= z2 <= x2."""
    for name, value in (("z", z), ("x1", x1), ("x2", x2)):
        check_dim(value, model.dim, name)
        if not model.cone.contains(value):
            raise PreconditionError(f"{name} is not positive")
    if compare(model, z, add(x1, x2)) not in (Comparison.LESS, Comparison.EQUAL):
        raise PreconditionError("z is not below x1 + x2")

    rows: list[QVector] = []
    rhs: list[Fraction] = []
    for f in model.cone.normals:
        # z1 >= 0, z1 <= x1, z - z1 >= 0, z - z1 <= x2
        rows += [f, neg(f), neg(f), f]
        rhs += [Fraction(0), -dot(f, x1), -dot(f, z), dot(f, sub(z, x2))]
    outcome = feasible_point(rows, rhs, model.dim)
    if outcome.status is LPStatus.INFEASIBLE:
        return FarkasCertificate.from_outcome(outcome)
    z1 = outcome.primal
    return z1, sub(z, z1)


def _strictly_positive_functional(model: PreRieszModel, rng: np.random.Generator) -> QVector:
    """A random positive combination of all facet normals; positive on K \\ {0}."""
    weights = [Fraction(int(w)) for w in rng.integers(1, 6, size=len(model.cone.normals))]
    return combine(weights, model.cone.normals, model.dim)


def minimal_upper_bound(
    model: PreRieszModel, elements: Sequence[Sequence[Fraction]], weight: Sequence[Fraction]
) -> QVector:
    """A minimal element of A^u: the minimizer of a strictly positive functional."""
    region = upper_set(model, elements).region
    outcome = solve_system(region.rows, region.rhs, weight, Sense.MIN, model.dim)
    if outcome.status is not LPStatus.OPTIMAL:
        raise InvariantViolation("upper set without a minimal element")
    return outcome.primal


def random_element(model: PreRieszModel, rng: np.random.Generator, bound: int = 3) -> QVector:
    coefficients = [Fraction(int(c)) for c in rng.integers(-bound, bound + 1, size=len(model.cone.rays))]
    return combine(coefficients, model.cone.rays, model.dim)


def random_positive(model: PreRieszModel, rng: np.random.Generator, bound: int = 3) -> QVector:
    coefficients = [Fraction(int(c)) for c in rng.integers(0, bound + 1, size=len(model.cone.rays))]
    return combine(coefficients, model.cone.rays, model.dim)


def random_interpolation_instance(
    model: PreRieszModel, rng: np.random.Generator
) -> tuple[tuple[QVector, QVector], tuple[QVector, QVector]]:
    """x1, x2 <= x3, x4 with x3, x4 built from minimal upper bounds of {x1, x2}."""
    x1 = random_element(model, rng)
    x2 = random_element(model, rng)
    x3 = add(minimal_upper_bound(model, [x1, x2], _strictly_positive_functional(model, rng)), random_positive(model, rng, 1))
    x4 = add(minimal_upper_bound(model, [x1, x2], _strictly_positive_functional(model, rng)), random_positive(model, rng, 1))
    return (x1, x2), (x3, x4)


def _decomposition_trial(
    model: PreRieszModel, rng: np.random.Generator
) -> tuple[QVector, QVector, QVector] | None:
    """z = t r on an extreme ray r, as large as z <= x1 + x2 allows.

    Below z the order interval is the segment [0, z], so a split of z fails
    as soon as x1 and x2 each hold less of r than z does.
    """
    rays = model.cone.rays
    if len(rays) < 2:
        return None
    i, j = (int(k) for k in rng.choice(len(rays), size=2, replace=False))
    x1 = scale(Fraction(int(rng.integers(1, 4))), rays[i])
    x2 = scale(Fraction(int(rng.integers(1, 4))), rays[j])
    r = rays[int(rng.integers(len(rays)))]
    total = add(x1, x2)
    t = min(dot(f, total) / dot(f, r) for f in model.cone.normals if dot(f, r) > 0)
    if t == 0:
        return None
    return scale(t, r), x1, x2


@measured
def decide_rdp(model: PreRieszModel, attempts: int = 200, seed: int = 0, samples: int = 25) -> DecisionReport:
    """RDP holds iff K is simplicial; otherwise search for a failing interpolation.

    For a with {0, a}^u having two different minimal elements z1, z2, nothing
    lies between {0, a} and {z1, z2}: such a z is in {0, a}^u and below the
    minimal z1, so z = z1, and likewise z = z2. If that search comes up empty,
    ``samples`` decomposition trials follow. On a simplicial cone ``samples``
    random interpolation instances must all be feasible.
    """
    cone = model.cone
    rng = np.random.default_rng(seed)
    if cone.simplicial:
        for _ in range(samples):
            lower, upper = random_interpolation_instance(model, rng)
            if not interpolate(model, lower, upper).feasible:
                raise InvariantViolation(f"simplicial cone without interpolant for {lower} <= {upper}")
        return DecisionReport(Property.RDP, True, certificate={"rays": list(cone.rays), "samples": samples})

    origin = zeros(model.dim)
    for attempt in range(attempts):
        a = random_element(model, rng, bound=2)
        z1 = minimal_upper_bound(model, [origin, a], _strictly_positive_functional(model, rng))
        z2 = minimal_upper_bound(model, [origin, a], _strictly_positive_functional(model, rng))
        if z1 == z2:
            continue
        result = interpolate(model, [origin, a], [z1, z2])
        if result.feasible:
            continue
        logger.info("RDP fails: interpolation quadruple found after %d attempts", attempt + 1)
        witness = InterpolationWitness((origin, a), (z1, z2), result.certificate)
        return DecisionReport(Property.RDP, False, witness=witness, certificate={"rays": list(cone.rays)})

    for trial in range(samples):
        drawn = _decomposition_trial(model, rng)
        if drawn is None:
            continue
        z, x1, x2 = drawn
        split = riesz_decompose(model, z, x1, x2)
        if isinstance(split, FarkasCertificate):
            logger.info("RDP fails: decomposition failure found after %d trials", trial + 1)
            witness = DecompositionWitness(z, x1, x2, split)
            return DecisionReport(Property.RDP, False, witness=witness, certificate={"rays": list(cone.rays)})

    logger.warning(
        "RDP: no failing quadruple within %d attempts or split within %d trials; verdict rests on simpliciality",
        attempts, samples,
    )
    witness = InterpolationWitness((), (), None, simpliciality_only=True)
    return DecisionReport(Property.RDP, False, witness=witness, certificate={"rays": list(cone.rays)})
