"""Polyhedral cones with synchronized generator and inequality representations.

Conversions run through pycddlib's double description in exact fraction
arithmetic. Each constructor converts twice (input -> other side -> input side)
so that both representations come out minimal and canonical:

  - vectors are primitive integer vectors, sorted descending lexicographically
  - a lineality space is stored as +/- its reduced row echelon basis among
    the rays, and the remaining rays are projected onto its orthogonal
    complement; equalities among the normals are treated the same way

With that convention the dual cone is a swap of the two lists.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import cdd

from riesz.core.errors import StructuralError
from riesz.core.lp import LPStatus, feasible_point
from riesz.core.rational import (
    QVector,
    canonical_order,
    check_dim,
    dot,
    is_zero,
    neg,
    primitive,
    project_out,
    qvector,
    rank,
    row_basis,
    unit,
)


logger = logging.getLogger(__name__)


def _cdd_convert(vectors: Sequence[QVector], n: int, from_generators: bool) -> tuple[list[QVector], list[QVector]]:
    """Run one double description step.

    From generators: returns (facet normals, equality normals) of cone(vectors).
    From inequalities: returns (extreme rays, lineality directions) of
    {x : <f, x> >= 0 for f in vectors}.
    """
    if from_generators:
        rows = [[1] + [0] * n] + [[0] + list(v) for v in vectors]
    else:
        rows = [[0] + list(v) for v in vectors]
    matrix = cdd.Matrix(rows, number_type="fraction")
    matrix.rep_type = cdd.RepType.GENERATOR if from_generators else cdd.RepType.INEQUALITY
    polyhedron = cdd.Polyhedron(matrix)
    result = polyhedron.get_inequalities() if from_generators else polyhedron.get_generators()

    regular: list[QVector] = []
    linear: list[QVector] = []
    for i in range(result.row_size):
        row = result[i]
        body = qvector(row[1:])
        if from_generators and is_zero(body):
            continue  # the trivial row 1 >= 0
        if not from_generators and row[0] != 0:
            continue  # the apex
        (linear if i in result.lin_set else regular).append(body)
    return regular, linear


def _canonical(regular: Iterable[QVector], linear: Sequence[QVector], n: int) -> tuple[QVector, ...]:
    basis = row_basis(linear, n)
    reduced = []
    for vector in regular:
        projected = primitive(project_out(vector, basis, n))
        if not is_zero(projected):
            reduced.append(projected)
    return canonical_order(reduced + basis + [neg(b) for b in basis])


def _generators_of(normals: Sequence[QVector], n: int) -> tuple[QVector, ...]:
    if not normals:
        return canonical_order([unit(n, j) for j in range(n)] + [unit(n, j, -1) for j in range(n)])
    rays, lines = _cdd_convert(normals, n, from_generators=False)
    return _canonical(rays, lines, n)


def _normals_of(rays: Sequence[QVector], n: int) -> tuple[QVector, ...]:
    if not rays:
        return canonical_order([unit(n, j) for j in range(n)] + [unit(n, j, -1) for j in range(n)])
    facets, equalities = _cdd_convert(rays, n, from_generators=True)
    return _canonical(facets, equalities, n)


@dataclass(frozen=True)
class Cone:
    """Closed polyhedral cone K = cone(rays) = {x : <f, x> >= 0 for f in normals}."""

    ambient_dim: int
    rays: tuple[QVector, ...]
    normals: tuple[QVector, ...]

    @classmethod
    def from_rays(cls, rays: Iterable[Iterable[object]], ambient_dim: int) -> "Cone":
        vectors = [qvector(r) for r in rays]
        for i, v in enumerate(vectors):
            check_dim(v, ambient_dim, f"ray {i}")
        vectors = [primitive(v) for v in vectors if not is_zero(v)]
        normals = _normals_of(vectors, ambient_dim)
        cone = cls(ambient_dim, _generators_of(normals, ambient_dim), normals)
        logger.debug("cone from %d rays: %d extreme rays, %d normals", len(vectors), len(cone.rays), len(normals))
        return cone

    @classmethod
    def from_inequalities(cls, normals: Iterable[Iterable[object]], ambient_dim: int) -> "Cone":
        vectors = [qvector(f) for f in normals]
        for i, v in enumerate(vectors):
            check_dim(v, ambient_dim, f"normal {i}")
        vectors = [primitive(v) for v in vectors if not is_zero(v)]
        rays = _generators_of(vectors, ambient_dim)
        cone = cls(ambient_dim, rays, _normals_of(rays, ambient_dim))
        logger.debug("cone from %d inequalities: %d extreme rays", len(vectors), len(rays))
        return cone

    @cached_property
    def pointed(self) -> bool:
        return self.line_witness() is None

    @cached_property
    def generating(self) -> bool:
        return self.hyperplane_witness() is None

    @property
    def simplicial(self) -> bool:
        return (
            self.pointed
            and len(self.rays) == self.ambient_dim
            and rank(self.rays, self.ambient_dim) == self.ambient_dim
        )

    def line_witness(self) -> QVector | None:
        """A direction r with r, -r both in K, if there is one."""
        present = set(self.rays)
        return next((r for r in self.rays if neg(r) in present), None)

    def hyperplane_witness(self) -> QVector | None:
        """A normal f with <f, r> = 0 on every ray, if the cone is not full-dimensional."""
        present = set(self.normals)
        return next((f for f in self.normals if neg(f) in present), None)

    def contains(self, x: Sequence[Fraction]) -> bool:
        check_dim(x, self.ambient_dim, "point")
        return all(dot(f, x) >= 0 for f in self.normals)

    def ray_combination(self, x: Sequence[Fraction]) -> QVector | None:
        """Nonnegative coefficients lambda with sum(lambda_i r_i) = x, or None."""
        check_dim(x, self.ambient_dim, "point")
        count = len(self.rays)
        if count == 0:
            return () if is_zero(x) else None
        rows: list[QVector] = []
        rhs: list[Fraction] = []
        for i in range(count):
            rows.append(unit(count, i))
            rhs.append(Fraction(0))
        for coordinate in range(self.ambient_dim):
            row = tuple(r[coordinate] for r in self.rays)
            rows.append(row)
            rhs.append(x[coordinate])
            rows.append(neg(row))
            rhs.append(-x[coordinate])
        outcome = feasible_point(rows, rhs, count)
        if outcome.status is LPStatus.INFEASIBLE:
            return None
        return outcome.primal


def dual_cone(cone: Cone) -> Cone:
    """K* = {f : <f, x> >= 0 for all x in K}."""
    return Cone(cone.ambient_dim, rays=cone.normals, normals=cone.rays)


def extreme_rays(cone: Cone) -> list[QVector]:
    if not cone.pointed:
        raise StructuralError(f"cone contains the line through {cone.line_witness()}")
    return list(cone.rays)

