"""Closed polyhedra {x : <a, x> >= beta} and their inclusion relation."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from riesz.core.errors import ArgumentError
from riesz.core.lp import LPOutcome, LPStatus, Sense, feasible_point, lp_solve
from riesz.core.rational import QVector, add, check_dim, dot, qvector, scale


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Polyhedron:
    """Intersection of closed half-spaces, stored as (normal, offset) pairs."""

    ambient_dim: int
    inequalities: tuple[tuple[QVector, Fraction], ...] = ()

    def __post_init__(self):
        for i, (normal, _) in enumerate(self.inequalities):
            check_dim(normal, self.ambient_dim, f"normal {i}")

    @classmethod
    def from_rows(
        cls, rows: Iterable[Sequence[object]], rhs: Iterable[object], ambient_dim: int
    ) -> "Polyhedron":
        pairs = tuple((qvector(a), Fraction(b)) for a, b in zip(rows, rhs, strict=True))
        return cls(ambient_dim, pairs)

    @property
    def rows(self) -> tuple[QVector, ...]:
        return tuple(a for a, _ in self.inequalities)

    @property
    def rhs(self) -> QVector:
        return tuple(b for _, b in self.inequalities)

    def contains(self, x: Sequence[Fraction]) -> bool:
        check_dim(x, self.ambient_dim, "point")
        return all(dot(a, x) >= b for a, b in self.inequalities)

    def translate(self, x: Sequence[Fraction]) -> "Polyhedron":
        """The polyhedron x + P."""
        check_dim(x, self.ambient_dim, "translation")
        return Polyhedron(
            self.ambient_dim,
            tuple((a, b + dot(a, x)) for a, b in self.inequalities),
        )

    def canonical(self) -> "Polyhedron":
        """Same set, inequalities deduplicated and sorted."""
        return Polyhedron(self.ambient_dim, tuple(sorted(set(self.inequalities), reverse=True)))

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if other.ambient_dim != self.ambient_dim:
            raise ArgumentError("intersection of polyhedra of different dimension")
        return Polyhedron(self.ambient_dim, self.inequalities + other.inequalities)

    @cached_property
    def emptiness(self) -> LPOutcome:
        """Feasibility LP, with a Farkas certificate when empty."""
        return feasible_point(self.rows, self.rhs, self.ambient_dim)

    @property
    def is_empty(self) -> bool:
        return self.emptiness.status is LPStatus.INFEASIBLE


class Relation(str, Enum):
    EQUAL = "equal"
    SUBSET = "subset"  # P strictly inside Q
    SUPERSET = "superset"  # Q strictly inside P
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class RelationResult:
    relation: Relation
    in_p_not_q: QVector | None = None
    in_q_not_p: QVector | None = None


def includes(inner: Polyhedron, outer: Polyhedron) -> tuple[bool, QVector | None]:
    """Decide inner ⊆ outer; on failure return a point of inner outside outer."""
    if inner.ambient_dim != outer.ambient_dim:
        raise ArgumentError(
            f"polyhedra of dimension {inner.ambient_dim} and {outer.ambient_dim}"
        )
    if inner.is_empty:
        return True, None
    for normal, offset in outer.inequalities:
        outcome = lp_solve(normal, Sense.MIN, inner)
        if outcome.status is LPStatus.UNBOUNDED:
            base, ray = outcome.primal, outcome.ray
            # move along the ray far enough to cross the violated half-space
            slope = dot(normal, ray)
            step = max(Fraction(0), (dot(normal, base) - offset) / -slope) + 1
            return False, add(base, scale(step, ray))
        if outcome.value < offset:
            return False, outcome.primal
    return True, None


def polyhedron_relation(p: Polyhedron, q: Polyhedron) -> RelationResult:
    """Compare two polyhedra by inclusion, one LP per inequality of the other."""
    p_in_q, p_witness = includes(p, q)
    q_in_p, q_witness = includes(q, p)
    if p_in_q and q_in_p:
        relation = Relation.EQUAL
    elif p_in_q:
        relation = Relation.SUBSET
    elif q_in_p:
        relation = Relation.SUPERSET
    else:
        relation = Relation.INCOMPARABLE
    logger.debug("polyhedron relation: %s", relation.value)
    return RelationResult(relation, in_p_not_q=p_witness, in_q_not_p=q_witness)
