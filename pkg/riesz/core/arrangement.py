"""Sign cells of the central arrangement b -> F b.

Both enumerators branch row by row and prune with an LP feasibility test.
Strict signs use the homogeneous normalization f(b) >= 1 (resp. <= -1),
which is exact because every system here is invariant under positive scaling.
A feasible node's point is reused for the child whose sign it already has.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from riesz.core.errors import CapacityError
from riesz.core.lp import LPStatus, feasible_point
from riesz.core.rational import QMatrix, QVector, dot, neg, primitive, zeros


logger = logging.getLogger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)

POSITIVE = 1
ZERO = 0
NEGATIVE = -1
NONPOSITIVE = -2  # closed branch used by positive_supports

_SYMBOLS = {POSITIVE: "+", ZERO: "0", NEGATIVE: "-", NONPOSITIVE: "."}


@dataclass(frozen=True)
class SignCell:
    pattern: tuple[int, ...]
    witness: QVector

    def __str__(self) -> str:
        return "".join(_SYMBOLS[s] for s in self.pattern)


def _constraints(row: QVector, sign: int) -> list[tuple[QVector, Fraction]]:
    if sign == POSITIVE:
        return [(row, _ONE)]
    if sign == NEGATIVE:
        return [(neg(row), _ONE)]
    if sign == NONPOSITIVE:
        return [(neg(row), _ZERO)]
    return [(row, _ZERO), (neg(row), _ZERO)]


def _reuse(point: QVector, row: QVector, sign: int) -> QVector | None:
    """The parent's point, rescaled if needed, when it already has ``sign`` on ``row``."""
    value = dot(row, point)
    if sign == ZERO:
        return point if value == 0 else None
    if sign == NONPOSITIVE:
        return point if value <= 0 else None
    if sign * value <= 0:
        return None
    magnitude = abs(value)
    # a factor >= 1 keeps every earlier ">= 1" row satisfied
    return point if magnitude >= 1 else tuple(x / magnitude for x in point)


def _search(
    matrix: QMatrix,
    branches: tuple[int, ...],
    skip: Callable[[list[int]], bool] | None,
    limit: int,
) -> Iterator[tuple[tuple[int, ...], QVector]]:
    rows = matrix.rows
    m = matrix.n_rows
    emitted = 0
    assigned: list[int] = []
    system: list[tuple[QVector, Fraction]] = []

    def explore(point: QVector) -> Iterator[tuple[tuple[int, ...], QVector]]:
        nonlocal emitted
        depth = len(assigned)
        if depth == m:
            emitted += 1
            if emitted > limit:
                raise CapacityError("sign cells", emitted, limit)
            yield tuple(assigned), primitive(point)
            return
        row = rows[depth]
        for sign in branches:
            added = _constraints(row, sign)
            assigned.append(sign)
            system.extend(added)
            try:
                if skip is not None and skip(assigned):
                    continue
                child = _reuse(point, row, sign)
                if child is None:
                    outcome = feasible_point(
                        [a for a, _ in system], [b for _, b in system], matrix.n_cols
                    )
                    if outcome.status is LPStatus.INFEASIBLE:
                        continue
                    child = outcome.primal
                yield from explore(child)
            finally:
                del system[len(system) - len(added):]
                assigned.pop()

    yield from explore(zeros(matrix.n_cols))


def sign_cells(matrix: QMatrix, max_rows: int = 16, max_cells: int = 20000) -> Iterator[SignCell]:
    """Every realizable sign pattern of F b, with a realizing b.

    Patterns come out in canonical order: rows in order, branches +, 0, -.
    """
    if matrix.n_rows > max_rows:
        raise CapacityError("functionals", matrix.n_rows, max_rows)
    for pattern, witness in _search(matrix, (POSITIVE, ZERO, NEGATIVE), None, max_cells):
        yield SignCell(pattern, witness)


def positive_supports(
    matrix: QMatrix,
    prune: Callable[[frozenset[int]], bool] | None = None,
    max_rows: int = 16,
    max_cells: int = 20000,
) -> Iterator[tuple[frozenset[int], QVector]]:
    """Realizable positive supports {j : f_j(b) > 0} with a realizing b.

    Two-way branching (f_j(b) >= 1 or f_j(b) <= 0), positive branch first; the
    empty support is not reported. ``prune`` receives the positive rows chosen
    so far and may discard the whole subtree below them.
    """
    if matrix.n_rows > max_rows:
        raise CapacityError("functionals", matrix.n_rows, max_rows)

    def skip(assigned: list[int]) -> bool:
        if prune is None or assigned[-1] != POSITIVE:
            return False
        return prune(frozenset(j for j, s in enumerate(assigned) if s == POSITIVE))

    for pattern, witness in _search(matrix, (POSITIVE, NONPOSITIVE), skip, max_cells):
        chosen = frozenset(j for j, s in enumerate(pattern) if s == POSITIVE)
        if chosen:
            logger.debug("realizable positive support %s", sorted(chosen))
            yield chosen, witness
