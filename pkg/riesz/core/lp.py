"""Exact rational linear programming with certificates.

Problems have the form  min/max c.x  subject to  A x >= b  with x free. The
solver is a dense two-phase simplex on the standard form

    A u - A v - s = b,   u, v, s >= 0,

with Bland's rule for both the entering and the leaving variable, so the pivot
sequence (and with it every certificate) is a function of the input alone.

Certificates, with sigma = +1 for min and -1 for max:

    optimal     primal x with A x >= b and c.x = value; dual y >= 0 with
                A^T y = sigma c and b.y = sigma value
    infeasible  Farkas y >= 0 with A^T y = 0 and b.y > 0 (primitive integers)
    unbounded   a feasible x and a ray r with A r >= 0 and sigma c.r < 0
"""

import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Iterator, Sequence

from riesz.core.errors import ArgumentError
from riesz.core.rational import QVector, check_dim, dot, primitive, zeros

if TYPE_CHECKING:
    from riesz.core.polyhedron import Polyhedron


logger = logging.getLogger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)

_tally: ContextVar[list[int] | None] = ContextVar("lp_tally", default=None)


class Sense(str, Enum):
    MIN = "min"
    MAX = "max"


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPOutcome:
    """Result of one LP together with the system it was solved on."""

    status: LPStatus
    sense: Sense
    objective: QVector
    rows: tuple[QVector, ...]
    rhs: QVector
    primal: QVector | None = None
    value: Fraction | None = None
    dual: QVector | None = None
    ray: QVector | None = None

    @property
    def feasible(self) -> bool:
        return self.status is not LPStatus.INFEASIBLE

    @property
    def farkas(self) -> QVector | None:
        return self.dual if self.status is LPStatus.INFEASIBLE else None

    def verify(self) -> bool:
        """Re-check the certificate with plain rational arithmetic."""
        sigma = 1 if self.sense is Sense.MIN else -1
        n = len(self.objective)

        def transposed(y: Sequence[Fraction]) -> list[Fraction]:
            total = [_ZERO] * n
            for coefficient, row in zip(y, self.rows):
                for i, a in enumerate(row):
                    total[i] += coefficient * a
            return total

        def feasible_point(x: Sequence[Fraction]) -> bool:
            return all(dot(row, x) >= b for row, b in zip(self.rows, self.rhs))

        if self.status is LPStatus.INFEASIBLE:
            y = self.dual
            return (
                y is not None
                and all(v >= 0 for v in y)
                and all(v == 0 for v in transposed(y))
                and dot(y, self.rhs) > 0
            )
        if self.status is LPStatus.OPTIMAL:
            x, y = self.primal, self.dual
            if x is None or y is None or self.value is None:
                return False
            return (
                feasible_point(x)
                and dot(self.objective, x) == self.value
                and all(v >= 0 for v in y)
                and transposed(y) == [sigma * c for c in self.objective]
                and dot(y, self.rhs) == sigma * self.value
            )
        x, r = self.primal, self.ray
        if x is None or r is None:
            return False
        return (
            feasible_point(x)
            and all(dot(row, r) >= 0 for row in self.rows)
            and sigma * dot(self.objective, r) < 0
        )


@contextmanager
def counting_lps() -> Iterator[list[int]]:
    """Count the LPs solved inside the block; the count is ``box[0]``.

    Nested blocks also add their count to the enclosing one.
    """
    outer = _tally.get()
    box = [0]
    token = _tally.set(box)
    try:
        yield box
    finally:
        _tally.reset(token)
        if outer is not None:
            outer[0] += box[0]


def lp_solve(objective: Sequence[Fraction], sense: Sense, region: "Polyhedron") -> LPOutcome:
    """Optimize ``objective`` over ``region`` exactly."""
    check_dim(objective, region.ambient_dim, "objective")
    return solve_system(region.rows, region.rhs, objective, sense, region.ambient_dim)


def solve_system(
    rows: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
    objective: Sequence[Fraction] | None = None,
    sense: Sense = Sense.MIN,
    n: int | None = None,
) -> LPOutcome:
    """Optimize over {x : rows . x >= rhs}; without an objective, a feasibility test."""
    if n is None:
        if objective is not None:
            n = len(objective)
        elif rows:
            n = len(rows[0])
        else:
            raise ArgumentError("cannot infer the dimension of an empty system")
    if len(rows) != len(rhs):
        raise ArgumentError(f"{len(rows)} constraint rows but {len(rhs)} right-hand sides")
    for i, row in enumerate(rows):
        check_dim(row, n, f"constraint row {i}")
    c = tuple(objective) if objective is not None else zeros(n)
    check_dim(c, n, "objective")

    box = _tally.get()
    if box is not None:
        box[0] += 1

    rows_t = tuple(tuple(r) for r in rows)
    rhs_t = tuple(rhs)
    internal = c if sense is Sense.MIN else tuple(-v for v in c)

    tableau = _Tableau(rows_t, rhs_t, n)
    phase_one = tableau.phase_one()
    if phase_one > 0:
        farkas = primitive(tableau.multipliers(tableau.phase_one_cost))
        logger.debug("LP infeasible (%d rows, n=%d)", len(rows_t), n)
        return LPOutcome(LPStatus.INFEASIBLE, sense, c, rows_t, rhs_t, dual=farkas)

    tableau.drive_out_artificials()
    entering = tableau.phase_two(internal)
    primal = tableau.primal()
    if entering is not None:
        ray = tableau.ray(entering)
        return LPOutcome(LPStatus.UNBOUNDED, sense, c, rows_t, rhs_t, primal=primal, ray=ray)

    value = dot(c, primal)
    dual = tableau.multipliers(tableau.cost_vector(internal))
    return LPOutcome(LPStatus.OPTIMAL, sense, c, rows_t, rhs_t, primal=primal, value=value, dual=dual)


def feasible_point(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], n: int) -> LPOutcome:
    return solve_system(rows, rhs, None, Sense.MIN, n)


class _Tableau:
    """Dense simplex tableau; columns are u (n), v (n), s (k), then artificials."""

    def __init__(self, rows: tuple[QVector, ...], rhs: QVector, n: int):
        self.n = n
        self.k = len(rows)
        self.width = 2 * n + self.k
        needs_artificial = [b > 0 for b in rhs]
        self.n_artificial = sum(needs_artificial)
        self.total = self.width + self.n_artificial

        self.signs: list[int] = []
        self.initial: list[int] = []
        self.table: list[list[Fraction]] = []
        self.beta: list[Fraction] = []

        next_artificial = self.width
        for i, (row, b) in enumerate(zip(rows, rhs)):
            line = [_ZERO] * self.total
            if needs_artificial[i]:
                sign = 1
                line[next_artificial] = _ONE
                self.initial.append(next_artificial)
                next_artificial += 1
            else:
                # -a.u + a.v + s = -b with -b >= 0, slack starts basic
                sign = -1
                self.initial.append(2 * n + i)
            for j, a in enumerate(row):
                if a:
                    line[j] = sign * a
                    line[n + j] = -sign * a
            line[2 * n + i] = Fraction(-sign)
            self.signs.append(sign)
            self.table.append(line)
            self.beta.append(sign * b)

        self.basis = list(self.initial)
        self.phase_one_cost = [_ZERO] * self.width + [_ONE] * self.n_artificial

    def cost_vector(self, c: Sequence[Fraction]) -> list[Fraction]:
        cost = [_ZERO] * self.total
        for j, value in enumerate(c):
            cost[j] = value
            cost[self.n + j] = -value
        return cost

    def pivot(self, r: int, col: int) -> None:
        row = self.table[r]
        piv = row[col]
        if piv != 1:
            row = [x / piv if x else x for x in row]
            self.table[r] = row
            self.beta[r] /= piv
        nonzero = [j for j, x in enumerate(row) if x]
        for i in range(self.k):
            if i == r:
                continue
            line = self.table[i]
            factor = line[col]
            if not factor:
                continue
            for j in nonzero:
                line[j] -= factor * row[j]
            self.beta[i] -= factor * self.beta[r]
        self.basis[r] = col

    def _run(self, cost: Sequence[Fraction]) -> int | None:
        """Bland's rule until optimal (None) or unbounded (entering column)."""
        while True:
            weights = [(i, cost[b]) for i, b in enumerate(self.basis) if cost[b]]
            basic = set(self.basis)
            entering = None
            for j in range(self.width):
                if j in basic:
                    continue
                reduced = cost[j]
                for i, w in weights:
                    a = self.table[i][j]
                    if a:
                        reduced -= w * a
                if reduced < 0:
                    entering = j
                    break
            if entering is None:
                return None

            leaving = None
            best = None
            for i in range(self.k):
                a = self.table[i][entering]
                if a > 0:
                    ratio = self.beta[i] / a
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leaving])
                    ):
                        best = ratio
                        leaving = i
            if leaving is None:
                return entering
            self.pivot(leaving, entering)

    def phase_one(self) -> Fraction:
        if self.n_artificial == 0:
            return _ZERO
        self._run(self.phase_one_cost)
        return sum(
            (self.beta[i] for i, b in enumerate(self.basis) if b >= self.width),
            _ZERO,
        )

    def drive_out_artificials(self) -> None:
        for i, b in enumerate(self.basis):
            if b < self.width:
                continue
            for j in range(self.width):
                if self.table[i][j]:
                    self.pivot(i, j)
                    break
            # a row without structural entries is redundant and stays inert

    def phase_two(self, c: Sequence[Fraction]) -> int | None:
        return self._run(self.cost_vector(c))

    def multipliers(self, cost: Sequence[Fraction]) -> QVector:
        """sigma_l * (c_B B^-1)_l, read off the initial basis columns."""
        result = []
        for l in range(self.k):
            column = self.initial[l]
            w = _ZERO
            for i, b in enumerate(self.basis):
                if cost[b]:
                    a = self.table[i][column]
                    if a:
                        w += cost[b] * a
            result.append(self.signs[l] * w)
        return tuple(result)

    def _values(self) -> list[Fraction]:
        z = [_ZERO] * self.total
        for i, b in enumerate(self.basis):
            z[b] = self.beta[i]
        return z

    def primal(self) -> QVector:
        z = self._values()
        return tuple(z[j] - z[self.n + j] for j in range(self.n))

    def ray(self, entering: int) -> QVector:
        d = [_ZERO] * self.total
        d[entering] = _ONE
        for i, b in enumerate(self.basis):
            d[b] -= self.table[i][entering]
        return tuple(d[j] - d[self.n + j] for j in range(self.n))
