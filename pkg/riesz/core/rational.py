"""Exact rational scalars, vectors and matrices.

Every number in the package is a ``fractions.Fraction``. Vectors are plain
tuples of fractions; matrices carry their column count explicitly so that a
matrix without rows still knows its width. Rank, kernels and linear solves go
through ``sympy.Matrix`` over the rationals.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import sympy

from riesz.core.errors import ArgumentError, ParseError


Rational = Fraction
QVector = tuple[Fraction, ...]

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(value: object, field: str = "") -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a canonical fraction."""
    if isinstance(value, bool):
        raise ParseError("expected a rational, got a boolean", field)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if not isinstance(value, str):
        raise ParseError(f"expected a rational string, got {type(value).__name__}", field)

    match = _RATIONAL_PATTERN.match(value)
    if match is None:
        raise ParseError(f"malformed rational {value!r}", field)
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ParseError(f"zero denominator in {value!r}", field)
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Canonical text form: ``"p/q"``, or ``"p"`` when q = 1."""
    return str(Fraction(value))


def as_rational(value: object) -> Fraction:
    """Coerce ints, fractions and rational strings; refuse floats."""
    if isinstance(value, float):
        raise ArgumentError(f"floating point value {value!r} refused; use a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    return parse_rational(value)


def qvector(values: Iterable[object]) -> QVector:
    return tuple(as_rational(v) for v in values)


def zeros(n: int) -> QVector:
    return (Fraction(0),) * n


def unit(n: int, j: int, value: int = 1) -> QVector:
    return tuple(Fraction(value) if i == j else Fraction(0) for i in range(n))


def check_dim(vector: Sequence[Fraction], n: int, what: str = "vector") -> None:
    if len(vector) != n:
        raise ArgumentError(f"{what} has {len(vector)} entries, expected {n}")


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ArgumentError(f"dot product of lengths {len(a)} and {len(b)}")
    total = Fraction(0)
    for x, y in zip(a, b):
        if x and y:
            total += x * y
    return total


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> QVector:
    if len(a) != len(b):
        raise ArgumentError(f"sum of lengths {len(a)} and {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> QVector:
    if len(a) != len(b):
        raise ArgumentError(f"difference of lengths {len(a)} and {len(b)}")
    return tuple(x - y for x, y in zip(a, b))


def scale(factor: Fraction, a: Sequence[Fraction]) -> QVector:
    return tuple(factor * x for x in a)


def neg(a: Sequence[Fraction]) -> QVector:
    return tuple(-x for x in a)


def combine(coefficients: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]], n: int) -> QVector:
    """Linear combination sum(c_i * v_i) in dimension n."""
    total = [Fraction(0)] * n
    for c, v in zip(coefficients, vectors):
        if not c:
            continue
        for i, x in enumerate(v):
            if x:
                total[i] += c * x
    return tuple(total)


def is_zero(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def support(a: Sequence[Fraction]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(a) if x != 0)


def positive_support(a: Sequence[Fraction]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(a) if x > 0)


def positive_part(a: Sequence[Fraction]) -> QVector:
    return tuple(x if x > 0 else Fraction(0) for x in a)


def vmax(vectors: Sequence[Sequence[Fraction]]) -> QVector:
    """Coordinatewise maximum of a nonempty family."""
    if not vectors:
        raise ArgumentError("coordinatewise maximum of an empty family")
    return tuple(max(column) for column in zip(*vectors))


def vmin(vectors: Sequence[Sequence[Fraction]]) -> QVector:
    if not vectors:
        raise ArgumentError("coordinatewise minimum of an empty family")
    return tuple(min(column) for column in zip(*vectors))


def primitive(a: Sequence[Fraction]) -> QVector:
    """Positive multiple of ``a`` with coprime integer entries; zero stays zero."""
    if is_zero(a):
        return tuple(Fraction(0) for _ in a)
    common = reduce(lcm, (x.denominator for x in a), 1)
    integers = [int(x * common) for x in a]
    divisor = reduce(gcd, (abs(v) for v in integers if v), 0)
    return tuple(Fraction(v // divisor) for v in integers)


def canonical_order(vectors: Iterable[Sequence[Fraction]]) -> tuple[QVector, ...]:
    """Deduplicate and sort descending lexicographically."""
    return tuple(sorted({tuple(v) for v in vectors}, reverse=True))


@dataclass(frozen=True)
class QMatrix:
    """Dense rational matrix stored by rows."""

    rows: tuple[QVector, ...]
    n_cols: int

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if len(row) != self.n_cols:
                raise ArgumentError(f"row {i} has {len(row)} entries, expected {self.n_cols}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[object]], n_cols: int) -> "QMatrix":
        return cls(tuple(qvector(r) for r in rows), n_cols)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def apply(self, x: Sequence[Fraction]) -> QVector:
        check_dim(x, self.n_cols)
        return tuple(dot(row, x) for row in self.rows)

    def transpose_apply(self, y: Sequence[Fraction]) -> QVector:
        check_dim(y, self.n_rows)
        return combine(y, self.rows, self.n_cols)

    def without_row(self, j: int) -> "QMatrix":
        return QMatrix(self.rows[:j] + self.rows[j + 1:], self.n_cols)

    def rank(self) -> int:
        return rank(self.rows, self.n_cols)


# sympy bridge

def _to_sympy(rows: Sequence[Sequence[Fraction]], n_cols: int) -> sympy.Matrix:
    entries = [sympy.Rational(x.numerator, x.denominator) for row in rows for x in row]
    return sympy.Matrix(len(rows), n_cols, entries)


def _from_sympy_column(column: sympy.Matrix) -> QVector:
    return tuple(as_rational(sympy.Rational(x)) for x in column)


def rank(rows: Sequence[Sequence[Fraction]], n_cols: int) -> int:
    if not rows:
        return 0
    return _to_sympy(rows, n_cols).rank()


def nullspace(rows: Sequence[Sequence[Fraction]], n_cols: int) -> list[QVector]:
    """Basis of {x : row . x = 0 for every row}, each vector primitive."""
    if not rows:
        return [unit(n_cols, j) for j in range(n_cols)]
    basis = _to_sympy(rows, n_cols).nullspace()
    return [primitive(_from_sympy_column(v)) for v in basis]


def row_basis(vectors: Sequence[Sequence[Fraction]], n_cols: int) -> list[QVector]:
    """Reduced row echelon basis of the span, a canonical basis of the subspace."""
    if not vectors:
        return []
    reduced, pivots = _to_sympy(vectors, n_cols).rref()
    return [primitive(_from_sympy_column(reduced.row(i))) for i in range(len(pivots))]


def express(target: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]], n_cols: int) -> QVector | None:
    """Coefficients c with sum(c_i * v_i) = target, or None outside the span."""
    if not vectors:
        return () if is_zero(target) else None
    system = _to_sympy(vectors, n_cols).T
    rhs = _to_sympy([target], n_cols).T
    try:
        solution, params = system.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    solution = solution.xreplace({p: 0 for p in params})
    return _from_sympy_column(solution)


def project_out(vector: Sequence[Fraction], basis: Sequence[Sequence[Fraction]], n_cols: int) -> QVector:
    """Orthogonal projection of ``vector`` onto the complement of span(basis)."""
    if not basis:
        return tuple(vector)
    b = _to_sympy(basis, n_cols)
    v = _to_sympy([vector], n_cols).T
    coefficients = (b * b.T).LUsolve(b * v)
    projected = v - b.T * coefficients
    return _from_sympy_column(projected)
