from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from riesz.core.errors import ArgumentError, ParseError
from riesz.core.rational import (
    QMatrix,
    as_rational,
    canonical_order,
    dot,
    express,
    format_rational,
    nullspace,
    parse_rational,
    primitive,
    qvector,
    rank,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
vectors = st.lists(fractions, min_size=3, max_size=3).map(tuple)


def test_parse_rational_forms():
    assert parse_rational("1/2") == Fraction(1, 2)
    assert parse_rational(" -3 ") == Fraction(-3)
    assert parse_rational(7) == Fraction(7)
    assert format_rational(parse_rational("2/4")) == "1/2"
    assert format_rational(Fraction(4, 2)) == "2"


@pytest.mark.parametrize("text", ["1/0", "0.5", "", "1/-2", "abc"])
def test_parse_rational_rejects(text):
    with pytest.raises(ParseError) as exc:
        parse_rational(text, "cone_rays[0][1]")
    assert exc.value.field == "cone_rays[0][1]"


def test_floats_are_refused():
    with pytest.raises(ArgumentError):
        as_rational(0.5)


@given(fractions)
def test_format_parse_inverse(x):
    assert parse_rational(format_rational(x)) == x


def test_primitive_and_canonical_order():
    assert primitive(qvector(["1/2", "-1/3", 0])) == qvector([3, -2, 0])
    assert primitive(qvector([0, 0])) == qvector([0, 0])
    ordered = canonical_order([qvector(v) for v in [(0, 1), (1, 0), (0, 1), (-1, 0)]])
    assert ordered == (qvector([1, 0]), qvector([0, 1]), qvector([-1, 0]))


@given(vectors, vectors, fractions)
def test_dot_is_bilinear(a, b, c):
    scaled = tuple(c * x for x in a)
    summed = tuple(x + y for x, y in zip(a, b))
    assert dot(scaled, b) == c * dot(a, b)
    assert dot(summed, b) == dot(a, b) + dot(b, b)


@given(st.lists(vectors, min_size=1, max_size=3))
def test_nullspace_is_orthogonal_and_complementary(rows):
    kernel = nullspace(rows, 3)
    for k in kernel:
        assert all(dot(row, k) == 0 for row in rows)
    assert len(kernel) + rank(rows, 3) == 3


def test_nullspace_of_no_rows_is_everything():
    assert nullspace([], 2) == [qvector([1, 0]), qvector([0, 1])]


def test_express():
    rows = [qvector(r) for r in [(1, -1, 1), (-1, 1, 1), (-1, -1, 1)]]
    assert express(qvector([1, 1, 1]), rows, 3) == qvector([1, 1, -1])
    assert express(qvector([0, 0, 1]), rows[:1], 3) is None


def test_qmatrix_shape_checks():
    matrix = QMatrix.from_rows([(1, 0), (1, 1)], 2)
    assert matrix.apply(qvector([2, 3])) == qvector([2, 5])
    assert matrix.transpose_apply(qvector([1, 1])) == qvector([2, 1])
    assert matrix.without_row(0).rows == (qvector([1, 1]),)
    assert matrix.rank() == 2
    with pytest.raises(ArgumentError):
        QMatrix.from_rows([(1, 0, 0)], 2)
    with pytest.raises(ArgumentError):
        matrix.apply(qvector([1]))
