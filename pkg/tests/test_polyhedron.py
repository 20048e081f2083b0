import pytest
from hypothesis import given, settings, strategies as st

from riesz.core.errors import ArgumentError
from riesz.core.polyhedron import Polyhedron, Relation, includes, polyhedron_relation
from riesz.core.rational import qvector

ORTHANT = [(1, 0), (0, 1)]


def shifted_orthant(x, y):
    """(x, y) + R^2_+."""
    return Polyhedron.from_rows(ORTHANT, [x, y], 2)


def test_identical_polyhedra_are_equal():
    p = shifted_orthant(1, 2)
    assert polyhedron_relation(p, p).relation is Relation.EQUAL


def test_shifted_orthants():
    p = shifted_orthant(0, 0)
    q = shifted_orthant(-1, -1)
    result = polyhedron_relation(p, q)
    assert result.relation is Relation.SUBSET
    assert result.in_q_not_p is not None
    assert q.contains(result.in_q_not_p) and not p.contains(result.in_q_not_p)


def test_unbounded_difference_gets_a_point():
    half_plane = Polyhedron.from_rows([(1, 0)], [0], 2)
    inside, witness = includes(half_plane, shifted_orthant(0, 0))
    assert not inside
    assert half_plane.contains(witness)
    assert not shifted_orthant(0, 0).contains(witness)


def test_empty_polyhedron_is_inside_everything():
    empty = Polyhedron.from_rows([(1, 0), (-1, 0)], [1, 0], 2)
    assert empty.is_empty
    assert empty.emptiness.verify()
    assert includes(empty, shifted_orthant(5, 5)) == (True, None)


def test_translate_and_canonical():
    p = Polyhedron.from_rows([(0, 1), (1, 0), (0, 1)], [1, 2, 1], 2)
    moved = p.translate(qvector([1, -1]))
    assert moved.contains(qvector([3, 0]))
    assert not moved.contains(qvector([2, 0]))
    assert p.canonical().inequalities == ((qvector([1, 0]), 2), (qvector([0, 1]), 1))
    assert p.intersect(shifted_orthant(0, 0)).contains(qvector([2, 1]))


def test_dimension_mismatch():
    with pytest.raises(ArgumentError):
        includes(shifted_orthant(0, 0), Polyhedron.from_rows([(1,)], [0], 1))
    with pytest.raises(ArgumentError):
        Polyhedron.from_rows([(1, 0, 0)], [0], 2)


coordinate = st.integers(min_value=-2, max_value=2)


@settings(max_examples=40, deadline=None)
@given(coordinate, coordinate, coordinate, coordinate)
def test_relation_matches_point_sampling(a, b, c, d):
    p = Polyhedron.from_rows([(1, 0), (0, 1), (1, 1)], [a, b, a + b + 1], 2)
    q = shifted_orthant(c, d)
    grid = [qvector([x, y]) for x in range(-4, 9) for y in range(-4, 9)]
    p_only = any(p.contains(x) and not q.contains(x) for x in grid)
    q_only = any(q.contains(x) and not p.contains(x) for x in grid)
    expected = {
        (False, False): Relation.EQUAL,
        (False, True): Relation.SUBSET,
        (True, False): Relation.SUPERSET,
        (True, True): Relation.INCOMPARABLE,
    }[(p_only, q_only)]
    assert polyhedron_relation(p, q).relation is expected
