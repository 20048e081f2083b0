from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from riesz.core.errors import ArgumentError
from riesz.core.lp import LPStatus, Sense, counting_lps, feasible_point, lp_solve, solve_system
from riesz.core.polyhedron import Polyhedron
from riesz.core.rational import dot, qvector

BOX = 4


def boxed(rows, rhs, n):
    """Add -BOX <= x_i <= BOX so every LP is bounded."""
    rows = [qvector(r) for r in rows]
    rhs = [Fraction(b) for b in rhs]
    for i in range(n):
        unit = [0] * n
        unit[i] = 1
        rows += [qvector(unit), qvector([-u for u in unit])]
        rhs += [Fraction(-BOX), Fraction(-BOX)]
    return rows, rhs


def vertex_optimum(rows, rhs, objective, sense):
    """Best objective value over all vertices, or None for an empty polytope."""
    n = len(objective)
    best = None
    for chosen in combinations(range(len(rows)), n):
        a = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in rows[i]] for i in chosen])
        if a.det() == 0:
            continue
        b = sympy.Matrix([sympy.Rational(rhs[i].numerator, rhs[i].denominator) for i in chosen])
        x = tuple(Fraction(int(v.p), int(v.q)) for v in a.LUsolve(b))
        if all(dot(row, x) >= r for row, r in zip(rows, rhs)):
            value = dot(objective, x)
            if best is None or (value < best if sense is Sense.MIN else value > best):
                best = value
    return best


small = st.integers(min_value=-3, max_value=3)


@st.composite
def lp_instances(draw):
    rows = draw(st.lists(st.lists(small, min_size=3, max_size=3), min_size=5, max_size=5))
    rhs = draw(st.lists(small, min_size=5, max_size=5))
    objective = draw(st.lists(small, min_size=3, max_size=3))
    sense = draw(st.sampled_from([Sense.MIN, Sense.MAX]))
    return rows, rhs, qvector(objective), sense


@settings(max_examples=60, deadline=None)
@given(lp_instances())
def test_value_matches_vertex_enumeration(instance):
    rows, rhs, objective, sense = instance
    rows, rhs = boxed(rows, rhs, 3)
    outcome = solve_system(rows, rhs, objective, sense, 3)
    expected = vertex_optimum(rows, rhs, objective, sense)
    assert outcome.verify()
    if expected is None:
        assert outcome.status is LPStatus.INFEASIBLE
    else:
        assert outcome.status is LPStatus.OPTIMAL
        assert outcome.value == expected


def test_trivial_optimum():
    region = Polyhedron.from_rows([(1,)], [0], 1)
    outcome = lp_solve(qvector([0]), Sense.MAX, region)
    assert outcome.status is LPStatus.OPTIMAL
    assert outcome.value == 0
    assert outcome.primal == qvector([0])
    assert outcome.verify()


def test_infeasible_certificate():
    region = Polyhedron.from_rows([(1,), (-1,)], [1, 0], 1)
    outcome = lp_solve(qvector([1]), Sense.MIN, region)
    assert outcome.status is LPStatus.INFEASIBLE
    assert outcome.farkas == qvector([1, 1])
    assert outcome.verify()


def test_unbounded_ray():
    outcome = solve_system([qvector([1, 0])], [Fraction(0)], qvector([1, 1]), Sense.MAX, 2)
    assert outcome.status is LPStatus.UNBOUNDED
    assert outcome.verify()
    assert dot(qvector([1, 1]), outcome.ray) > 0


def test_degenerate_system_terminates():
    # many constraints through the origin
    rows = [qvector(r) for r in [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -1, 0), (-1, 1, 0), (0, 0, 1)]]
    outcome = solve_system(rows, [Fraction(0)] * 6, qvector([1, 1, 1]), Sense.MIN, 3)
    assert outcome.status is LPStatus.OPTIMAL
    assert outcome.value == 0
    assert outcome.verify()


def test_deterministic():
    rows, rhs = boxed([(1, 2, -1), (2, -1, 1)], [1, -2], 3)
    first = solve_system(rows, rhs, qvector([1, -1, 2]), Sense.MIN, 3)
    second = solve_system(rows, rhs, qvector([1, -1, 2]), Sense.MIN, 3)
    assert first == second


def test_dimension_mismatch():
    region = Polyhedron.from_rows([(1, 0)], [0], 2)
    with pytest.raises(ArgumentError):
        lp_solve(qvector([1]), Sense.MIN, region)
    with pytest.raises(ArgumentError):
        solve_system([qvector([1, 0])], [], None, Sense.MIN, 2)


def test_counting_lps_nests():
    with counting_lps() as outer:
        feasible_point([qvector([1])], [Fraction(1)], 1)
        with counting_lps() as inner:
            feasible_point([qvector([1])], [Fraction(1)], 1)
            feasible_point([qvector([1])], [Fraction(2)], 1)
    assert inner[0] == 2
    assert outer[0] == 3
