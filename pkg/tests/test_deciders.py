import pytest

from riesz.core.cover import functional_representation, normalize_representation
from riesz.core.deciders import (
    CheckStatus,
    decide_fordable,
    decide_pervasive,
    decide_property_P,
    decide_weakly_pervasive,
    disjoint_complement,
    lemma9_witness_check,
    solve_support_system,
    support_family,
    support_key,
    theorem5_check,
    thm7_witness_check,
)
from riesz.core.errors import CapacityError, PreconditionError
from riesz.core.lp import LPStatus
from riesz.core.model import is_positive
from riesz.core.rational import qvector, zeros
from riesz.core.report import Property
from riesz.core.zoo import make_classic, make_random
from riesz.utils.config import Limits


def below(rep, x, bound):
    return all(v <= b for v, b in zip(rep.apply(x), bound))


class TestSupportFamily:
    def test_lattice(self, lattice2_rep):
        family = support_family(lattice2_rep)
        assert family.ray_supports == (frozenset({0}), frozenset({1}))
        assert list(family.union_closure) == [frozenset({0}), frozenset({1}), frozenset({0, 1})]

    def test_four_ray(self, four_ray_rep):
        family = support_family(four_ray_rep)
        assert family.ray_supports == (
            frozenset({0, 1}),
            frozenset({0, 2}),
            frozenset({1, 3}),
            frozenset({2, 3}),
        )
        closure = family.union_closure
        assert frozenset({0, 1, 2}) in closure
        assert frozenset({0, 1, 3}) in closure
        assert frozenset({0, 1, 2, 3}) in closure
        for member, realizer in closure.items():
            assert four_ray_rep.support(realizer) == member
        assert list(family.intersection_closure)[:4] == [frozenset({j}) for j in range(4)]

    def test_closure_cap(self, four_ray_rep):
        with pytest.raises(CapacityError):
            support_family(four_ray_rep, Limits(max_closure=3)).union_closure

    @pytest.mark.parametrize("seed", range(6))
    def test_random_realizers(self, seed):
        rep = functional_representation(make_random(seed, 3, 5))
        for member, realizer in support_family(rep).union_closure.items():
            assert rep.support(realizer) == member

    def test_support_key_order(self):
        supports = [frozenset({1, 2}), frozenset({3}), frozenset({0, 4}), frozenset({0})]
        assert sorted(supports, key=support_key) == [
            frozenset({0}),
            frozenset({3}),
            frozenset({0, 4}),
            frozenset({1, 2}),
        ]


class TestPervasive:
    def test_lattice(self, lattice2_rep):
        report = decide_pervasive(lattice2_rep)
        assert report.property is Property.PERVASIVE
        assert report.verdict

    def test_four_ray(self, four_ray_rep):
        report = decide_pervasive(four_ray_rep)
        assert not report.verdict
        witness = report.witness
        assert witness.positive_support == frozenset({0})
        values = four_ray_rep.apply(witness.b)
        assert values[0] > 0 and all(v <= 0 for v in values[1:])
        assert witness.certificate.holds()

    def test_example13(self, example13_rep):
        assert not decide_pervasive(example13_rep).verdict

    @pytest.mark.parametrize("seed", range(8))
    def test_random_models_match_simpliciality(self, seed):
        model = make_random(seed, 3, 4)
        report = decide_pervasive(functional_representation(model))
        assert report.verdict == model.cone.simplicial


class TestThm7WitnessCheck:
    def test_lattice(self, lattice2_rep):
        result = thm7_witness_check(lattice2_rep, qvector([1, -1]))
        assert result.status is CheckStatus.WITNESS
        assert result.element == qvector([1, 0])

    def test_four_ray_failure(self, four_ray_rep):
        result = thm7_witness_check(four_ray_rep, qvector([1, 1, -1]))
        assert result.status is CheckStatus.FAILURE
        assert result.support == frozenset({0})
        assert result.certificate.holds()

    def test_negative_b(self, four_ray_rep):
        with pytest.raises(PreconditionError):
            thm7_witness_check(four_ray_rep, qvector([0, 0, -1]))
        with pytest.raises(PreconditionError):
            thm7_witness_check(four_ray_rep, zeros(3))


class TestTheorem5Check:
    def test_lattice(self, lattice2_rep):
        result = theorem5_check(lattice2_rep, [qvector([1, 1])], [zeros(2)])
        assert result.succeeded
        assert is_positive(lattice2_rep.model, result.element)
        assert below(lattice2_rep, result.element, qvector([1, 1]))

    def test_four_ray_matches_pervasive(self, four_ray_rep):
        b = qvector([1, 1, -1])
        a_set, b_set = normalize_representation(four_ray_rep, [b, zeros(3)], [zeros(3)])
        result = theorem5_check(four_ray_rep, a_set, b_set)
        assert result.status is CheckStatus.FAILURE
        assert result.support == frozenset({0})

    def test_equal_sets(self, lattice2_rep):
        with pytest.raises(PreconditionError):
            theorem5_check(lattice2_rep, [qvector([1, 1])], [qvector([1, 1])])


class TestWeaklyPervasive:
    def test_lattice(self, lattice2_rep):
        assert decide_weakly_pervasive(lattice2_rep).verdict

    def test_four_ray(self, four_ray_rep):
        report = decide_weakly_pervasive(four_ray_rep)
        assert not report.verdict
        assert report.witness.b1 == qvector([1, 0, 1])
        assert report.witness.b2 == qvector([0, 1, 1])
        assert report.witness.support == frozenset({0})
        assert report.certificate["support_labels"] == ["y1"]

    def test_example14(self, example14_rep):
        report = decide_weakly_pervasive(example14_rep)
        assert not report.verdict
        assert report.witness.certificate.holds()


class TestLemma9WitnessCheck:
    def test_lattice(self, lattice2_rep):
        result = lemma9_witness_check(lattice2_rep, qvector([2, 1]), qvector([1, 2]))
        assert result.succeeded
        assert below(lattice2_rep, result.element, qvector([1, 1]))

    def test_disjoint_pair(self, lattice2_rep):
        result = lemma9_witness_check(lattice2_rep, qvector([1, 0]), qvector([0, 1]))
        assert result.status is CheckStatus.NOT_APPLICABLE

    def test_example14(self, example14, example14_rep):
        b1 = example14.element(u12=2)
        b2 = example14.element(e2=1)
        result = lemma9_witness_check(example14_rep, b1, b2)
        assert result.status is CheckStatus.FAILURE
        labels = {example14_rep.labels[j] for j in result.support}
        assert any("t=3/2" in label for label in labels)

    def test_not_positive(self, lattice2_rep):
        with pytest.raises(PreconditionError):
            lemma9_witness_check(lattice2_rep, qvector([1, -1]), qvector([1, 1]))


class TestFordable:
    def test_lattice(self, lattice2_rep):
        report = decide_fordable(lattice2_rep)
        assert report.verdict
        assert report.certificate["singletons"] == {"y1": qvector([1, 0]), "y2": qvector([0, 1])}

    def test_four_ray(self, four_ray_rep):
        report = decide_fordable(four_ray_rep)
        assert not report.verdict
        assert report.witness.coordinate == 0
        assert report.witness.kernel == ()
        assert report.witness.combination == qvector([0, 1, 1, -1])

    def test_example10_canonical(self, example10_rep):
        assert decide_fordable(example10_rep).verdict

    @pytest.mark.parametrize("name,params", [("four_ray", {}), ("simplicial", {"n": 3})])
    def test_matches_disjoint_complements(self, name, params):
        rep = functional_representation(make_classic(name, params))
        expected = all(disjoint_complement(rep, {j}).fordable for j in range(rep.m))
        assert decide_fordable(rep).verdict == expected

    @pytest.mark.parametrize("seed", range(6))
    def test_random_models_match_disjoint_complements(self, seed):
        rep = functional_representation(make_random(seed, 3, 5))
        expected = all(disjoint_complement(rep, {j}).fordable for j in range(rep.m))
        assert decide_fordable(rep).verdict == expected


class TestPropertyP:
    def test_lattice(self, lattice2_rep):
        assert decide_property_P(lattice2_rep).verdict

    def test_four_ray(self, four_ray_rep):
        report = decide_property_P(four_ray_rep)
        assert not report.verdict
        assert report.witness.support == frozenset({0})
        assert report.witness.elements == (qvector([1, 0, 1]), qvector([0, 1, 1]))

    @pytest.mark.parametrize("seed", range(6))
    def test_property_P_implies_weakly_pervasive(self, seed):
        rep = functional_representation(make_random(seed, 3, 6))
        if decide_property_P(rep).verdict:
            assert decide_weakly_pervasive(rep).verdict


def test_support_system_matches_ray_supports(four_ray_rep):
    family = support_family(four_ray_rep)
    for t in [frozenset({0}), frozenset({0, 1}), frozenset({0, 3}), frozenset({0, 1, 2})]:
        outcome = solve_support_system(four_ray_rep, t)
        feasible = outcome.status is not LPStatus.INFEASIBLE
        assert feasible == (family.contains_ray_support(t) is not None)
        assert outcome.verify()


def test_disjoint_complement(four_ray_rep):
    result = disjoint_complement(four_ray_rep, {0})
    assert result.complement == frozenset({1, 2, 3})
    assert result.covered == frozenset()
    assert not result.fordable
    assert disjoint_complement(four_ray_rep, {0, 1, 2, 3}).fordable


def test_reports_count_lps(four_ray_rep):
    report = decide_pervasive(four_ray_rep)
    assert report.lp_count > 0
    assert report.time_ms >= 0
