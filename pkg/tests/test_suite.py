import time

import pytest

from riesz.core.cover import functional_representation
from riesz.core.deciders import decide_pervasive
from riesz.core.errors import ArgumentError
from riesz.core.report import DecisionReport, Property
from riesz.core.suite import (
    ModelVerdicts,
    SuiteResult,
    analyze_all,
    check_implications,
    harness_tasks,
    run_harness,
    run_implication_suite,
    sample_pervasiveness_checks,
    sweep_example10,
)
from riesz.core.zoo import make_classic, make_example10, make_example13, make_example14, make_random
from riesz.utils.config import AnalysisConfig


def fabricated(name, **verdicts):
    reports = {prop: DecisionReport(prop, verdicts.get(prop.value, True)) for prop in Property}
    return ModelVerdicts(name, reports)


def test_lattice_satisfies_everything():
    result = run_implication_suite([make_classic("simplicial", {"n": 3})])
    assert result.ok
    assert not result.errors
    (row,) = result.verdicts
    assert all(report.verdict for report in row.reports.values())


def test_four_ray_fails_everything(four_ray):
    result = run_implication_suite([four_ray])
    assert result.ok
    (row,) = result.verdicts
    assert not any(report.verdict for report in row.reports.values())
    assert result.candidates == []


def test_analyze_all_passes_the_sample_count():
    row = analyze_all(make_classic("simplicial", {"n": 2}), AnalysisConfig(rdp_samples=5))
    assert row.reports[Property.RDP].certificate["samples"] == 5


def test_progress_is_reported(lattice2, four_ray):
    seen = []
    run_implication_suite([lattice2, four_ray], progress_callback=lambda *args: seen.append(args))
    assert seen == [(1, 2, lattice2.name), (2, 2, four_ray.name)]


def test_empty_suite():
    with pytest.raises(ArgumentError):
        run_implication_suite([])


def test_violation_is_recorded():
    result = SuiteResult()
    check_implications(fabricated("bad", weakly_pervasive=False, property_P=False, rdp=False), result)
    assert [v["implication"] for v in result.violations] == ["pervasive => weakly_pervasive"]
    assert not result.ok


def test_open_candidate_is_recorded():
    result = SuiteResult()
    check_implications(
        fabricated("odd", pervasive=False, weakly_pervasive=False, rdp=False, property_P=False),
        result,
    )
    assert result.ok
    assert result.candidates == [{"model": "odd", "holds": "fordable", "fails": "weakly_pervasive"}]


def test_harness_tasks_are_deterministic():
    config = AnalysisConfig(harness_count=5)
    first = harness_tasks(7, config)
    assert first == harness_tasks(7, config)
    assert first != harness_tasks(8, config)
    for _, n, rays, _ in first:
        assert 2 <= n <= config.harness_max_dim
        assert n <= rays <= config.harness_max_rays


def test_small_harness():
    config = AnalysisConfig(harness_count=3, harness_max_dim=3, harness_max_rays=5)
    result = run_harness(1, config)
    assert result.ok
    assert len(result.verdicts) + len(result.errors) == 3


@pytest.mark.slow
def test_harness_in_worker_processes():
    config = AnalysisConfig(harness_count=12, harness_max_dim=3, harness_max_rays=6)
    serial = run_harness(2, config)
    parallel = run_harness(2, AnalysisConfig(harness_count=12, harness_max_dim=3, harness_max_rays=6, harness_workers=2))
    assert serial.ok and parallel.ok
    assert [row.name for row in serial.verdicts] == [row.name for row in parallel.verdicts]


def test_sweep_example10():
    (entry,) = sweep_example10([2], [2])
    assert entry["N"] == 2 and entry["M"] == 2
    assert entry["pervasive"] and entry["fordable"]


@pytest.mark.parametrize("fixture", ["lattice2", "four_ray"])
def test_sampled_checks_agree(request, fixture):
    rep = request.getfixturevalue(f"{fixture}_rep")
    agreement = sample_pervasiveness_checks(rep, decide_pervasive(rep), samples=25)
    assert agreement.ok, agreement.disagreements
    assert agreement.thm7_samples > 0
    assert agreement.theorem5_samples > 0
    assert agreement.sup_samples > 0


@pytest.mark.parametrize(
    "model",
    [
        make_classic("simplicial", {"n": 1}),
        make_classic("simplicial", {"n": 2}),
        make_classic("simplicial", {"n": 3}),
        make_classic("four_ray"),
    ],
    ids=lambda model: model.name,
)
def test_interval_suprema_agree_with_pervasiveness(model):
    rep = functional_representation(model)
    verdict = decide_pervasive(rep)
    agreement = sample_pervasiveness_checks(rep, verdict, samples=20, seed=1)
    assert agreement.ok, agreement.disagreements
    assert agreement.sup_samples == 20
    assert verdict.verdict == (model.name != "four_ray")


def test_sup_check_flags_a_false_pervasive_claim(four_ray_rep):
    # a pervasive verdict on the four-ray cone contradicts some interval supremum
    claimed = DecisionReport(Property.PERVASIVE, True)
    agreement = sample_pervasiveness_checks(four_ray_rep, claimed, samples=30, seed=0)
    assert any(entry["check"] == "sup" for entry in agreement.disagreements)


@pytest.mark.slow
@pytest.mark.parametrize("fixture", ["lattice2", "four_ray", "example10", "example13", "example14"])
def test_sampled_checks_on_the_zoo(request, fixture):
    rep = request.getfixturevalue(f"{fixture}_rep")
    agreement = sample_pervasiveness_checks(rep, decide_pervasive(rep), samples=200)
    assert agreement.ok, agreement.disagreements
    assert agreement.sup_samples == 200


@pytest.mark.slow
def test_sampled_checks_on_a_random_model():
    rep = functional_representation(make_random(1, 3, 5))
    agreement = sample_pervasiveness_checks(rep, decide_pervasive(rep), samples=200, seed=1)
    assert agreement.ok, agreement.disagreements


@pytest.mark.slow
def test_harness_at_full_size():
    config = AnalysisConfig(harness_count=200, harness_max_dim=4, harness_max_rays=8)
    start = time.perf_counter()
    result = run_harness(0, config)
    elapsed = time.perf_counter() - start
    assert result.ok, result.violations
    assert len(result.verdicts) + len(result.errors) == 200
    assert len(result.verdicts) >= 100
    assert elapsed < 300


@pytest.mark.slow
@pytest.mark.parametrize(
    "build, limit",
    [
        (lambda: make_classic("simplicial", {"n": 1}), 1),
        (lambda: make_classic("simplicial", {"n": 2}), 1),
        (lambda: make_classic("simplicial", {"n": 3}), 1),
        (lambda: make_classic("four_ray"), 1),
        (lambda: make_example14(3), 10),
        (lambda: make_example13(4), 10),
        (lambda: make_example10(4, 4), 10),
    ],
    ids=["simplicial1", "simplicial2", "simplicial3", "four_ray", "example14", "example13", "example10"],
)
def test_full_analysis_time(build, limit):
    model = build()
    start = time.perf_counter()
    analyze_all(model, AnalysisConfig())
    assert time.perf_counter() - start < limit
