"""Implication suite and random-model harness."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from riesz.core.cover import (
    FunctionalRepresentation,
    Positivity,
    functional_representation,
    positivity_oracle,
    sup_over_interval,
)
from riesz.core.deciders import (
    decide_fordable,
    decide_pervasive,
    decide_property_P,
    decide_weakly_pervasive,
    theorem5_check,
    thm7_witness_check,
)
from riesz.core.errors import ArgumentError, CapacityError, SearchBudgetExceeded
from riesz.core.model import Comparison, PreRieszModel, compare, decide_rdp, random_element, random_positive
from riesz.core.rational import add, is_zero, positive_part, zeros
from riesz.core.report import DecisionReport, Property
from riesz.core.zoo import make_example10, make_random
from riesz.utils.config import AnalysisConfig


logger = logging.getLogger(__name__)

# (premise, conclusion) pairs that hold in every pre-Riesz space
IMPLICATIONS = (
    (Property.PERVASIVE, Property.WEAKLY_PERVASIVE),
    (Property.PERVASIVE, Property.FORDABLE),
    (Property.RDP, Property.WEAKLY_PERVASIVE),
    (Property.RDP, Property.PROPERTY_P),
    (Property.PROPERTY_P, Property.WEAKLY_PERVASIVE),
)

# combinations nobody has ruled out; logged when seen
OPEN_CANDIDATES = (
    (Property.FORDABLE, Property.WEAKLY_PERVASIVE),
    (Property.WEAKLY_PERVASIVE, Property.PROPERTY_P),
)


@dataclass
class ModelVerdicts:
    name: str
    reports: dict[Property, DecisionReport]

    def verdict(self, prop: Property) -> bool:
        return self.reports[prop].verdict


@dataclass
class SuiteResult:
    verdicts: list[ModelVerdicts] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    candidates: list[dict] = field(default_factory=list)
    errors: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def analyze_all(model: PreRieszModel, config: AnalysisConfig) -> ModelVerdicts:
    """Run the five property deciders on the canonical cover of ``model``."""
    limits = config.limits
    rep = functional_representation(model, limits)
    reports = {
        Property.PERVASIVE: decide_pervasive(rep, limits),
        Property.WEAKLY_PERVASIVE: decide_weakly_pervasive(rep, limits),
        Property.FORDABLE: decide_fordable(rep),
        Property.RDP: decide_rdp(model, config.rdp_attempts, config.seed, config.rdp_samples),
        Property.PROPERTY_P: decide_property_P(rep, limits),
    }
    return ModelVerdicts(model.name, reports)


def check_implications(row: ModelVerdicts, result: SuiteResult) -> None:
    for premise, conclusion in IMPLICATIONS:
        if row.verdict(premise) and not row.verdict(conclusion):
            logger.error("%s: %s holds but %s fails", row.name, premise.value, conclusion.value)
            result.violations.append(
                {
                    "model": row.name,
                    "implication": f"{premise.value} => {conclusion.value}",
                    "premise": row.reports[premise],
                    "conclusion": row.reports[conclusion],
                }
            )
    for holds, fails in OPEN_CANDIDATES:
        if row.verdict(holds) and not row.verdict(fails):
            logger.warning("%s: %s without %s", row.name, holds.value, fails.value)
            result.candidates.append({"model": row.name, "holds": holds.value, "fails": fails.value})


def run_implication_suite(
    models: list[PreRieszModel],
    config: AnalysisConfig = AnalysisConfig(),
    progress_callback: Callable[[int, int, str], None] | None = None,
) -> SuiteResult:
    """
    Decide every property on every model and collect violated implications.

    Args:
        models: Models to analyze
        config: Limits and search settings
        progress_callback: Optional callback(current, total, name) after each model

    Returns:
        SuiteResult with verdicts, violations, open-question candidates and
        per-model capacity errors
    """
    if not models:
        raise ArgumentError("implication suite needs at least one model")
    result = SuiteResult()
    total = len(models)
    for i, model in enumerate(models):
        try:
            row = analyze_all(model, config)
        except CapacityError as exc:
            logger.warning("%s skipped: %s", model.name, exc)
            result.errors.append({"model": model.name, "error": str(exc)})
        else:
            result.verdicts.append(row)
            check_implications(row, result)
        if progress_callback:
            progress_callback(i + 1, total, model.name)
    return result


def _harness_model(task: tuple[int, int, int, AnalysisConfig]) -> PreRieszModel | str:
    seed, n, rays, config = task
    try:
        return make_random(seed, n, rays, config.harness_coeff_bound, config.limits)
    except SearchBudgetExceeded as exc:
        return str(exc)


def harness_tasks(seed: int, config: AnalysisConfig) -> list[tuple[int, int, int, AnalysisConfig]]:
    """Deterministic (seed, n, rays) triples for the random harness."""
    rng = np.random.default_rng(seed)
    tasks = []
    for i in range(config.harness_count):
        n = int(rng.integers(2, config.harness_max_dim + 1))
        rays = int(rng.integers(n, max(n, config.harness_max_rays) + 1))
        tasks.append((seed * 1_000_003 + i, n, rays, config))
    return tasks


def _suite_one(task: tuple[int, int, int, AnalysisConfig]) -> SuiteResult:
    model = _harness_model(task)
    if isinstance(model, str):
        result = SuiteResult()
        result.errors.append({"model": f"random(seed={task[0]})", "error": model})
        return result
    return run_implication_suite([model], task[3])


def run_harness(
    seed: int,
    config: AnalysisConfig = AnalysisConfig(),
    progress_callback: Callable[[int, int, str], None] | None = None,
) -> SuiteResult:
    """
    Run the implication suite on ``config.harness_count`` seeded random models.

    Models are analyzed in ``config.harness_workers`` processes; results are
    merged in task order so the outcome does not depend on scheduling.
    """
    tasks = harness_tasks(seed, config)
    total = len(tasks)
    merged = SuiteResult()

    def merge(i: int, part: SuiteResult) -> None:
        merged.verdicts += part.verdicts
        merged.violations += part.violations
        merged.candidates += part.candidates
        merged.errors += part.errors
        if progress_callback:
            progress_callback(i + 1, total, part.verdicts[0].name if part.verdicts else "")

    if config.harness_workers > 1:
        with ProcessPoolExecutor(max_workers=config.harness_workers) as pool:
            for i, part in enumerate(pool.map(_suite_one, tasks)):
                merge(i, part)
    else:
        for i, task in enumerate(tasks):
            merge(i, _suite_one(task))
    logger.info(
        "harness: %d models, %d violations, %d candidates, %d errors",
        len(merged.verdicts), len(merged.violations), len(merged.candidates), len(merged.errors),
    )
    return merged


def sweep_example10(
    n_values: list[int], m_values: list[int], config: AnalysisConfig = AnalysisConfig()
) -> list[dict]:
    """All five verdicts of the sequence-space truncation across (N, M)."""
    table = []
    for N in n_values:
        for M in m_values:
            row = analyze_all(make_example10(N, M, config.limits), config)
            entry = {"N": N, "M": M}
            entry.update({prop.value: report.verdict for prop, report in row.reports.items()})
            logger.info("example10 sweep N=%d M=%d: %s", N, M, entry)
            table.append(entry)
    return table


@dataclass
class SampleAgreement:
    """Sampled checkers against the global pervasiveness verdict."""

    thm7_samples: int = 0
    theorem5_samples: int = 0
    sup_samples: int = 0
    disagreements: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements


def sample_pervasiveness_checks(
    rep: FunctionalRepresentation, verdict: DecisionReport, samples: int = 200, seed: int = 0
) -> SampleAgreement:
    """Compare thm7_witness_check, theorem5_check and sup_over_interval with ``verdict``.

    A pervasive model must pass every sample, and every y > 0 in the cover is
    the supremum of the model elements in [0, y]. A non-pervasive one must fail
    both on its own witness; other samples may go either way.
    """
    model = rep.model
    rng = np.random.default_rng(seed)
    origin = zeros(model.dim)
    agreement = SampleAgreement()

    if not verdict.verdict:
        check = thm7_witness_check(rep, verdict.witness.b)
        if check.succeeded:
            agreement.disagreements.append({"check": "thm7", "b": verdict.witness.b})
        y = positive_part(rep.apply(verdict.witness.b))
        if sup_over_interval(rep, y) == y:
            agreement.disagreements.append({"check": "sup", "y": y})

    tries = 0
    while agreement.thm7_samples < samples and tries < 20 * samples:
        tries += 1
        b = random_element(model, rng)
        if compare(model, b, origin) in (Comparison.LESS, Comparison.EQUAL):
            continue
        agreement.thm7_samples += 1
        check = thm7_witness_check(rep, b)
        if verdict.verdict and not check.succeeded:
            agreement.disagreements.append({"check": "thm7", "b": b})

    tries = 0
    while agreement.theorem5_samples < samples and tries < 20 * samples:
        tries += 1
        b_set = [random_positive(model, rng) for _ in range(int(rng.integers(1, 3)))]
        bump = random_positive(model, rng)
        if is_zero(bump):
            continue
        a_set = [add(b_set[0], bump)] + b_set[1:]
        if positivity_oracle(rep, a_set, b_set) is not Positivity.STRICTLY_POSITIVE:
            continue
        agreement.theorem5_samples += 1
        check = theorem5_check(rep, a_set, b_set)
        if verdict.verdict and not check.succeeded:
            agreement.disagreements.append({"check": "theorem5", "A": a_set, "B": b_set})

    tries = 0
    while agreement.sup_samples < samples and tries < 20 * samples:
        tries += 1
        y = tuple(Fraction(int(v)) for v in rng.integers(0, 4, size=rep.m))
        if is_zero(y):
            continue
        agreement.sup_samples += 1
        if verdict.verdict and sup_over_interval(rep, y) != y:
            agreement.disagreements.append({"check": "sup", "y": y})
    return agreement
