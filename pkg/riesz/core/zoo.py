"""Named models: classic cones and finite truncations of function spaces."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from riesz.core.cover import (
    FunctionalRepresentation,
    ambient_representation,
    verify_cover,
)
from riesz.core.deciders import (
    decide_fordable,
    decide_pervasive,
    lemma9_witness_check,
    thm7_witness_check,
)
from riesz.core.errors import ArgumentError, ModelValidationError, SearchBudgetExceeded
from riesz.core.model import ModelSpec, PreRieszModel, SubspaceSpec, build_model, disjoint
from riesz.core.rational import QVector, add, format_rational, is_zero, qvector, sub, unit
from riesz.utils.config import Limits


logger = logging.getLogger(__name__)

ZOO_NAMES = ("simplicial", "four_ray", "example10", "example13", "example14", "random")

RANDOM_BUDGET = 1000


@dataclass(frozen=True)
class ZooSpec:
    name: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0


@dataclass(frozen=True)
class GridFunctionBasis:
    """Functions on [0, oo[ sampled on a finite grid, with exact evaluation."""

    grid: tuple[Fraction, ...]
    labels: tuple[str, ...]
    functions: tuple[Callable[[Fraction], Fraction], ...]

    def column(self, k: int) -> QVector:
        return tuple(self.functions[k](t) for t in self.grid)

    def evaluate(self, coefficients: Sequence[Fraction], t: Fraction) -> Fraction:
        return sum((c * f(t) for c, f in zip(coefficients, self.functions)), Fraction(0))

    def subspace(self) -> SubspaceSpec:
        return SubspaceSpec(
            ambient=len(self.grid),
            basis=tuple(self.column(k) for k in range(len(self.functions))),
            ambient_labels=tuple(f"t={format_rational(t)}" for t in self.grid),
            basis_labels=self.labels,
        )


def make_classic(name: str, params: dict[str, Any] | None = None, limits: Limits = Limits()) -> PreRieszModel:
    params = params or {}
    if name == "simplicial":
        n = int(params.get("n", 2))
        if n < 1:
            raise ArgumentError(f"simplicial needs n >= 1, got {n}")
        rays = tuple(unit(n, j) for j in range(n))
        return build_model(ModelSpec(n, cone_rays=rays, name=f"simplicial({n})"), limits)
    if name == "four_ray":
        rays = qvector_rows([(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)])
        return build_model(ModelSpec(3, cone_rays=rays, name="four_ray"), limits)
    raise ArgumentError(f"unknown classic model {name!r}")


def qvector_rows(rows: Sequence[Sequence[object]]) -> tuple[QVector, ...]:
    return tuple(qvector(r) for r in rows)


# example14: e_n = 1 on [n-1, n[, u_{n,k}(t) = n t on [0, 1/n] plus 1/k at n + 1/k

def _indicator_function(n: int) -> Callable[[Fraction], Fraction]:
    return lambda t: Fraction(1) if n - 1 <= t < n else Fraction(0)


def _ramp_function(n: int, k: int) -> Callable[[Fraction], Fraction]:
    def u(t: Fraction) -> Fraction:
        if 0 <= t <= Fraction(1, n):
            return n * t
        if t == n + Fraction(1, k):
            return Fraction(1, k)
        return Fraction(0)

    return u


def example14_basis(N: int, grid: Sequence[object] | None = None) -> GridFunctionBasis:
    if N < 3:
        raise ArgumentError(f"example14 needs N >= 3, got {N}")
    special = {n + Fraction(1, k) for n in range(1, N + 1) for k in range(1, N + 1)}
    if grid is None:
        points = {Fraction(0)} | {Fraction(1, n) for n in range(1, N + 2)} | special
        points |= {n - Fraction(3, 4) for n in range(1, N + 2)}
    else:
        points = set(qvector(grid))

    missing = []
    if Fraction(0) not in points:
        missing.append("0")
    inside_unit = [t for t in points if 0 < t <= 1]
    if len(inside_unit) < N + 1:
        missing.append(f"{N + 1 - len(inside_unit)} more point(s) of ]0, 1]")
    missing += [format_rational(t) for t in sorted(special - points)]
    for n in range(1, N + 2):
        if not any(n - 1 < t < n and t not in special for t in points):
            missing.append(f"an interior point of [{n - 1}, {n}[")
    if missing:
        raise ArgumentError("example14 grid is missing: " + ", ".join(missing))
    if any(t < 0 for t in points):
        raise ArgumentError("example14 grid points must be >= 0")

    labels: list[str] = []
    functions: list[Callable[[Fraction], Fraction]] = []
    for n in range(1, N + 1):
        labels.append(f"e{n}")
        functions.append(_indicator_function(n))
    for n in range(1, N + 1):
        for k in range(1, N + 1):
            labels.append(f"u{n}{k}" if N < 10 else f"u{n}_{k}")
            functions.append(_ramp_function(n, k))
    return GridFunctionBasis(tuple(sorted(points)), tuple(labels), tuple(functions))


def make_example14(N: int = 3, grid: Sequence[object] | None = None, limits: Limits = Limits()) -> PreRieszModel:
    subspace = example14_basis(N, grid).subspace()
    spec = ModelSpec(len(subspace.basis), subspace=subspace, name=f"example14(N={N})")
    return build_model(spec, limits)


# example13: polynomials of degree <= d on a grid in [0, 1]

def _monomial(p: int) -> Callable[[Fraction], Fraction]:
    return lambda t: t**p


def example13_basis(d: int, grid: Sequence[object] | None = None) -> GridFunctionBasis:
    if d < 2:
        raise ArgumentError(f"example13 needs d >= 2, got {d}")
    half = Fraction(1, 2)
    if grid is None:
        points = {Fraction(0), Fraction(1, 4), half}
        points |= {half + Fraction(j, 2 * (d + 3)) for j in range(1, d + 4)}
    else:
        points = set(qvector(grid))

    missing = [format_rational(t) for t in (Fraction(1, 4), half) if t not in points]
    upper = [t for t in points if half < t <= 1]
    if len(upper) < d + 1:
        missing.append(f"{d + 1 - len(upper)} more point(s) of ]1/2, 1]")
    if missing:
        raise ArgumentError("example13 grid is missing: " + ", ".join(missing))
    if any(t < 0 or t > 1 for t in points):
        raise ArgumentError("example13 grid points must lie in [0, 1]")

    labels = tuple(f"t{p}" for p in range(d + 1))
    functions = tuple(_monomial(p) for p in range(d + 1))
    return GridFunctionBasis(tuple(sorted(points)), labels, functions)


def make_example13(d: int = 4, grid: Sequence[object] | None = None, limits: Limits = Limits()) -> PreRieszModel:
    subspace = example13_basis(d, grid).subspace()
    spec = ModelSpec(d + 1, subspace=subspace, name=f"example13(d={d})")
    return build_model(spec, limits)


# example10: sequences on -N..M with sum_k x[-k] / 2^k = x[M]

def example10_subspace(N: int, M: int) -> SubspaceSpec:
    if N < 2 or M < 1:
        raise ArgumentError(f"example10 needs N >= 2 and M >= 1, got N={N}, M={M}")
    ambient = N + M + 1
    labels = tuple(f"x[-{k}]" for k in range(1, N + 1)) + tuple(f"x[{j}]" for j in range(M + 1))
    limit = ambient - 1
    basis = []
    for k in range(1, N + 1):
        vector = list(unit(ambient, k - 1))
        vector[limit] = Fraction(1, 2**k)
        basis.append(tuple(vector))
    basis += [unit(ambient, N + j) for j in range(M)]
    basis_labels = tuple(f"g{k}" for k in range(1, N + 1)) + tuple(f"e{j}" for j in range(M))
    return SubspaceSpec(ambient, tuple(basis), labels, basis_labels)


def make_example10(N: int = 4, M: int = 4, limits: Limits = Limits()) -> PreRieszModel:
    subspace = example10_subspace(N, M)
    spec = ModelSpec(N + M, subspace=subspace, name=f"example10(N={N},M={M})")
    return build_model(spec, limits)


def make_random(
    seed: int, n: int = 3, ray_count: int = 5, coeff_bound: int = 3, limits: Limits = Limits()
) -> PreRieszModel:
    """Integer rays drawn from [-bound, bound]^n, redrawn until pointed and generating."""
    if not 1 <= n <= 6:
        raise ArgumentError(f"random models need 1 <= n <= 6, got {n}")
    if not n <= ray_count <= 10:
        raise ArgumentError(f"random models need n <= rays <= 10, got {ray_count}")
    if coeff_bound < 1:
        raise ArgumentError(f"coeff_bound must be positive, got {coeff_bound}")

    rng = np.random.default_rng(seed)
    for attempt in range(RANDOM_BUDGET):
        draw = rng.integers(-coeff_bound, coeff_bound + 1, size=(ray_count, n))
        rays = tuple(tuple(Fraction(int(v)) for v in row) for row in draw)
        if any(is_zero(r) for r in rays):
            continue
        spec = ModelSpec(n, cone_rays=rays, name=f"random(seed={seed},n={n},rays={ray_count})")
        try:
            model = build_model(spec, limits)
        except ModelValidationError:
            continue
        logger.debug("random model seed=%d accepted after %d draws", seed, attempt + 1)
        return model
    raise SearchBudgetExceeded(f"no pointed generating cone after {RANDOM_BUDGET} draws (seed {seed})")


def build(spec: ZooSpec, limits: Limits = Limits()) -> PreRieszModel:
    params = dict(spec.params)
    grid = params.pop("grid", None)
    if spec.name in ("simplicial", "four_ray"):
        return make_classic(spec.name, params, limits)
    if spec.name == "example14":
        return make_example14(int(params.get("N", 3)), grid, limits)
    if spec.name == "example13":
        return make_example13(int(params.get("d", 4)), grid, limits)
    if spec.name == "example10":
        return make_example10(int(params.get("N", 4)), int(params.get("M", 4)), limits)
    if spec.name == "random":
        return make_random(
            spec.seed,
            int(params.get("n", 3)),
            int(params.get("rays", 5)),
            int(params.get("coeff_bound", 3)),
            limits,
        )
    raise ArgumentError(f"unknown zoo model {spec.name!r}; choose from {', '.join(ZOO_NAMES)}")


# Worked witness chains

def _check_payload(result) -> dict[str, Any]:
    return {
        "status": result.status.value,
        "support": sorted(result.support),
        "element": result.element,
        "certificate": result.certificate,
    }


def example14_chain(model: PreRieszModel, rep: FunctionalRepresentation) -> dict[str, Any]:
    """b1 = 2 u12 and b2 = e2 are not disjoint, yet nothing lies in 0 < x <= b1, b2."""
    subspace = model.subspace
    grid_labels = subspace.ambient_labels
    b1 = model.element(u12=2)
    b2 = model.element(e2=1)
    v = model.element(u13=2, e2=1)
    values = {name: model.values(x) for name, x in (("b1", b1), ("b2", b2), ("v", v))}

    difference = sub(values["b1"], values["b2"])
    dominates_difference = all(a >= abs(d) for a, d in zip(values["v"], difference))
    total = add(values["b1"], values["b2"])
    violations = [
        {"point": grid_labels[i], "v": values["v"][i], "b1+b2": total[i]}
        for i in range(subspace.ambient)
        if values["v"][i] < abs(total[i])
    ]
    relation = disjoint(model, b1, b2)
    meet = lemma9_witness_check(rep, b1, b2)
    return {
        "kind": "example14_chain",
        "elements": {"b1": b1, "b2": b2, "v": v},
        "values": values,
        "v_above_plus_minus_difference": dominates_difference,
        "v_not_above_plus_minus_sum": violations,
        "disjoint": relation.disjoint,
        "meet_check": _check_payload(meet),
    }


def example13_chain(model: PreRieszModel, rep: FunctionalRepresentation) -> dict[str, Any]:
    """b(t) = -16 (t - 1/4)^2 + 1 has no x with 0 < x <= u for every u >= 0, b."""
    subspace = model.subspace
    grid = [Fraction(label[2:]) for label in subspace.ambient_labels]
    half = Fraction(1, 2)
    d = model.dim - 1
    b = (Fraction(0), Fraction(8), Fraction(-16)) + (Fraction(0),) * (d - 2)
    b_values = model.values(b)

    parabolas = []
    for s in (t for t in grid if t > half):
        # (t - s)^2 / (1/2 - s)^2
        factor = 1 / (half - s) ** 2
        coefficients = (s * s * factor, -2 * s * factor, factor) + (Fraction(0),) * (d - 2)
        u = model.values(coefficients)
        parabolas.append(
            {
                "s": s,
                "coefficients": coefficients,
                "at_half": u[grid.index(half)],
                "at_s": u[grid.index(s)],
                "above_zero_and_b": all(x >= 0 and x >= y for x, y in zip(u, b_values)),
            }
        )
    check = thm7_witness_check(rep, b)
    return {
        "kind": "example13_chain",
        "b": b,
        "b_values": b_values,
        "maximum": {"point": Fraction(1, 4), "value": b_values[grid.index(Fraction(1, 4))]},
        "b_nonpositive_beyond_half": all(y <= 0 for t, y in zip(grid, b_values) if t > half),
        "parabolas": parabolas,
        "thm7_check": _check_payload(check),
    }


def example10_chain(model: PreRieszModel, rep: FunctionalRepresentation) -> dict[str, Any]:
    """Coordinate x[-1] carries no element of X alone; in the ambient coordinates
    this makes the embedding non-fordable and non-pervasive."""
    ambient = ambient_representation(model)
    fordable = decide_fordable(ambient)
    pervasive = decide_pervasive(ambient)
    density = verify_cover(ambient)
    return {
        "kind": "example10_chain",
        "ambient_labels": list(ambient.labels),
        "ambient_F": ambient.rows,
        "ambient_order_dense": density.order_dense,
        "ambient_fordable": fordable,
        "ambient_pervasive": pervasive,
        "canonical_m": rep.m,
    }


CHAINS: dict[str, Callable[[PreRieszModel, FunctionalRepresentation], dict[str, Any]]] = {
    "example14": example14_chain,
    "example13": example13_chain,
    "example10": example10_chain,
}


def chain_for(model: PreRieszModel) -> Callable[[PreRieszModel, FunctionalRepresentation], dict[str, Any]] | None:
    kind = model.name.split("(")[0]
    return CHAINS.get(kind)
