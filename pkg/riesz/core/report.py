"""Decision reports, witnesses and certificates."""

import functools
import time
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Sequence

from riesz.core.lp import LPOutcome, LPStatus, counting_lps
from riesz.core.rational import QVector, dot


class Property(str, Enum):
    POINTED = "pointed"
    DIRECTED = "directed"
    RDP = "rdp"
    PERVASIVE = "pervasive"
    WEAKLY_PERVASIVE = "weakly_pervasive"
    FORDABLE = "fordable"
    PROPERTY_P = "property_P"


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers y >= 0 with y^T A = 0 and y.b > 0 for the system A x >= b."""

    rows: tuple[QVector, ...]
    rhs: QVector
    multipliers: QVector

    @classmethod
    def from_outcome(cls, outcome: LPOutcome) -> "FarkasCertificate":
        if outcome.status is not LPStatus.INFEASIBLE:
            raise ValueError(f"no Farkas certificate for a {outcome.status.value} LP")
        return cls(outcome.rows, outcome.rhs, outcome.dual)

    def holds(self) -> bool:
        y = self.multipliers
        if len(y) != len(self.rows) or any(v < 0 for v in y):
            return False
        width = len(self.rows[0]) if self.rows else 0
        combined = [Fraction(0)] * width
        for coefficient, row in zip(y, self.rows):
            for i, a in enumerate(row):
                combined[i] += coefficient * a
        return all(v == 0 for v in combined) and dot(y, self.rhs) > 0


@dataclass(frozen=True)
class LineWitness:
    direction: QVector


@dataclass(frozen=True)
class HyperplaneWitness:
    normal: QVector


@dataclass(frozen=True)
class InterpolationWitness:
    """x1, x2 <= x3, x4 with no z between them."""

    lower: tuple[QVector, ...]
    upper: tuple[QVector, ...]
    certificate: FarkasCertificate | None
    simpliciality_only: bool = False


@dataclass(frozen=True)
class DecompositionWitness:
    """0 <= z <= x1 + x2 with no split z = z1 + z2, 0 <= z1 <= x1, 0 <= z2 <= x2."""

    z: QVector
    x1: QVector
    x2: QVector
    certificate: FarkasCertificate


@dataclass(frozen=True)
class PervasivenessWitness:
    """b whose positive part dominates no strictly positive element of X."""

    b: QVector
    positive_support: frozenset[int]
    certificate: FarkasCertificate


@dataclass(frozen=True)
class PairWitness:
    """Positive b1, b2 whose meet dominates no strictly positive element of X."""

    b1: QVector
    b2: QVector
    support: frozenset[int]
    certificate: FarkasCertificate


@dataclass(frozen=True)
class MeetWitness:
    elements: tuple[QVector, ...]
    support: frozenset[int]
    certificate: FarkasCertificate


@dataclass(frozen=True)
class FordabilityWitness:
    """Coordinate j with no s in X supported exactly at j.

    ``combination`` expresses row j through the other rows (zero at j), which
    is the reason every s vanishing off j also vanishes at j.
    """

    coordinate: int
    label: str
    kernel: tuple[QVector, ...]
    combination: QVector


@dataclass(frozen=True)
class DecisionReport:
    property: Property
    verdict: bool
    witness: Any = None
    certificate: dict[str, Any] = field(default_factory=dict)
    lp_count: int = 0
    time_ms: int = 0


def measured(func: Callable[..., DecisionReport]) -> Callable[..., DecisionReport]:
    """Fill in lp_count and time_ms of the report a decider returns."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> DecisionReport:
        start = time.perf_counter()
        with counting_lps() as box:
            report = func(*args, **kwargs)
        elapsed = int((time.perf_counter() - start) * 1000)
        return replace(report, lp_count=box[0], time_ms=elapsed)

    return wrapper


def support_label(support: Sequence[int] | frozenset[int], labels: Sequence[str]) -> list[str]:
    return [labels[j] for j in sorted(support)]
