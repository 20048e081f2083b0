"""Standalone re-check of every certificate in a report.

Works on the decoded JSON document alone with plain ``Fraction`` arithmetic;
nothing here calls a decider, the LP solver or the double description code.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence


logger = logging.getLogger(__name__)

Vector = tuple[Fraction, ...]


@dataclass
class VerificationResult:
    checked: int = 0
    issues: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues


def _vec(values: Iterable[Any]) -> Vector:
    return tuple(Fraction(str(v)) for v in values)


def _mat(rows: Iterable[Iterable[Any]]) -> list[Vector]:
    return [_vec(r) for r in rows]


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def _apply(rows: Sequence[Vector], x: Sequence[Fraction]) -> Vector:
    return tuple(_dot(r, x) for r in rows)


def _support(v: Sequence[Fraction]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(v) if x != 0)


def _rank(rows: Sequence[Vector]) -> int:
    work = [list(r) for r in rows]
    rank = 0
    width = len(work[0]) if work else 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                factor = work[i][col] / work[rank][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[rank])]
        rank += 1
    return rank


def _farkas_holds(certificate: dict[str, Any]) -> bool:
    rows = _mat(certificate["rows"])
    rhs = _vec(certificate["rhs"])
    y = _vec(certificate["multipliers"])
    if len(y) != len(rows) or any(v < 0 for v in y):
        return False
    width = len(rows[0]) if rows else 0
    combined = [sum((c * r[i] for c, r in zip(y, rows)), Fraction(0)) for i in range(width)]
    return all(v == 0 for v in combined) and _dot(y, rhs) > 0


def _support_system(rows: Sequence[Vector], t: frozenset[int]) -> tuple[list[Vector], Vector]:
    n = len(rows[0])
    system = list(rows)
    rhs = [Fraction(0)] * len(rows)
    for j, row in enumerate(rows):
        if j not in t:
            system.append(tuple(-x for x in row))
            rhs.append(Fraction(0))
    total = tuple(sum((rows[j][i] for j in t), Fraction(0)) for i in range(n))
    system.append(total)
    rhs.append(Fraction(1))
    return system, tuple(rhs)


class ReportVerifier:
    """Re-checks one decoded report; problems accumulate in ``result.issues``."""

    def __init__(self, report: dict[str, Any]):
        self.report = report
        model = report["model"]
        self.dimension = int(model["input"]["dimension"])
        self.rays = _mat(model["canonical"]["rays"])
        self.normals = _mat(model["canonical"]["normals"])
        self.subspace = model["input"].get("subspace")
        self.F = _mat(report["cover"]["F"])
        self.labels = list(report["cover"].get("labels", []))
        self.result = VerificationResult()

    def expect(self, condition: bool, path: str, message: str) -> bool:
        self.result.checked += 1
        if not condition:
            self.result.issues.append(f"{path}: {message}")
            logger.debug("verification issue at %s: %s", path, message)
        return condition

    def in_cone(self, x: Vector) -> bool:
        return all(_dot(f, x) >= 0 for f in self.normals)

    def positive(self, x: Vector) -> bool:
        return self.in_cone(x) and any(v != 0 for v in x)

    def certificate_for(self, certificate: dict[str, Any] | None, rows: Sequence[Vector], rhs: Vector, path: str) -> None:
        if not self.expect(certificate is not None, path, "certificate missing"):
            return
        same = _mat(certificate["rows"]) == list(rows) and _vec(certificate["rhs"]) == rhs
        self.expect(same, path, "certificate is for a different system")
        self.expect(_farkas_holds(certificate), path, "Farkas multipliers do not certify infeasibility")

    def support_certificate(self, F: Sequence[Vector], t: frozenset[int], certificate: dict[str, Any] | None, path: str) -> None:
        rows, rhs = _support_system(F, t)
        self.certificate_for(certificate, rows, rhs, path)

    # cover

    def verify_cover(self) -> None:
        cover = self.report["cover"]
        path = "cover"
        m = len(self.F)
        self.expect(int(cover["m"]) == m, path, "m does not match F")
        for i, r in enumerate(self.rays):
            self.expect(all(v >= 0 for v in _apply(self.F, r)), f"{path}.F", f"ray {i} has a negative image")
        if cover["kind"] == "canonical":
            self.expect(set(self.F) == set(self.normals), f"{path}.F", "rows differ from the facet normals of K")
        verified = cover["verified"]
        if verified["majorizing"]:
            d = _vec(cover["majorizing_point"])
            self.expect(all(v >= 1 for v in _apply(self.F, d)), f"{path}.majorizing_point", "F d >= 1 fails")
        if verified["order_dense"]:
            covered = set()
            for i, entry in enumerate(cover["density"]):
                k, sign = int(entry["k"]), int(entry["sign"])
                values = _apply(self.F, _vec(entry["point"]))
                target = [Fraction(sign if j == k else 0) for j in range(m)]
                where = f"{path}.density[{i}]"
                self.expect(all(a >= b for a, b in zip(values, target)), where, "point is not above the target")
                for j in entry["coordinates"]:
                    if self.expect(values[j] == target[j], where, f"not tight at coordinate {j}"):
                        covered.add((j, k, sign))
            expected = {(j, k, s) for j in range(m) for k in range(m) for s in (1, -1)}
            self.expect(covered == expected, f"{path}.density", "order density certificates are incomplete")

    # decision reports

    def verify_result(self, entry: dict[str, Any], F: Sequence[Vector], labels: Sequence[str], path: str) -> None:
        prop, verdict, witness = entry["property"], entry["verdict"], entry.get("witness")
        certificate = entry.get("certificate") or {}
        n = self.dimension

        if prop == "pointed":
            if verdict:
                self.expect(not any(tuple(-x for x in r) in self.rays for r in self.rays), path, "rays contain a line")
            else:
                r = _vec(witness["direction"])
                self.expect(self.in_cone(r) and self.in_cone(tuple(-x for x in r)), path, "direction is not a line of K")
        elif prop == "directed":
            if verdict:
                self.expect(_rank(self.rays) == n, path, "rays do not span")
            else:
                f = _vec(witness["normal"])
                self.expect(any(f) and all(_dot(f, r) == 0 for r in self.rays), path, "normal does not annihilate the rays")
        elif prop == "rdp":
            simplicial = len(self.rays) == n and _rank(self.rays) == n
            if verdict:
                self.expect(simplicial, path, "RDP claimed for a non-simplicial cone")
            elif witness.get("simpliciality_only"):
                self.expect(not simplicial, path, "simplicial cone reported without RDP")
            elif witness.get("type") == "DecompositionWitness":
                z, x1, x2 = _vec(witness["z"]), _vec(witness["x1"]), _vec(witness["x2"])
                self.expect(self.in_cone(z) and self.in_cone(x1) and self.in_cone(x2), path, "z, x1, x2 are not positive")
                slack = tuple(a + b - c for a, b, c in zip(x1, x2, z))
                self.expect(self.in_cone(slack), path, "z is not below x1 + x2")
                rows, rhs = [], []
                for f in self.normals:
                    minus = tuple(-x for x in f)
                    rows += [f, minus, minus, f]
                    rhs += [Fraction(0), -_dot(f, x1), -_dot(f, z), _dot(f, z) - _dot(f, x2)]
                self.certificate_for(witness["certificate"], rows, tuple(rhs), path)
            else:
                lower, upper = _mat(witness["lower"]), _mat(witness["upper"])
                for l in lower:
                    for u in upper:
                        self.expect(self.in_cone(tuple(b - a for a, b in zip(l, u))), path, "lower element not below upper")
                rows, rhs = [], []
                for l in lower:
                    for f in self.normals:
                        rows.append(f)
                        rhs.append(_dot(f, l))
                for u in upper:
                    for f in self.normals:
                        rows.append(tuple(-x for x in f))
                        rhs.append(-_dot(f, u))
                self.certificate_for(witness["certificate"], rows, tuple(rhs), path)
        elif prop == "pervasive":
            if verdict:
                supports = [sorted(_support(_apply(F, r))) for r in self.rays]
                self.expect(supports == certificate.get("ray_supports"), path, "ray supports differ")
            else:
                b = _vec(witness["b"])
                p = frozenset(witness["positive_support"])
                values = _apply(F, b)
                self.expect(frozenset(j for j, v in enumerate(values) if v > 0) == p, path, "F b is not positive exactly on P")
                self.expect(bool(p), path, "empty positive support")
                self.support_certificate(F, p, witness["certificate"], path)
        elif prop == "weakly_pervasive":
            if not verdict:
                b1, b2 = _vec(witness["b1"]), _vec(witness["b2"])
                t = frozenset(witness["support"])
                self.expect(self.positive(b1) and self.positive(b2), path, "b1, b2 are not positive")
                self.expect(_support(_apply(F, b1)) & _support(_apply(F, b2)) == t and bool(t), path, "support is not the meet support")
                self.support_certificate(F, t, witness["certificate"], path)
        elif prop == "property_P":
            if not verdict:
                elements = _mat(witness["elements"])
                t = frozenset(witness["support"])
                meet = frozenset(range(len(F)))
                for x in elements:
                    self.expect(self.positive(x), path, "element is not positive")
                    meet &= _support(_apply(F, x))
                self.expect(meet == t and bool(t), path, "support is not the meet support")
                self.support_certificate(F, t, witness["certificate"], path)
        elif prop == "fordable":
            if verdict:
                singletons = certificate.get("singletons", {})
                self.expect(set(singletons) == set(labels), path, "a coordinate has no singleton element")
                for label, s in singletons.items():
                    j = labels.index(label)
                    self.expect(_support(_apply(F, _vec(s))) == {j}, path, f"element for {label} is not supported there alone")
            else:
                j = int(witness["coordinate"])
                c = _vec(witness["combination"])
                combined = tuple(sum((c[i] * F[i][col] for i in range(len(F))), Fraction(0)) for col in range(n))
                self.expect(c[j] == 0 and combined == F[j], path, "row is not a combination of the other rows")
        else:
            self.expect(False, path, f"unknown property {prop!r}")

    # worked chains

    def _ambient(self, coefficients: Sequence[Any]) -> Vector:
        basis = _mat(self.subspace["basis"])
        c = _vec(coefficients)
        return tuple(sum((c[k] * basis[k][i] for k in range(len(basis))), Fraction(0)) for i in range(len(basis[0])))

    def verify_example14(self, chain: dict[str, Any], path: str) -> None:
        values = {name: self._ambient(x) for name, x in chain["elements"].items()}
        for name, v in values.items():
            self.expect(v == _vec(chain["values"][name]), path, f"values of {name} differ")
        b1, b2, v = values["b1"], values["b2"], values["v"]
        above = all(a >= abs(x - y) for a, x, y in zip(v, b1, b2))
        self.expect(above == chain["v_above_plus_minus_difference"], path, "v against b1 - b2")
        labels = self.subspace["ambient_labels"]
        for violation in chain["v_not_above_plus_minus_sum"]:
            i = labels.index(violation["point"])
            self.expect(v[i] < abs(b1[i] + b2[i]), path, f"no violation at {violation['point']}")
        meet_support = _support(_apply(self.F, _vec(chain["elements"]["b1"]))) & _support(
            _apply(self.F, _vec(chain["elements"]["b2"]))
        )
        self.expect(chain["disjoint"] == (not meet_support), path, "disjointness claim")
        check = chain["meet_check"]
        if check["status"] == "failure":
            self.expect(frozenset(check["support"]) == meet_support, path, "meet support")
            self.support_certificate(self.F, meet_support, check["certificate"], f"{path}.meet_check")

    def verify_example13(self, chain: dict[str, Any], path: str) -> None:
        b = _vec(chain["b"])
        values = self._ambient(b)
        self.expect(values == _vec(chain["b_values"]), path, "values of b differ")
        grid = [Fraction(label.split("=", 1)[1]) for label in self.subspace["ambient_labels"]]
        half = Fraction(1, 2)
        quarter = values[grid.index(Fraction(1, 4))]
        self.expect(quarter == Fraction(str(chain["maximum"]["value"])) == 1, path, "b(1/4) = 1")
        self.expect(all(y <= 0 for t, y in zip(grid, values) if t > half) == chain["b_nonpositive_beyond_half"], path, "b beyond 1/2")
        for i, parabola in enumerate(chain["parabolas"]):
            s = Fraction(str(parabola["s"]))
            u = self._ambient(parabola["coefficients"])
            where = f"{path}.parabolas[{i}]"
            self.expect(u[grid.index(half)] == 1, where, "u_s(1/2) = 1")
            self.expect(u[grid.index(s)] == 0, where, "u_s(s) = 0")
            self.expect(all(x >= 0 and x >= y for x, y in zip(u, values)) == parabola["above_zero_and_b"], where, "u_s >= 0, b")
        check = chain["thm7_check"]
        if check["status"] == "failure":
            positive = frozenset(j for j, v in enumerate(_apply(self.F, b)) if v > 0)
            self.expect(frozenset(check["support"]) == positive, path, "positive support of b")
            self.support_certificate(self.F, positive, check["certificate"], f"{path}.thm7_check")

    def verify_example10(self, chain: dict[str, Any], path: str) -> None:
        basis = _mat(self.subspace["basis"])
        evaluation = [tuple(v[i] for v in basis) for i in range(len(basis[0]))]
        ambient_F = [row for row in evaluation if any(row)]
        self.expect(ambient_F == _mat(chain["ambient_F"]), path, "ambient rows differ")
        labels = chain["ambient_labels"]
        for key in ("ambient_fordable", "ambient_pervasive"):
            self.verify_result(chain[key], ambient_F, labels, f"{path}.{key}")

    CHAIN_CHECKERS = {
        "example14_chain": verify_example14,
        "example13_chain": verify_example13,
        "example10_chain": verify_example10,
    }

    def run(self) -> VerificationResult:
        self.verify_cover()
        for i, entry in enumerate(self.report["results"]):
            self.verify_result(entry, self.F, self.labels, f"results[{i}]")
        for name, chain in sorted(self.report["checks"].items()):
            checker = self.CHAIN_CHECKERS.get(chain.get("kind"))
            if self.expect(checker is not None, f"checks.{name}", "unknown check kind"):
                checker(self, chain, f"checks.{name}")
        logger.info("verified %d facts, %d issue(s)", self.result.checked, len(self.result.issues))
        return self.result


def verify_report(report: dict[str, Any]) -> VerificationResult:
    return ReportVerifier(report).run()
