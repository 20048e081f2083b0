"""Model and report files: JSON with exact rationals written as "p/q" strings."""

import dataclasses
import json
import logging
import os
import tempfile
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

from riesz.core.cover import CoverVerification, FunctionalRepresentation
from riesz.core.errors import ParseError
from riesz.core.model import ModelSpec, PreRieszModel, SubspaceSpec
from riesz.core.rational import QVector, format_rational, parse_rational


logger = logging.getLogger(__name__)

REPORT_FORMAT = "riesz-report/1"

_MODEL_KEYS = {"dimension", "name", "cone_rays", "cone_inequalities", "subspace"}
_SUBSPACE_KEYS = {"ambient", "basis", "ambient_labels", "basis_labels"}
_REPORT_KEYS = {"format", "model", "cover", "results", "checks", "suite_violations"}


def encode(value: Any) -> Any:
    """JSON-ready form of rationals, vectors, enums, sets and dataclasses."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (set, frozenset)):
        return sorted(encode(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, dict):
        return {str(encode(k)): encode(v) for k, v in value.items()}
    if dataclasses.is_dataclass(value):
        data = {"type": type(value).__name__}
        for f in dataclasses.fields(value):
            data[f.name] = encode(getattr(value, f.name))
        return data
    raise TypeError(f"cannot encode {type(value).__name__}")


def dumps(data: Any) -> str:
    return json.dumps(encode(data), indent=2, sort_keys=True) + "\n"


def write_atomic(path: str | Path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, temp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(temp, target)
    except BaseException:
        Path(temp).unlink(missing_ok=True)
        raise
    logger.info("wrote %s", target)


# Model files

def _rows(rows: tuple[QVector, ...]) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in rows]


def model_to_dict(spec: ModelSpec) -> dict[str, Any]:
    data: dict[str, Any] = {"dimension": spec.dimension}
    if spec.name:
        data["name"] = spec.name
    if spec.cone_rays is not None:
        data["cone_rays"] = _rows(spec.cone_rays)
    if spec.cone_inequalities is not None:
        data["cone_inequalities"] = _rows(spec.cone_inequalities)
    if spec.subspace is not None:
        subspace: dict[str, Any] = {
            "ambient": spec.subspace.ambient,
            "basis": _rows(spec.subspace.basis),
        }
        if spec.subspace.ambient_labels:
            subspace["ambient_labels"] = list(spec.subspace.ambient_labels)
        if spec.subspace.basis_labels:
            subspace["basis_labels"] = list(spec.subspace.basis_labels)
        data["subspace"] = subspace
    return data


def dumps_model(spec: ModelSpec) -> str:
    return dumps(model_to_dict(spec))


def _count(value: Any, field: str) -> int:
    if isinstance(value, bool):
        raise ParseError("expected a positive integer", field)
    if isinstance(value, int):
        number = value
    elif isinstance(value, str) and value.strip().isdigit():
        number = int(value)
    else:
        raise ParseError(f"expected a positive integer, got {value!r}", field)
    if number < 1:
        raise ParseError(f"expected a positive integer, got {number}", field)
    return number


def _vector_rows(value: Any, width: int, field: str) -> tuple[QVector, ...]:
    if not isinstance(value, list):
        raise ParseError("expected a list of vectors", field)
    rows = []
    for i, row in enumerate(value):
        path = f"{field}[{i}]"
        if not isinstance(row, list):
            raise ParseError("expected a list of rationals", path)
        if len(row) != width:
            raise ParseError(f"expected {width} entries, got {len(row)}", path)
        rows.append(tuple(parse_rational(x, f"{path}[{j}]") for j, x in enumerate(row)))
    return tuple(rows)


def _labels(value: Any, size: int, field: str) -> tuple[str, ...]:
    if value is None:
        return ()
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError("expected a list of strings", field)
    if len(value) != size:
        raise ParseError(f"expected {size} labels, got {len(value)}", field)
    return tuple(value)


def model_from_dict(data: Any) -> ModelSpec:
    if not isinstance(data, dict):
        raise ParseError("model file must be a JSON object")
    unknown = sorted(set(data) - _MODEL_KEYS)
    if unknown:
        raise ParseError(f"unknown field(s) {', '.join(unknown)}", unknown[0])
    if "dimension" not in data:
        raise ParseError("missing", "dimension")
    n = _count(data["dimension"], "dimension")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ParseError("expected a string", "name")

    present = [key for key in ("cone_rays", "cone_inequalities", "subspace") if key in data]
    if len(present) != 1:
        raise ParseError("exactly one of cone_rays, cone_inequalities, subspace is required", "cone_rays")

    if "cone_rays" in data:
        return ModelSpec(n, cone_rays=_vector_rows(data["cone_rays"], n, "cone_rays"), name=name)
    if "cone_inequalities" in data:
        rows = _vector_rows(data["cone_inequalities"], n, "cone_inequalities")
        return ModelSpec(n, cone_inequalities=rows, name=name)

    raw = data["subspace"]
    if not isinstance(raw, dict):
        raise ParseError("expected an object", "subspace")
    unknown = sorted(set(raw) - _SUBSPACE_KEYS)
    if unknown:
        raise ParseError(f"unknown field(s) {', '.join(unknown)}", f"subspace.{unknown[0]}")
    for key in ("ambient", "basis"):
        if key not in raw:
            raise ParseError("missing", f"subspace.{key}")
    ambient = _count(raw["ambient"], "subspace.ambient")
    basis = _vector_rows(raw["basis"], ambient, "subspace.basis")
    if len(basis) != n:
        raise ParseError(f"expected {n} basis vectors, got {len(basis)}", "subspace.basis")
    subspace = SubspaceSpec(
        ambient,
        basis,
        _labels(raw.get("ambient_labels"), ambient, "subspace.ambient_labels"),
        _labels(raw.get("basis_labels"), n, "subspace.basis_labels"),
    )
    return ModelSpec(n, subspace=subspace, name=name)


def _load_json(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}", what) from exc


def loads_model(text: str) -> ModelSpec:
    return model_from_dict(_load_json(text, "model file"))


# Report files

def build_report(
    model: PreRieszModel,
    cover: dict[str, Any],
    results: list[Any],
    checks: dict[str, Any] | None = None,
    suite_violations: list[Any] | None = None,
    record_timing: bool = True,
) -> dict[str, Any]:
    """Assemble a report document; ``cover`` comes from ``cover_section``."""
    encoded_results = encode(results)
    if not record_timing:
        for entry in encoded_results:
            entry["time_ms"] = 0
        _zero_nested_timing(checks)
    return {
        "format": REPORT_FORMAT,
        "model": {
            "input": model_to_dict(model.spec),
            "canonical": {"rays": _rows(model.cone.rays), "normals": _rows(model.cone.normals)},
        },
        "cover": encode(cover),
        "results": encoded_results,
        "checks": encode(checks or {}),
        "suite_violations": encode(suite_violations or []),
    }


def _zero_nested_timing(value: Any) -> None:
    """Zero the time_ms of decision reports nested in ``value``, in place."""
    if isinstance(value, dict):
        for key, item in list(value.items()):
            if dataclasses.is_dataclass(item) and hasattr(item, "time_ms"):
                value[key] = dataclasses.replace(item, time_ms=0)
            else:
                _zero_nested_timing(item)


def cover_section(rep: FunctionalRepresentation, verification: CoverVerification) -> dict[str, Any]:
    return {
        "kind": rep.kind,
        "m": rep.m,
        "F": rep.rows,
        "labels": list(rep.labels),
        "verified": {
            "bipositive": verification.bipositive,
            "majorizing": verification.majorizing,
            "order_dense": verification.order_dense,
        },
        "majorizing_point": verification.majorizing_point,
        "density": verification.density,
        "failure": verification.failure,
    }


def loads_report(text: str) -> dict[str, Any]:
    data = _load_json(text, "report file")
    if not isinstance(data, dict):
        raise ParseError("report file must be a JSON object")
    if data.get("format") != REPORT_FORMAT:
        raise ParseError(f"expected {REPORT_FORMAT!r}", "format")
    missing = sorted(_REPORT_KEYS - set(data))
    if missing:
        raise ParseError("missing", missing[0])
    unknown = sorted(set(data) - _REPORT_KEYS)
    if unknown:
        raise ParseError("unknown field", unknown[0])
    return data
