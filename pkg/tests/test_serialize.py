import json
from fractions import Fraction

import pytest

from riesz.core.cover import verify_cover
from riesz.core.deciders import decide_fordable, decide_pervasive
from riesz.core.errors import ParseError
from riesz.core.zoo import ZOO_NAMES, ZooSpec, build
from riesz.utils.serialize import (
    REPORT_FORMAT,
    build_report,
    cover_section,
    dumps,
    dumps_model,
    encode,
    loads_model,
    loads_report,
    model_from_dict,
    write_atomic,
)


@pytest.mark.parametrize("name", ZOO_NAMES)
def test_zoo_models_round_trip(name):
    spec = build(ZooSpec(name, seed=5)).spec
    assert loads_model(dumps_model(spec)) == spec


def test_rationals_are_canonicalized():
    spec = loads_model('{"dimension": 2, "cone_rays": [["2/4", "0"], [0, 1]]}')
    assert spec.cone_rays[0][0] == Fraction(1, 2)
    assert json.loads(dumps_model(spec))["cone_rays"][0] == ["1/2", "0"]


def test_zero_denominator_names_the_field():
    with pytest.raises(ParseError) as exc:
        loads_model('{"dimension": 2, "cone_rays": [["1", "1/0"]]}')
    assert exc.value.field == "cone_rays[0][1]"


@pytest.mark.parametrize(
    "data,field",
    [
        ({"cone_rays": [[1]]}, "dimension"),
        ({"dimension": 0, "cone_rays": []}, "dimension"),
        ({"dimension": 2, "cone_rays": [[1]]}, "cone_rays[0]"),
        ({"dimension": 1, "cone_rays": [[1]], "colour": "red"}, "colour"),
        ({"dimension": 1, "subspace": {"ambient": 1}}, "subspace.basis"),
        ({"dimension": 2, "subspace": {"ambient": 2, "basis": [[1, 0]]}}, "subspace.basis"),
        ({"dimension": 1, "subspace": {"ambient": 1, "basis": [[1]], "basis_labels": ["a", "b"]}}, "subspace.basis_labels"),
    ],
)
def test_malformed_models(data, field):
    with pytest.raises(ParseError) as exc:
        model_from_dict(data)
    assert exc.value.field == field


def test_dimension_may_be_a_digit_string():
    assert model_from_dict({"dimension": "1", "cone_rays": [["1"]]}).dimension == 1


def test_invalid_json_reports_position():
    with pytest.raises(ParseError, match="line 1 column"):
        loads_model("{")


def test_encode():
    assert encode(Fraction(-3, 6)) == "-1/2"
    assert encode(frozenset({2, 0})) == [0, 2]
    assert encode((Fraction(1), True, None)) == ["1", True, None]
    with pytest.raises(TypeError):
        encode(object())


def test_dumps_is_stable():
    text = dumps({"b": Fraction(1, 3), "a": [1, 2]})
    assert text == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": "1/3"\n}\n'


def test_write_atomic(tmp_path):
    target = tmp_path / "reports" / "four_ray.json"
    write_atomic(target, "first\n")
    write_atomic(target, "second\n")
    assert target.read_text() == "second\n"
    assert [p.name for p in target.parent.iterdir()] == ["four_ray.json"]


def test_report_layout(four_ray, four_ray_rep):
    results = [decide_pervasive(four_ray_rep), decide_fordable(four_ray_rep)]
    report = build_report(four_ray, cover_section(four_ray_rep, verify_cover(four_ray_rep)), results, record_timing=False)
    assert report["format"] == REPORT_FORMAT
    assert report["model"]["canonical"]["normals"][0] == ["1", "1", "1"]
    assert report["cover"]["F"] == report["model"]["canonical"]["normals"]
    assert [r["time_ms"] for r in report["results"]] == [0, 0]
    assert report["results"][0]["witness"]["type"] == "PervasivenessWitness"
    assert loads_report(dumps(report)) == json.loads(dumps(report))


def test_report_format_is_checked():
    with pytest.raises(ParseError) as exc:
        loads_report('{"format": "something-else"}')
    assert exc.value.field == "format"
    with pytest.raises(ParseError):
        loads_report(json.dumps({"format": REPORT_FORMAT}))
