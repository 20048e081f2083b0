import json

import pytest
from click.testing import CliRunner

from riesz.cli.main import EXIT_CAPACITY, EXIT_FAILED, EXIT_INVALID, cli


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def four_ray_file(runner, tmp_path):
    path = tmp_path / "four_ray.json"
    result = runner.invoke(cli, ["zoo", "four_ray", "--out", str(path)])
    assert result.exit_code == 0, result.output
    return path


def test_zoo_then_analyze_from_stdin(runner):
    model = runner.invoke(cli, ["zoo", "four_ray"])
    assert model.exit_code == 0
    result = runner.invoke(cli, ["analyze", "-"], input=model.stdout)
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    verdicts = {r["property"]: r["verdict"] for r in report["results"]}
    assert verdicts["pervasive"] is False
    assert report["suite_violations"] == []


def test_example14_weakly_pervasive(runner):
    model = runner.invoke(cli, ["zoo", "example14", "--N", "3"])
    assert model.exit_code == 0, model.output
    result = runner.invoke(cli, ["analyze", "-", "--properties", "weakly_pervasive"], input=model.stdout)
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert [r["verdict"] for r in report["results"]] == [False]
    assert "example14" in report["checks"]


def test_reports_without_timing_are_identical(runner, four_ray_file):
    args = ["--no-timing", "analyze", str(four_ray_file)]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == 0
    assert first.output == second.output


def test_verify_emitted_report(runner, four_ray_file, tmp_path):
    report = tmp_path / "report.json"
    assert runner.invoke(cli, ["analyze", str(four_ray_file), "--out", str(report)]).exit_code == 0
    result = runner.invoke(cli, ["verify", str(report)])
    assert result.exit_code == 0, result.output
    assert "0 issue(s)" in result.output


def test_verify_catches_tampering(runner, four_ray_file, tmp_path):
    report = tmp_path / "report.json"
    runner.invoke(cli, ["analyze", str(four_ray_file), "--out", str(report)])
    data = json.loads(report.read_text())
    pervasive = next(r for r in data["results"] if r["property"] == "pervasive")
    pervasive["witness"]["b"] = ["1", "1", "1"]
    report.write_text(json.dumps(data))
    result = runner.invoke(cli, ["verify", str(report)])
    assert result.exit_code == EXIT_FAILED
    assert "FAIL" in result.output


def test_witness_command(runner, four_ray_file):
    result = runner.invoke(cli, ["witness", str(four_ray_file), "--property", "fordable"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["verdict"] is False


@pytest.mark.parametrize(
    "text",
    ['{"dimension": 2, "cone_rays": [["1", "1/0"]]}', "{", '{"dimension": 2, "cone_rays": [[1, 0], [-1, 0]]}'],
)
def test_invalid_models_exit_2(runner, text):
    result = runner.invoke(cli, ["analyze", "-"], input=text)
    assert result.exit_code == EXIT_INVALID
    assert "error:" in result.output


def test_unknown_property_exits_2(runner, four_ray_file):
    result = runner.invoke(cli, ["analyze", str(four_ray_file), "--properties", "bogus"])
    assert result.exit_code == EXIT_INVALID
    assert "bogus" in result.output


def test_capacity_exits_3(runner, four_ray_file, tmp_path):
    config = tmp_path / "config.ini"
    config.write_text("[Limits]\nmax_functionals = 3\n")
    result = runner.invoke(cli, ["--config", str(config), "analyze", str(four_ray_file)])
    assert result.exit_code == EXIT_CAPACITY


def test_small_harness(runner, tmp_path):
    candidates = tmp_path / "candidates.json"
    result = runner.invoke(
        cli,
        ["--quiet", "harness", "--seed", "3", "--count", "2", "--max-dim", "2", "--max-rays", "4",
         "--candidates", str(candidates)],
    )
    assert result.exit_code == 0, result.output
    summary = json.loads(result.stdout)
    assert summary["seed"] == 3
    assert summary["models"] + len(summary["errors"]) == 2
    assert isinstance(json.loads(candidates.read_text()), list)


def test_config_command(runner, tmp_path):
    path = tmp_path / "config.ini"
    path.write_text("[Search]\nrdp_attempts = 17\n")
    result = runner.invoke(cli, ["--config", str(path), "config", "--write"])
    assert result.exit_code == 0
    assert '"rdp_attempts": 17' in result.output
    assert "[Limits]" in path.read_text()
