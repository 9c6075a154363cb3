import json

import pytest

from spflag.cli.main import EXIT_DOMAIN, EXIT_FAILED, EXIT_OK, EXIT_USAGE, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_verify_roots_json(capsys):
    code, out = run_cli(capsys, "verify", "roots", "--trials", "1")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["spec_version"] == "1"
    assert document["passed"] is True
    assert document["suites"][0]["suite"] == "roots"
    assert list(document) == sorted(document)


def test_verify_output_is_reproducible(capsys):
    _, first = run_cli(capsys, "verify", "em", "--seed", "5", "--trials", "1")
    _, second = run_cli(capsys, "verify", "em", "--seed", "5", "--trials", "1")
    assert first == second


def test_verify_csv(capsys):
    code, out = run_cli(capsys, "verify", "roots", "--format", "csv")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "suite,name,passed,residual,tolerance,error,detail"
    assert all(line.startswith("roots,") for line in lines[1:])


def test_verify_failure_exit_code(capsys):
    code, out = run_cli(capsys, "verify", "dynamics", "--trials", "1", "--tol", "norm_drift=1e-300")
    assert code == EXIT_FAILED
    assert json.loads(out)["passed"] is False


def test_verify_records_runs(capsys, tmp_path):
    db = str(tmp_path / "runs.db")
    assert main(["verify", "roots", "--record", "--db", db]) == EXIT_OK
    capsys.readouterr()
    code, out = run_cli(capsys, "history", "--db", db)
    assert code == EXIT_OK
    runs = json.loads(out)["runs"]
    assert [r["suite"] for r in runs] == ["roots"]
    assert runs[0]["passed"] is True


@pytest.mark.parametrize("argv", [
    ["verify", "nonsense"],
    ["verify", "roots", "--tol", "bogus=1"],
    ["verify", "roots", "--trials", "0"],
    ["lb"],
    ["frobnicate"],
    [],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == EXIT_OK


def test_lb_json(capsys):
    code, out = run_cli(capsys, "lb", "--ell", "1", "--samples", "20")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["metadata"]["kind"] == "g_ell"
    assert document["metadata"]["theta_sq"] == 1.0
    assert len(document["rows"]) == 20
    assert document["metadata"]["residual_max_relative"] < 1e-8


def test_lb_csv_writes_metadata_file(capsys, tmp_path):
    out = tmp_path / "f0.csv"
    code = main(["lb", "--ell", "0", "--samples", "10", "--format", "csv", "--out", str(out)])
    assert code == EXIT_OK
    assert out.read_text(encoding="utf-8").splitlines()[0] == "omega,value,residual"
    metadata = json.loads((tmp_path / "f0.csv.meta.json").read_text(encoding="utf-8"))["metadata"]
    assert metadata["kind"] == "f0"


@pytest.mark.parametrize("argv", [
    ["lb", "--ell", "1", "--N", "5"],
    ["lb", "--ell", "0.3"],
    ["roots", "--n", "0"],
    ["em", "--field", "A7=x1"],
])
def test_domain_errors(capsys, argv):
    assert main(argv) == EXIT_DOMAIN


def test_roots_projection(capsys):
    code, out = run_cli(capsys, "roots", "--n", "2", "--projection", "2")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["count"] == 8
    assert document["roots"][0] == {"index": 0, "root": [2, 0], "p1": 2.0, "p2": 0.0}


def test_em_decomposition(capsys):
    code, out = run_cli(capsys, "em", "--field", "A1=-x2", "A2=x1")
    assert code == EXIT_OK
    document = json.loads(out)
    assert document["decomposition"]["B"] == ["0", "0", "2"]
    assert document["field"]["A1"] == "-x2"


def test_trajectory(capsys):
    code, out = run_cli(capsys, "trajectory", "--steps", "4", "--t-max", "1")
    assert code == EXIT_OK
    document = json.loads(out)
    assert [row["t"] for row in document["rows"]] == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert document["norm_drift"] < 1e-9
