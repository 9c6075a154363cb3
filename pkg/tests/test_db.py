import json

import pytest

from spflag.config import RunConfig
from spflag.core.suites.base import CheckResult, SuiteReport, check, flag
from spflag.db.models import get_database_url
from spflag.db.repo import DatabaseManager


@pytest.fixture
def db_manager(tmp_path):
    return DatabaseManager(str(tmp_path / "runs.db"))


def make_report(suite="quat", passed=True):
    checks = [
        check("m2c_homomorphism", 1e-15, 1e-12, pairs=10),
        flag("sp2nc_identity", passed),
        CheckResult(name="exponential", passed=False, residual=float("inf"), tolerance=0.0, error="NonSquare")
        if not passed else check("exp_group", 1e-13, 1e-10),
    ]
    return SuiteReport(suite=suite, seed=5, checks=checks, elapsed_ms=12)


def test_database_url(monkeypatch):
    assert get_database_url("/tmp/x.db") == "sqlite:////tmp/x.db"
    monkeypatch.setenv("SPFLAG_DB", "env.db")
    assert get_database_url() == "sqlite:///env.db"


def test_create_and_read_run(db_manager):
    config = RunConfig(seed=5, trials=3)
    with db_manager.get_session() as session:
        run = db_manager.get_run_repo(session).create_run(make_report(), config)
        run_id = run.id

    with db_manager.get_session() as session:
        stored = db_manager.get_run_repo(session).get_run_by_id(run_id)
        assert stored.suite == "quat"
        assert stored.passed
        assert stored.total_checks == 3
        assert stored.failed_checks == 0
        assert json.loads(stored.config_json)["trials"] == 3
        checks = db_manager.get_check_repo(session).get_checks_by_run(run_id)
        assert [c.name for c in checks] == ["exp_group", "m2c_homomorphism", "sp2nc_identity"]
        detail = {c.name: json.loads(c.detail_json) for c in checks}
        assert detail["m2c_homomorphism"] == {"pairs": 10}


def test_failures_are_queryable(db_manager):
    config = RunConfig()
    with db_manager.get_session() as session:
        repo = db_manager.get_run_repo(session)
        repo.create_run(make_report("quat", passed=True), config)
        repo.create_run(make_report("coset", passed=False), config)

    with db_manager.get_session() as session:
        failures = db_manager.get_check_repo(session).get_failures()
        assert sorted(f.name for f in failures) == ["exponential", "sp2nc_identity"]
        infinite = db_manager.get_check_repo(session).get_failures("exponential")
        assert infinite[0].residual is None
        assert infinite[0].error == "NonSquare"


def test_runs_filtered_by_suite(db_manager):
    config = RunConfig()
    with db_manager.get_session() as session:
        repo = db_manager.get_run_repo(session)
        for suite in ("quat", "coset", "quat"):
            repo.create_run(make_report(suite), config)
        assert len(repo.get_all_runs()) == 3
        assert len(repo.get_all_runs("quat")) == 2
        assert len(repo.get_all_runs(limit=1)) == 1
