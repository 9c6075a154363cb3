import pytest

from spflag.config import RunConfig, Tolerances
from spflag.core.errors import NotGroupElement, UnknownSuite
from spflag.core.suites.base import Suite, check, flag
from spflag.core.suites.registry import SUITES, resolve, suite_names


def test_registry_order():
    assert suite_names() == ["all", "quat", "coset", "forms", "liealg", "s4", "em", "dynamics", "roots"]
    assert [s.name for s in resolve("all", RunConfig())] == list(SUITES)


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        resolve("nonsense", RunConfig())


def test_check_helpers():
    assert check("small", 1e-12, 1e-10).passed
    assert not check("large", 1e-3, 1e-10).passed
    assert flag("ok", True).passed
    assert check("inf", float("inf"), 1.0).as_dict()["residual"] is None


class BrokenSuite(Suite):
    name = "broken"

    def checks(self):
        return [self.fine, self.broken]

    def fine(self):
        return [flag("fine", True)]

    def broken(self):
        raise NotGroupElement("g* g != 1")


def test_domain_errors_become_failed_checks():
    report = BrokenSuite(RunConfig()).run()
    assert [c.name for c in report.checks] == ["fine", "broken"]
    assert not report.passed
    assert report.checks[1].error == "g* g != 1"


def test_suite_streams_depend_on_seed():
    first = BrokenSuite(RunConfig(seed=1)).rng(0).standard_normal(3)
    again = BrokenSuite(RunConfig(seed=1)).rng(0).standard_normal(3)
    other = BrokenSuite(RunConfig(seed=2)).rng(0).standard_normal(3)
    assert (first == again).all()
    assert not (first == other).all()


@pytest.mark.parametrize("name", ["quat", "coset", "forms", "s4", "em", "dynamics", "roots"])
def test_suite_passes(small_config, name):
    (suite,) = resolve(name, small_config)
    report = suite.run()
    failed = [c.as_dict() for c in report.checks if not c.passed]
    assert report.checks
    assert not failed


def test_liealg_suite_passes(small_config):
    (suite,) = resolve("liealg", small_config)
    assert suite.run().passed


def test_tight_tolerance_fails_suite():
    config = RunConfig(seed=3, trials=1, tolerances=Tolerances(norm_drift=1e-300))
    (suite,) = resolve("dynamics", config)
    report = suite.run()
    assert not report.passed
    assert "norm_drift" in [c.name for c in report.checks if not c.passed]


def test_reports_are_reproducible(small_config):
    first = [c.as_dict() for c in resolve("dynamics", small_config)[0].run().checks]
    second = [c.as_dict() for c in resolve("dynamics", small_config)[0].run().checks]
    assert first == second


@pytest.mark.slow
def test_coset_suite_at_full_draw_count():
    report = SUITES["coset"](RunConfig(seed=1, trials=500)).run()
    checks = {c.name: c for c in report.checks}
    for name in ("lft_composition", "transport_identities", "cross_ratio_invariance", "metric_forms", "metric_invariance"):
        assert checks[name].passed, checks[name].as_dict()
    assert checks["lft_composition"].detail["triples"] >= 500
    assert report.passed
