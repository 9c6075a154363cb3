import pytest

from spflag.config import RunConfig, Tolerances, build_config, parse_tolerance_overrides
from spflag.core.errors import UsageError


def test_defaults():
    config = build_config()
    assert config.seed == 42
    assert config.trials == 20
    assert config.format == "json"
    assert config.tolerances == Tolerances()


def test_environment_defaults(monkeypatch):
    monkeypatch.setenv("SPFLAG_SEED", "7")
    monkeypatch.setenv("SPFLAG_TRIALS", "3")
    monkeypatch.setenv("SPFLAG_RECORD", "yes")
    config = build_config()
    assert (config.seed, config.trials, config.record) == (7, 3, True)


def test_explicit_arguments_override_environment(monkeypatch):
    monkeypatch.setenv("SPFLAG_SEED", "7")
    assert build_config(seed=11).seed == 11


def test_tolerance_overrides():
    config = build_config(tol=["m2c=1e-10", "haar_bound_factor=3"])
    assert config.tolerances.m2c == 1e-10
    assert config.tolerances.haar_bound_factor == 3.0
    assert config.tolerances.group == Tolerances().group


@pytest.mark.parametrize("item", ["unknown=1", "m2c", "m2c=abc", "m2c=0", "m2c=-1e-3", "m2c=inf", "m2c=nan"])
def test_bad_tolerance_overrides(item):
    with pytest.raises(UsageError):
        parse_tolerance_overrides([item])


@pytest.mark.parametrize("values", [{"trials": 0}, {"workers": 0}, {"format": "xml"}])
def test_invalid_run_parameters(values):
    with pytest.raises(UsageError):
        build_config(**values)


def test_invalid_environment_value(monkeypatch):
    monkeypatch.setenv("SPFLAG_TRIALS", "many")
    with pytest.raises(UsageError):
        build_config()


def test_run_config_forbids_unknown_fields():
    with pytest.raises(ValueError):
        RunConfig(colour="red")
