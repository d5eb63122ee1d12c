import math

import numpy as np
import pytest

from src.cli.commands import parse_tolerances
from src.cli.output import canonical, dumps, to_csv
from src.utils.config_loader import get_env_or_none, load_config, resolve_threads
from src.utils.errors import GraphInputError, IndexRangeError, ResourceCapError, UsageError


def test_shipped_config_sections():
    config = load_config()
    for section in ("app", "logging", "curvature", "spectral", "cheeger", "log_sobolev", "verify"):
        assert section in config
    assert config["cheeger"]["exact_cap"] == 22
    assert config["log_sobolev"]["safety_factor"] == 0.5


def test_environment_overrides(monkeypatch, tmp_path):
    path = tmp_path / "alt.yaml"
    path.write_text("app:\n  seed: 1\n")
    monkeypatch.setenv("GAMMA2_CONFIG", str(path))
    monkeypatch.setenv("GAMMA2_THREADS", "3")
    monkeypatch.setenv("GAMMA2_LOG_LEVEL", "debug")
    config = load_config()
    assert config["app"] == {"seed": 1, "threads": 3}
    assert config["logging"]["level"] == "DEBUG"
    assert resolve_threads(config) == 3
    assert resolve_threads(config, 5) == 5


def test_explicit_overrides_win(monkeypatch):
    monkeypatch.setenv("GAMMA2_SEED", "11")
    config = load_config(overrides={"app": {"seed": 4}})
    assert config["app"]["seed"] == 4


def test_placeholder_env_values_are_unset(monkeypatch):
    monkeypatch.setenv("GAMMA2_LOG_FILE", "your_log_file_here")
    assert get_env_or_none("GAMMA2_LOG_FILE") is None
    monkeypatch.setenv("GAMMA2_LOG_FILE", "  ")
    assert get_env_or_none("GAMMA2_LOG_FILE") is None


def test_exit_codes():
    assert IndexRangeError(3, 0, 9, 4).exit_code == 2
    assert isinstance(IndexRangeError(3, 0, 9, 4), GraphInputError)
    assert ResourceCapError("too big").exit_code == 3
    assert UsageError("bad").exit_code == 2


def test_canonical_floats():
    assert canonical(-0.0) == 0.0 and math.copysign(1.0, canonical(-0.0)) == 1.0
    assert canonical(1.0 / 3.0) == 0.333333333333
    assert canonical(np.float64(2.0)) == 2.0
    assert canonical(float("inf")) is None
    assert canonical({"a": (np.int64(1), np.bool_(True))}) == {"a": [1, True]}
    assert dumps({"x": 0.1 + 0.2}, indent=None) == '{"x": 0.3}'


def test_csv_rows():
    text = to_csv([{"vertex": 0, "kappa": 0.5}, {"vertex": 1, "kappa": -0.0}])
    assert text == "vertex,kappa\n0,0.5\n1,0.0\n"


def test_parse_tolerances():
    assert parse_tolerances(["heat=1e-6", "subset=2e-9"]) == {"heat": 1e-6, "subset": 2e-9}
    with pytest.raises(UsageError):
        parse_tolerances(["heat"])
    with pytest.raises(UsageError):
        parse_tolerances(["heat=abc"])
