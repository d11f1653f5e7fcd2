import argparse
from fractions import Fraction

import pytest
import ujson

from cfcore.surd import QuadraticSurd
from utils.config import OUT_ENV, RunConfig
from utils.errors import ConfigError, PadSpecError


@pytest.fixture(autouse=True)
def _no_out_override(monkeypatch):
    monkeypatch.delenv(OUT_ENV, raising=False)


def test_decimal_gamma_is_exact():
    config = RunConfig.from_mapping({"command": "construct", "gamma": "5.2"})
    assert config.gamma == Fraction(26, 5)
    assert config.pad == "power:1" and config.blocks == 3


def test_named_gamma_resolves_to_a_surd():
    config = RunConfig.from_mapping({"command": "construct", "gamma": "threshold_thm3", "mode": "two"})
    assert isinstance(config.gamma, QuadraticSurd)
    assert 4 < config.gamma < 5


@pytest.mark.parametrize(
    "mapping",
    [
        {"command": "construct", "gamma": "6", "colour": "red"},
        {"command": "construct"},
        {"command": "construct", "gamma": "6", "blocks": "many"},
        {"command": "construct", "gamma": "6", "blocks": 0},
        {"command": "construct", "gamma": "6", "mode": "three"},
        {"command": "verify", "gamma": "6"},
        {"command": "plot"},
        {"command": "spectrum", "seed": 3},
    ],
)
def test_invalid_mappings(mapping):
    with pytest.raises(ConfigError):
        RunConfig.from_mapping(mapping)


def test_bad_pad_is_rejected_with_its_position():
    with pytest.raises(PadSpecError) as err:
        RunConfig.from_mapping({"command": "construct", "gamma": "6", "pad": "power:2"})
    assert err.value.position == 6


def test_out_dir_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(OUT_ENV, str(tmp_path))
    config = RunConfig.from_mapping({"command": "spectrum", "out": "elsewhere"})
    assert config.out == str(tmp_path)


def test_flags_override_the_config_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(ujson.dumps({"command": "construct", "gamma": "21/4", "blocks": 5, "pad": "power:1/2"}))
    namespace = argparse.Namespace(command="construct", config=str(path), gamma=None, blocks=2, pad=None)
    config = RunConfig.from_args(namespace)
    assert config.gamma == Fraction(21, 4)
    assert config.blocks == 2
    assert config.pad == "power:1/2"


def test_unreadable_config_file(tmp_path):
    namespace = argparse.Namespace(command="spectrum", config=str(tmp_path / "missing.json"))
    with pytest.raises(ConfigError):
        RunConfig.from_args(namespace)


def test_to_dict_formats_exact_values():
    config = RunConfig.from_mapping({"command": "decompose", "target": "1/3", "width_goal": "1/1000"})
    data = config.to_dict()
    assert data["target"] == "1/3"
    assert data["width_goal"] == "1/1000"
    assert data["gamma"] is None
    assert data["command"] == "decompose"


def test_with_overrides_keeps_the_rest():
    config = RunConfig.from_mapping({"command": "spectrum", "limit": 50})
    assert config.with_overrides(format="csv").limit == 50
