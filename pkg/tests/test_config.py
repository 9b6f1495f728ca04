from pathlib import Path

import pytest
from pydantic import ValidationError

from data_gen import GraphFamily
from evasion import SelectionStrategy
from harness.config import ConfigError, InfluenceSettings, build_experiment_config, merge_sources, read_config_file
from measures import InfluenceModel


def test_read_config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# shared settings\nbudget = 5\n\nmc-samples = 200  # fewer for a dry run\n", encoding="utf-8")
    assert read_config_file(path) == {"budget": "5", "mc_samples": "200"}


def test_read_config_file_errors(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        read_config_file(tmp_path / "missing.cfg")
    path = tmp_path / "bad.cfg"
    path.write_text("budget = 5\nreplicates\n", encoding="utf-8")
    with pytest.raises(ConfigError, match=":2: expected"):
        read_config_file(path)


def test_flags_override_the_file():
    merged = merge_sources({"budget": 3, "seed": None, "alpha": 0.1}, {"budget": "5", "seed": "9"})
    assert merged == {"budget": 3, "seed": "9", "alpha": 0.1}


def test_roam_config_from_flags():
    config = build_experiment_config(
        "roam",
        {"gen": "scale-free", "n": 50, "m": 2, "budget": 4, "models": "ic", "v0_strategy": "min", "input": None},
    )
    assert config.generator.family is GraphFamily.SCALE_FREE
    assert config.generator.m == 2
    assert config.roam.budget == 4
    assert config.roam.v0_strategy is SelectionStrategy.MIN
    assert config.roam.target_strategy is SelectionStrategy.MIN
    assert config.influence.models == (InfluenceModel.IC,)
    assert config.dice is None
    assert not config.fixed_input


def test_dice_config_from_file_strings():
    config = build_experiment_config(
        "dice",
        {"input": "net.txt", "replicates": "3", "directed": "true", "alpha": "0.25", "d": "1", "d_sweep": "yes"},
    )
    assert config.input_path == Path("net.txt")
    assert config.replicates == 3
    assert config.directed
    assert config.alpha == 0.25
    assert config.dice.budget == 4
    assert config.dice.d == 1
    assert config.dice.d_sweep
    assert config.fixed_input


@pytest.mark.parametrize(
    ("command", "values", "message"),
    [
        ("roam", {"input": "a.txt", "gen": "er", "n": 10, "avg": 2}, "exactly one of --input and --gen"),
        ("roam", {}, "exactly one of --input and --gen"),
        ("roam", {"gen": "er", "n": 10, "avg": 2, "directed": True}, "--directed needs --input"),
        ("roam", {"gen": "scale-free", "n": 10, "m": 10}, "1 <= m < n"),
        ("roam", {"input": "a.txt", "seed": -1}, "greater than or equal to 0"),
        ("roam", {"input": "a.txt", "budget": 0}, "greater than or equal to 1"),
        ("dice", {"input": "a.txt", "budget": 2, "d": 3}, "d must not exceed the budget"),
        ("dice", {"input": "a.txt", "detector": "pagerank"}, "detector must be one of"),
        ("dice", {"input": "a.txt", "detector": "external:"}, "detector must be one of"),
        ("dice", {"input": "a.txt", "models": "ic,sir"}, "models"),
    ],
)
def test_invalid_experiment_configs(command, values, message):
    with pytest.raises(ValidationError, match=message):
        build_experiment_config(command, values)


def test_external_detector_is_accepted():
    config = build_experiment_config("dice", {"input": "a.txt", "detector": "external:parts.txt"})
    assert config.detector == "external:parts.txt"


def test_influence_settings():
    influence = InfluenceSettings.model_validate({"models": "lt, ic", "ic_p": 0.3, "mc_samples": 50})
    configs = influence.configs(7)
    assert [cfg.model for cfg in configs] == [InfluenceModel.LT, InfluenceModel.IC]
    assert all(cfg.seed == 7 and cfg.p == 0.3 and cfg.samples == 50 for cfg in configs)
    assert InfluenceSettings().models == (InfluenceModel.IC, InfluenceModel.LT)
