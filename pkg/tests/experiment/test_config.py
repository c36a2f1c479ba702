"""
Tests for experiment configuration files and overrides.
"""

import dataclasses

import pytest

from hsac.agents.enums import AgentVariant, Reparameterization
from hsac.agents.hyperparams import Hyperparams
from hsac.errors import ConfigurationError
from hsac.experiment.config import (
    ExperimentConfig,
    apply_overrides,
    config_to_dict,
    load_config,
    parse_bool,
    parse_config_text,
)


def test_defaults():
    config = ExperimentConfig()
    assert config.variants == tuple(AgentVariant)
    assert config.ng_values == (6, 8, 12, 18)
    assert config.seeds == 20
    assert config.episodes_per_run == 5000
    assert config.window == 100
    assert config.total_runs == 4 * 4 * 20
    assert not config.record_timing
    hp = config.hyperparams
    assert (hp.alpha, hp.gamma, hp.tau_gumbel, hp.learning_rate) == (0.2, 0.99, 0.3, 3e-4)
    assert (hp.batch_size, hp.buffer_capacity, hp.hidden_width, hp.dropout_rate) == (64, 50000, 256, 0.2)


def test_parse_file_text():
    values = parse_config_text(
        """
        # grid
        variants = mi_sac, Adversarial_MI_SAC
        ng_values = 12, 18   # the large chains
        record_timing = yes
        alpha = 0.5
        reparameterization = exact
        observe_visited_goal = false
        """
    )
    assert values == {
        "variants": (AgentVariant.MI_SAC, AgentVariant.ADVERSARIAL_MI_SAC),
        "ng_values": (12, 18),
        "record_timing": True,
        "alpha": 0.5,
        "reparameterization": Reparameterization.EXACT,
        "observe_visited_goal": False,
    }


@pytest.mark.parametrize(
    "text",
    [
        "episodes = 10",
        "seeds = 2\nseeds = 3",
        "seeds",
        "seeds = many",
        "dump_traces = maybe",
        "variants = ppo",
        "hidden_width = 2.5",
    ],
)
def test_malformed_text(text):
    with pytest.raises(ConfigurationError):
        parse_config_text(text)


def test_parse_bool():
    assert parse_bool(" TRUE ")
    assert not parse_bool("0")
    with pytest.raises(ConfigurationError):
        parse_bool("y")


def test_overrides_route_hyperparameters():
    config = apply_overrides(ExperimentConfig(), {"seeds": 3, "alpha": 0.0, "hidden_width": 16})
    assert config.seeds == 3
    assert config.hyperparams == dataclasses.replace(Hyperparams(), alpha=0.0, hidden_width=16)
    with pytest.raises(ConfigurationError):
        apply_overrides(config, {"colour": "red"})


def test_load_config_file_then_flags(tmp_path):
    path = tmp_path / "experiment.cfg"
    path.write_text("seeds = 4\nepisodes_per_run = 100\nalpha = 0.1\n", encoding="utf-8")
    config = load_config(path, {"seeds": 2, "output_dir": str(tmp_path / "out")})
    assert config.seeds == 2
    assert config.episodes_per_run == 100
    assert config.hyperparams.alpha == 0.1
    assert config.output_path == tmp_path / "out"


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigurationError):
        load_config(tmp_path / "missing.cfg")


@pytest.mark.parametrize(
    "kwargs",
    [
        {"variants": ()},
        {"variants": (AgentVariant.HDQN, AgentVariant.HDQN)},
        {"ng_values": (2,)},
        {"ng_values": (6, 6)},
        {"seeds": 0},
        {"episodes_per_run": 0},
        {"window": 0},
        {"workers": 0},
    ],
)
def test_invalid_grid(kwargs):
    with pytest.raises(ConfigurationError):
        ExperimentConfig(**kwargs)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"alpha": -0.1},
        {"gamma": 0.0},
        {"tau_gumbel": 0.0},
        {"batch_size": 10, "buffer_capacity": 5},
        {"dropout_rate": 1.0},
        {"epsilon_start": 1.5},
    ],
)
def test_invalid_hyperparams(kwargs):
    with pytest.raises(ConfigurationError):
        Hyperparams(**kwargs)


def test_config_to_dict_round_trips_through_text():
    config = apply_overrides(ExperimentConfig(), {"variants": (AgentVariant.HDQN,), "alpha": 0.3})
    flat = config_to_dict(config)
    assert flat["variants"] == ["hdqn"]
    assert flat["reparameterization"] == "gumbel"
    text = "\n".join(
        f"{key} = {', '.join(map(str, value)) if isinstance(value, list) else value}"
        for key, value in flat.items()
    )
    assert apply_overrides(ExperimentConfig(), parse_config_text(text)) == config


def test_alpha_list_becomes_a_swept_axis(tmp_path):
    assert parse_config_text("alpha = 0.05, 0.2, 1.0\n") == {"alpha": (0.05, 0.2, 1.0)}
    path = tmp_path / "sweep.cfg"
    path.write_text("seeds = 2\nalpha = 0.05, 0.2, 1.0\ntau_gumbel = 0.3, 1.0\n", encoding="utf-8")
    config = load_config(path)
    assert config.alpha_values == (0.05, 0.2, 1.0)
    assert config.tau_values == (0.3, 1.0)
    assert config.alpha_grid == (0.05, 0.2, 1.0)
    assert config.hyperparams.alpha == 0.05
    assert config.sweeps
    assert config.total_runs == 4 * 4 * 3 * 2 * 2
    assert config.cell_hyperparams(1.0, 0.3) == dataclasses.replace(config.hyperparams, alpha=1.0, tau_gumbel=0.3)


def test_scalar_alpha_clears_the_sweep():
    swept = apply_overrides(ExperimentConfig(), {"alpha": (0.05, 1.0)})
    single = apply_overrides(swept, {"alpha": 0.5})
    assert single.alpha_values == ()
    assert single.alpha_grid == (0.5,)
    assert not single.sweeps
    assert single.total_runs == ExperimentConfig().total_runs


@pytest.mark.parametrize(
    "text",
    [
        "alpha = 0.2, 0.2",
        "alpha = 0.2, -1.0",
        "tau_gumbel = 0.3, 0.0",
        "alpha = 0.1, fast",
        "alpha = ,",
    ],
)
def test_invalid_sweep(text):
    with pytest.raises(ConfigurationError):
        apply_overrides(ExperimentConfig(), parse_config_text(text))


def test_sweep_round_trips_through_text():
    config = apply_overrides(ExperimentConfig(), {"alpha": (0.05, 0.2, 1.0), "tau_gumbel": (0.3, 0.5)})
    flat = config_to_dict(config)
    assert flat["alpha"] == [0.05, 0.2, 1.0]
    assert flat["tau_gumbel"] == [0.3, 0.5]
    text = "\n".join(
        f"{key} = {', '.join(map(str, value)) if isinstance(value, list) else value}"
        for key, value in flat.items()
    )
    assert apply_overrides(ExperimentConfig(), parse_config_text(text)) == config


def test_hash_inside_a_value_is_kept():
    values = parse_config_text(
        "# full-line comment\n"
        "output_dir = runs/#3   # trailing comment\n"
        "seeds = 2\t# tab before the comment\n"
    )
    assert values == {"output_dir": "runs/#3", "seeds": 2}
