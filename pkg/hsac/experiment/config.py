"""
Experiment configuration: defaults, flat key-value files and CLI overrides.

A config file holds one `key = value` per line; `#` starts a comment at the
beginning of a line or after whitespace. Keys are ExperimentConfig or
Hyperparams field names; lists are comma-separated. `alpha` and
`tau_gumbel` take several values to sweep them across the grid.
"""

import dataclasses
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Tuple, Union

from ..agents.enums import AgentVariant
from ..agents.hyperparams import Hyperparams
from ..errors import ConfigurationError

_TRUE_WORDS = {"true", "1", "yes"}
_FALSE_WORDS = {"false", "0", "no"}
_COMMENT = re.compile(r"(?:^|\s)#")

# Hyperparameter key -> ExperimentConfig field holding its swept values
SWEEP_KEYS: Dict[str, str] = {"alpha": "alpha_values", "tau_gumbel": "tau_values"}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    The (variant x n_g x alpha x tau x seed) grid, run length, outputs and
    agent hyperparameters

    alpha_values and tau_values are the swept axes; an empty axis means
    the single value in hyperparams.
    """

    variants: Tuple[AgentVariant, ...] = tuple(AgentVariant)
    ng_values: Tuple[int, ...] = (6, 8, 12, 18)
    seeds: int = 20
    episodes_per_run: int = 5000
    window: int = 100
    base_seed: int = 0
    step_cap_factor: int = 50
    output_dir: str = "results"
    workers: int = 1
    dump_traces: bool = False
    record_timing: bool = False
    hyperparams: Hyperparams = field(default_factory=Hyperparams)
    alpha_values: Tuple[float, ...] = ()
    tau_values: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "variants", tuple(self.variants))
        object.__setattr__(self, "ng_values", tuple(int(n) for n in self.ng_values))
        object.__setattr__(self, "alpha_values", tuple(float(a) for a in self.alpha_values))
        object.__setattr__(self, "tau_values", tuple(float(t) for t in self.tau_values))
        for name in SWEEP_KEYS.values():
            values = getattr(self, name)
            if len(set(values)) != len(values):
                raise ConfigurationError(f"Duplicate {name}: {list(values)}")
        for alpha in self.alpha_grid:
            for tau in self.tau_grid:
                self.cell_hyperparams(alpha, tau)
        if not self.variants:
            raise ConfigurationError("At least one variant is required")
        if len(set(self.variants)) != len(self.variants):
            raise ConfigurationError(f"Duplicate variants: {[v.value for v in self.variants]}")
        if not self.ng_values or any(n < 3 for n in self.ng_values):
            raise ConfigurationError(f"ng_values must all be >= 3, got {list(self.ng_values)}")
        if len(set(self.ng_values)) != len(self.ng_values):
            raise ConfigurationError(f"Duplicate ng_values: {list(self.ng_values)}")
        if self.seeds < 1:
            raise ConfigurationError(f"seeds must be >= 1, got {self.seeds}")
        if self.episodes_per_run < 1:
            raise ConfigurationError(f"episodes_per_run must be >= 1, got {self.episodes_per_run}")
        if self.window < 1:
            raise ConfigurationError(f"window must be >= 1, got {self.window}")
        if self.step_cap_factor < 1:
            raise ConfigurationError(f"step_cap_factor must be >= 1, got {self.step_cap_factor}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1, got {self.workers}")

    @property
    def output_path(self) -> Path:
        return Path(self.output_dir)

    @property
    def alpha_grid(self) -> Tuple[float, ...]:
        return self.alpha_values or (self.hyperparams.alpha,)

    @property
    def tau_grid(self) -> Tuple[float, ...]:
        return self.tau_values or (self.hyperparams.tau_gumbel,)

    @property
    def sweeps(self) -> bool:
        """True when alpha or tau_gumbel takes more than one value"""
        return len(self.alpha_grid) > 1 or len(self.tau_grid) > 1

    @property
    def total_runs(self) -> int:
        return (
            len(self.variants)
            * len(self.ng_values)
            * len(self.alpha_grid)
            * len(self.tau_grid)
            * self.seeds
        )

    def cell_hyperparams(self, alpha: float, tau_gumbel: float) -> Hyperparams:
        """
        Hyperparams of one sweep point

        Raises:
            ConfigurationError: If alpha < 0 or tau_gumbel <= 0
        """
        return dataclasses.replace(self.hyperparams, alpha=alpha, tau_gumbel=tau_gumbel)


def parse_bool(text: str) -> bool:
    word = text.strip().lower()
    if word in _TRUE_WORDS:
        return True
    if word in _FALSE_WORDS:
        return False
    raise ConfigurationError(f"Invalid boolean: '{text}'")


def _split_list(text: str) -> Tuple[str, ...]:
    return tuple(item.strip() for item in text.split(",") if item.strip())


def _variants(text: str) -> Tuple[AgentVariant, ...]:
    return tuple(AgentVariant.from_string(item) for item in _split_list(text))


def _ints(text: str) -> Tuple[int, ...]:
    return tuple(int(item) for item in _split_list(text))


def _float_axis(text: str) -> Union[float, Tuple[float, ...]]:
    values = tuple(float(item) for item in _split_list(text))
    if not values:
        raise ValueError("expected at least one number")
    return values[0] if len(values) == 1 else values


_EXPERIMENT_PARSERS: Dict[str, Callable[[str], Any]] = {
    "variants": _variants,
    "ng_values": _ints,
    "seeds": int,
    "episodes_per_run": int,
    "window": int,
    "base_seed": int,
    "step_cap_factor": int,
    "output_dir": str.strip,
    "workers": int,
    "dump_traces": parse_bool,
    "record_timing": parse_bool,
}


def _hyperparam_parser(name: str) -> Callable[[str], Any]:
    default = getattr(Hyperparams(), name)
    if isinstance(default, bool):
        return parse_bool
    if isinstance(default, Enum):
        return type(default).from_string  # type: ignore[attr-defined]
    return type(default)


_HYPERPARAM_NAMES = tuple(f.name for f in dataclasses.fields(Hyperparams))


def parse_value(key: str, text: str) -> Any:
    """
    Convert the text of one config entry to its typed value

    Raises:
        ConfigurationError: If the key is unknown or the value malformed
    """
    if key in _EXPERIMENT_PARSERS:
        parser = _EXPERIMENT_PARSERS[key]
    elif key in SWEEP_KEYS:
        parser = _float_axis
    elif key in _HYPERPARAM_NAMES:
        parser = _hyperparam_parser(key)
    else:
        raise ConfigurationError(f"Unknown config key: '{key}'")
    try:
        return parser(text)
    except ConfigurationError:
        raise
    except ValueError as e:
        raise ConfigurationError(f"Invalid value for {key}: '{text}' ({e})")


def parse_config_text(text: str) -> Dict[str, Any]:
    """
    Parse config file contents into typed values by key

    Raises:
        ConfigurationError: On malformed lines, unknown or repeated keys
    """
    values: Dict[str, Any] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _COMMENT.split(raw, maxsplit=1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"Line {number}: expected 'key = value', got '{raw.strip()}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in values:
            raise ConfigurationError(f"Line {number}: duplicate key '{key}'")
        values[key] = parse_value(key, value)
    return values


def apply_overrides(
    config: ExperimentConfig, overrides: Mapping[str, Any]
) -> ExperimentConfig:
    """
    Return a copy of config with typed values replaced

    Keys naming Hyperparams fields go to config.hyperparams. A sequence
    given for alpha or tau_gumbel becomes a swept axis whose first value
    is also the hyperparams default; a scalar clears the axis.

    Raises:
        ConfigurationError: If a key is unknown or a value invalid
    """
    experiment: Dict[str, Any] = {}
    hyper: Dict[str, Any] = {}
    for key, value in overrides.items():
        if key in _EXPERIMENT_PARSERS:
            experiment[key] = value
        elif key in SWEEP_KEYS:
            values = tuple(value) if isinstance(value, (tuple, list)) else (value,)
            if not values:
                raise ConfigurationError(f"{key} needs at least one value")
            hyper[key] = float(values[0])
            experiment[SWEEP_KEYS[key]] = values if len(values) > 1 else ()
        elif key in _HYPERPARAM_NAMES:
            hyper[key] = value
        else:
            raise ConfigurationError(f"Unknown config key: '{key}'")
    if hyper:
        experiment["hyperparams"] = dataclasses.replace(config.hyperparams, **hyper)
    return dataclasses.replace(config, **experiment)


def load_config(
    path: Union[str, Path, None] = None, overrides: Union[Mapping[str, Any], None] = None
) -> ExperimentConfig:
    """
    Build a config from defaults, an optional file, then overrides

    Args:
        path: Config file; defaults only when None
        overrides: Typed values applied last (CLI flags)
    """
    config = ExperimentConfig()
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigurationError(f"Cannot read config file {path}: {e}")
        config = apply_overrides(config, parse_config_text(text))
    if overrides:
        config = apply_overrides(config, overrides)
    return config


def config_to_dict(config: ExperimentConfig) -> Dict[str, Any]:
    """Flat JSON-friendly view, the same keys a config file accepts"""
    flat: Dict[str, Any] = {
        "variants": [v.value for v in config.variants],
        "ng_values": list(config.ng_values),
    }
    for name in _EXPERIMENT_PARSERS:
        if name not in flat:
            flat[name] = getattr(config, name)
    for name in _HYPERPARAM_NAMES:
        value = getattr(config.hyperparams, name)
        flat[name] = value.value if isinstance(value, Enum) else value
    for key, axis in SWEEP_KEYS.items():
        if getattr(config, axis):
            flat[key] = list(getattr(config, axis))
    return flat
