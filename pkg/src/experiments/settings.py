# src/experiments/settings.py
import json
import os
import sys
from dataclasses import dataclass, field, fields

import numpy as np

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..'))
config_dir = os.path.join(project_root, 'config')
if config_dir not in sys.path:
    sys.path.insert(0, config_dir)

try:
    from config import MODEL, MAX_LAG, TRANSIENT_FRACTION, N_BLOCKS, EMISSION_CONVENTION, MI_MODE, \
                       JOINT_ENCODING, OUTPUT_DIR, WORKERS
except ImportError:
    print("ERROR (experiments.settings): Could not import analysis defaults from config.py.")
    raise

from metrics.complexity import JOINT_ENCODINGS
from simulators.params import SimParams
from simulators.telegraph import EMISSION_CONVENTIONS

MODEL_CHOICES = ("quantum", "classical", "both")
MI_MODES = ("ensemble", "per-trajectory")
CONFIG_HEADER_KEY = "config"


class ConfigError(ValueError):
    """Invalid, unknown or unreadable experiment configuration."""


def _grid(values, name: str) -> tuple[float, ...] | None:
    if values is None:
        return None
    if isinstance(values, (int, float)):
        values = [values]
    grid = tuple(float(v) for v in values)
    if not grid:
        raise ValueError(f"ExperimentConfig: {name} grid must not be empty.")
    if not all(np.isfinite(grid)):
        raise ValueError(f"ExperimentConfig: {name} grid must be finite, got {grid}.")
    return grid


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Resolved settings of one CLI run. `couplings` and `ratios` are the optional
    sweep grids; when left unset the figure pipelines use their presets.
    """
    params: SimParams = field(default_factory=SimParams)
    model: str = MODEL
    couplings: tuple[float, ...] | None = None
    ratios: tuple[float, ...] | None = None
    transient_fraction: float = TRANSIENT_FRACTION
    max_lag: int = MAX_LAG
    output_dir: str = OUTPUT_DIR
    emission_convention: str = EMISSION_CONVENTION
    mi_mode: str = MI_MODE
    joint_encoding: str = JOINT_ENCODING
    n_blocks: int = N_BLOCKS
    workers: int = WORKERS

    def __post_init__(self):
        object.__setattr__(self, "couplings", _grid(self.couplings, "couplings"))
        object.__setattr__(self, "ratios", _grid(self.ratios, "ratios"))
        if self.ratios is not None and min(self.ratios) <= 0:
            raise ValueError(f"ExperimentConfig: ratios must be > 0, got {self.ratios}.")

        if self.model not in MODEL_CHOICES:
            raise ValueError(f"ExperimentConfig: model must be one of {MODEL_CHOICES}, got {self.model!r}.")
        if self.emission_convention not in EMISSION_CONVENTIONS:
            raise ValueError(f"ExperimentConfig: emission_convention must be one of {EMISSION_CONVENTIONS}, "
                             f"got {self.emission_convention!r}.")
        if self.mi_mode not in MI_MODES:
            raise ValueError(f"ExperimentConfig: mi_mode must be one of {MI_MODES}, got {self.mi_mode!r}.")
        if self.joint_encoding not in JOINT_ENCODINGS:
            raise ValueError(f"ExperimentConfig: joint_encoding must be one of {JOINT_ENCODINGS}, "
                             f"got {self.joint_encoding!r}.")

        fraction = float(self.transient_fraction)
        if not 0.0 <= fraction < 1.0:
            raise ValueError(f"ExperimentConfig: transient_fraction must be in [0, 1), got {fraction}.")
        object.__setattr__(self, "transient_fraction", fraction)
        for name in ("max_lag", "n_blocks", "workers"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise ValueError(f"ExperimentConfig: {name} must be an integer, got {value}.")
            object.__setattr__(self, name, int(value))
        if self.n_blocks < 1 or self.workers < 1:
            raise ValueError(f"ExperimentConfig: n_blocks and workers must be >= 1, "
                             f"got {self.n_blocks} and {self.workers}.")
        window = self.params.steps - self.transient_start
        if not 0 <= self.max_lag < window:
            raise ValueError(f"ExperimentConfig: max_lag must be in [0, {window}) for the post-transient "
                             f"window of {window} steps, got {self.max_lag}.")
        object.__setattr__(self, "output_dir", str(self.output_dir))

    @property
    def transient_start(self) -> int:
        """First analysed step; depends on steps only, never on n_traj."""
        return int(self.transient_fraction * self.params.steps)

    @property
    def models(self) -> tuple[str, ...]:
        return ("classical", "quantum") if self.model == "both" else (self.model,)

    def with_params(self, **changes) -> "ExperimentConfig":
        values = self.to_dict()
        values.update(changes)
        return _build(values)

    def to_dict(self) -> dict:
        """Flat key/value form, the format of config files and output headers."""
        values = self.params.to_dict()
        for f in fields(self):
            if f.name == "params":
                continue
            value = getattr(self, f.name)
            values[f.name] = list(value) if isinstance(value, tuple) else value
        return values


PARAM_KEYS = tuple(f.name for f in fields(SimParams))
CONFIG_KEYS = PARAM_KEYS + tuple(f.name for f in fields(ExperimentConfig) if f.name != "params")


def _build(values: dict) -> ExperimentConfig:
    unknown = sorted(set(values) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"parse_config: unknown configuration key(s): {', '.join(unknown)}.")
    try:
        params = SimParams(**{k: v for k, v in values.items() if k in PARAM_KEYS})
        return ExperimentConfig(params=params, **{k: v for k, v in values.items() if k not in PARAM_KEYS})
    except (TypeError, ValueError) as e:
        raise ConfigError(str(e)) from e


def read_config_file(path: str) -> dict:
    """
    Flat settings from a JSON object file, or from the `# config=` header line of
    a CSV written by this tool.
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"parse_config: config file not found at {path}")
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()

    if text.lstrip().startswith("#"):
        prefix = f"# {CONFIG_HEADER_KEY}="
        for line in text.splitlines():
            if line.startswith(prefix):
                text = line[len(prefix):]
                break
            if not line.startswith("#"):
                raise ConfigError(f"parse_config: no '{prefix}' header line in {path}.")
    try:
        values = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"parse_config: {path} is not valid JSON ({e}).") from e
    if not isinstance(values, dict):
        raise ConfigError(f"parse_config: {path} must contain a JSON object, got {type(values).__name__}.")
    return values


def parse_config(path: str | None = None, overrides: dict | None = None) -> ExperimentConfig:
    """
    Resolve defaults < file values < overrides. Override entries that are None
    (flags not given on the command line) are ignored.
    """
    values = {}
    if path:
        values.update(read_config_file(path))
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    return _build(values)
