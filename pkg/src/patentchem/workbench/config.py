"""Pipeline configuration in INI form.

Example::

    [run]
    seed = 7
    workers = 4

    [features]
    cutoff_grid = 0.4, 0.5, 0.6, 0.7, 0.8, 0.9

    [learn]
    search = true
    budget = 20

    [adapters]
    recognizers =
        decimer-adapter --json
        molscribe-adapter --json

Unknown sections and keys are errors that name the file and line.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from ..errors import ConfigError
from ..molfeat import DEFAULT_RADIUS, DEFAULT_WIDTH
from ..simnet import CUTOFF_GRID

CONFIG_ENV = "PATENTCHEM_CONFIG"


@dataclass(frozen=True)
class LearnerParams:
    """Fixed hyperparameters, used as-is when search is off."""

    n_trees: int = 500
    max_depth: int = 6
    mtry_fraction: float = 0.0  # 0 means floor(sqrt(p)) columns
    learning_rate: float = 0.1
    rounds: int = 200
    reg_lambda: float = 1.0
    forest_weight: float = 0.5
    forest_max_depth: int = 0  # 0 means unlimited


@dataclass(frozen=True)
class PipelineConfig:
    seed: int = 0
    workers: int = 0  # 0 means one per logical core
    cutoff_grid: tuple[float, ...] = CUTOFF_GRID
    fp_radius: int = DEFAULT_RADIUS
    fp_width: int = DEFAULT_WIDTH
    search: bool = True
    budget: int = 20
    boruta: bool = True
    keep_tentative: bool = True
    boruta_max_iter: int = 100
    learner: LearnerParams = field(default_factory=LearnerParams)
    recognizers: tuple[str, ...] = ()
    renderer: str = ""
    evaluator: str = ""
    adapter_timeout: float = 30.0

    def __post_init__(self):
        if not self.cutoff_grid or any(not 0.0 <= c <= 1.0 for c in self.cutoff_grid):
            raise ConfigError("cutoff_grid needs values in [0, 1]")
        if self.fp_width < 64 or self.fp_width & (self.fp_width - 1):
            raise ConfigError("fp_width must be a power of two >= 64")
        if self.fp_radius < 0:
            raise ConfigError("fp_radius must be >= 0")
        if self.budget < 1:
            raise ConfigError("budget must be >= 1")
        if self.workers < 0:
            raise ConfigError("workers must be >= 0")

    @property
    def effective_workers(self) -> int:
        return self.workers or os.cpu_count() or 1

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, LearnerParams):
                v = {g.name: getattr(v, g.name) for g in fields(v)}
            elif isinstance(v, tuple):
                v = list(v)
            out[f.name] = v
        return out


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.replace(",", " ").split())


def _lines(text: str) -> tuple[str, ...]:
    return tuple(line.strip() for line in text.splitlines() if line.strip())


# section -> key -> parser; learner keys live under [learn]
_SCHEMA = {
    "run": {"seed": int, "workers": int},
    "features": {"cutoff_grid": _floats, "fp_radius": int, "fp_width": int},
    "learn": {
        "search": _bool, "budget": int, "boruta": _bool, "keep_tentative": _bool,
        "boruta_max_iter": int,
        **{f.name: {"int": int, "float": float}[f.type] for f in fields(LearnerParams)},
    },
    "adapters": {"recognizers": _lines, "renderer": str.strip, "evaluator": str.strip, "timeout": float},
}
_FIELD = {("adapters", "timeout"): "adapter_timeout"}
_LEARNER_KEYS = {f.name for f in fields(LearnerParams)}


def _line_of(text: str, section: str, key: str | None) -> int:
    current = None
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if key is None and current == section:
                return n
        elif current == section and key is not None and raw[:1] not in (" ", "\t"):
            name = line.split("=", 1)[0].split(":", 1)[0].strip().lower()
            if name == key:
                return n
    return 0


def parse_config(text: str, source: str = "<config>") -> PipelineConfig:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";",))
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    kwargs: dict = {}
    learner: dict = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"{source}:{_line_of(text, section, None)}: unknown section [{section}]")
        for key, raw in parser.items(section):
            where = f"{source}:{_line_of(text, section, key)}"
            conv = _SCHEMA[section].get(key)
            if conv is None:
                raise ConfigError(f"{where}: unknown key {key!r} in [{section}]")
            try:
                value = conv(raw)
            except ValueError as exc:
                raise ConfigError(f"{where}: bad value for {key!r}: {exc}") from exc
            if section == "learn" and key in _LEARNER_KEYS:
                learner[key] = value
            else:
                kwargs[_FIELD.get((section, key), key)] = value
    if learner:
        kwargs["learner"] = replace(LearnerParams(), **learner)
    try:
        return PipelineConfig(**kwargs)
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def load_config(path=None) -> PipelineConfig:
    """Read ``path``, else the file named by PATENTCHEM_CONFIG, else defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV) or None
    if path is None:
        return PipelineConfig()
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from exc
    return parse_config(text, str(p))
