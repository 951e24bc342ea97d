"""Run configuration: one flat ``key = value`` document per run."""

from __future__ import annotations

import configparser
import dataclasses
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .meanfield import MODEL_KINDS

__all__ = ["RunConfig", "parse_config", "load_config", "OBSERVABLES", "AXES"]

SPIN_OBSERVABLES = ("im_photon", "im_chi_xx", "im_chi_zz", "poles")
QHE_OBSERVABLES = ("conductivity", "poles")
OBSERVABLES = tuple(dict.fromkeys(SPIN_OBSERVABLES + QHE_OBSERVABLES))
AXES = ("coupling", "none", "plasma_freq", "cyclotron_freq")
FORMATS = ("csv", "structured")


@dataclass(frozen=True)
class RunConfig:
    """Everything a sweep needs.

    ``axis`` selects the swept parameter: ``coupling`` (spin models),
    ``plasma_freq`` or ``cyclotron_freq`` (``qhe``), or ``none`` for a
    single axis point at the fixed parameters.
    """

    model: str
    omega_z: float = 1.0
    omega_x: float = 0.0
    J: float = 0.0
    z_coord: int = 0
    coupling: float = 0.0
    cavity_freq: float = 1.0
    zeta: float = 0.0
    static_shift: float = 0.0
    plasma_freq: float = 0.0
    cyclotron_freq: float = 0.0
    filling: float = 1.0
    axis: str = "coupling"
    axis_min: float = 0.0
    axis_max: float = 1.0
    axis_points: int = 2
    omega_min: float = 0.0
    omega_max: float = 3.0
    omega_points: int = 2
    delta: float = 1e-3
    observables: tuple = ("im_photon",)
    output: str = ""
    format: str = "csv"

    def __post_init__(self):
        kinds = MODEL_KINDS + ("qhe",)
        if self.model not in kinds:
            raise ConfigError(f"model must be one of {kinds}, got {self.model!r}")
        if self.axis not in AXES:
            raise ConfigError(f"axis must be one of {AXES}, got {self.axis!r}")
        qhe = self.model == "qhe"
        if qhe and self.axis == "coupling":
            raise ConfigError("qhe sweeps use axis = plasma_freq, cyclotron_freq or none")
        if not qhe and self.axis in ("plasma_freq", "cyclotron_freq"):
            raise ConfigError(f"axis {self.axis!r} is only available for model = qhe")
        allowed = QHE_OBSERVABLES if qhe else SPIN_OBSERVABLES
        if not self.observables:
            raise ConfigError("observables must not be empty")
        for obs in self.observables:
            if obs not in allowed:
                raise ConfigError(f"observable {obs!r} not available for model {self.model!r}; choose from {allowed}")
        if "im_chi_zz" in self.observables and self.model != "lmg_transverse":
            raise ConfigError("im_chi_zz requires model = lmg_transverse")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.axis != "none":
            if self.axis_points < 2 or not self.axis_max > self.axis_min:
                raise ConfigError("axis range must be non-empty with axis_points >= 2")
        if self.omega_points < 2 or not self.omega_max > self.omega_min:
            raise ConfigError("omega range must be non-empty with omega_points >= 2")
        if not self.delta > 0:
            raise ConfigError("delta must be positive for map sweeps")
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, float) and not np.isfinite(v):
                raise ConfigError(f"{f.name} must be finite")

    def axis_values(self) -> np.ndarray:
        if self.axis == "none":
            return np.array([self._fixed_axis_value()])
        return np.linspace(self.axis_min, self.axis_max, self.axis_points)

    def _fixed_axis_value(self) -> float:
        return self.plasma_freq if self.model == "qhe" else self.coupling

    def omega_values(self) -> np.ndarray:
        return np.linspace(self.omega_min, self.omega_max, self.omega_points)

    def as_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["observables"] = list(self.observables)
        return d


_TYPES = {f.name: f.type for f in dataclasses.fields(RunConfig)}


def _convert(key: str, raw: str):
    kind = _TYPES[key]
    try:
        if kind == "float":
            return float(raw)
        if kind == "int":
            value = float(raw)
            if value != int(value):
                raise ValueError
            return int(value)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r} as {kind}") from None
    if kind == "tuple":
        return tuple(s.strip() for s in raw.split(",") if s.strip())
    return raw.strip()


def parse_config(text: str) -> RunConfig:
    """Parse a flat configuration document.

    Lines are ``key = value`` (``:`` also accepted); ``#`` and ``;`` start
    comments.  Unknown or repeated keys are errors.

    Raises
    ------
    ConfigError
    """
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"), strict=True)
    parser.optionxform = str  # keys are case-sensitive (J)
    try:
        parser.read_string("[run]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed configuration: {exc}") from None
    if parser.sections() != ["run"]:
        raise ConfigError("section headers are not allowed")
    values = {}
    for key, raw in parser.items("run"):
        if key not in _TYPES:
            raise ConfigError(f"unknown key {key!r}")
        values[key] = _convert(key, raw)
    if "model" not in values:
        raise ConfigError("missing required key 'model'")
    return RunConfig(**values)


def load_config(path: str | Path) -> RunConfig:
    """Read and parse a configuration file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read configuration {path}: {exc}") from None
    return parse_config(text)
