"""Scenario configuration: a single JSON file drives every CLI command.

Layout (all blocks optional except trajectory):

    {
      "detector":   {"omega": 1.0, "epsilon": 0.025,
                     "coupling_abs": 0.05, "coupling_phase": 0.0},
      "trajectory": {"inertial_duration": 1.0, "acceleration": 3.0,
                     "accel_duration": 1.0},
      "quadrature": {"rel_tol": 1e-8, "abs_tol": 1e-12, "max_depth": 18},
      "sweep":      {"variable": "T", "values": [0.1, 0.2, ...]},
      "bloch":      {"n_samples": 2000},
      "oracle":     {"n": 600},
      "output":     {"directory": "out", "formats": ["csv", "json"]}
    }

For a "T" sweep with no explicit values, 80 uniform points over (0, 2]
are used. Sweep values must be strictly increasing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .correlators import QuadConfig, TrajectoryPlan
from .wightman import DetectorParams

__all__ = ["ConfigError", "SweepSpec", "ScenarioConfig", "load_config"]

SWEEP_VARIABLES = ("T", "t", "a")

_DEFAULT_SWEEP_COUNT = 80
_DEFAULT_SWEEP_MAX = 2.0


class ConfigError(ValueError):
    """Malformed or inconsistent configuration."""


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    values: tuple

    def __post_init__(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigError(f"sweep variable must be one of {SWEEP_VARIABLES}, got {self.variable!r}")
        if not self.values:
            raise ConfigError("sweep needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ConfigError("sweep values must be strictly increasing")
        if self.variable == "a" and any(v <= 0 for v in self.values):
            raise ConfigError("acceleration sweep values must be > 0")
        if self.variable in ("T", "t") and any(v < 0 for v in self.values):
            raise ConfigError("duration sweep values must be >= 0")


@dataclass(frozen=True)
class ScenarioConfig:
    detector: DetectorParams
    plan: TrajectoryPlan
    quadrature: QuadConfig
    sweep: SweepSpec | None
    bloch_samples: int
    oracle_n: int
    out_dir: Path
    formats: tuple = ("csv", "json")

    def plan_for(self, variable: str, value: float) -> TrajectoryPlan:
        """Plan with one trajectory field replaced by the sweep value."""
        t, a, T = self.plan.inertial_duration, self.plan.acceleration, self.plan.accel_duration
        if variable == "T":
            return TrajectoryPlan(t, a, value)
        if variable == "t":
            return TrajectoryPlan(value, a, T)
        return TrajectoryPlan(t, value, T)


def _section(raw: dict, name: str) -> dict:
    sec = raw.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError(f"config section {name!r} must be an object")
    return sec


def _number(sec: dict, key: str, default, section: str):
    value = sec.get(key, default)
    if value is None:
        raise ConfigError(f"missing required field {section}.{key}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field {section}.{key} must be a number, got {value!r}")
    return value


def load_config(path) -> ScenarioConfig:
    """Parse and validate a scenario configuration file."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")

    det = _section(raw, "detector")
    traj = _section(raw, "trajectory")
    quad = _section(raw, "quadrature")
    bloch = _section(raw, "bloch")
    oracle = _section(raw, "oracle")
    output = _section(raw, "output")

    try:
        detector = DetectorParams(
            omega=float(_number(det, "omega", 1.0, "detector")),
            epsilon=float(_number(det, "epsilon", 0.025, "detector")),
            coupling_abs=float(_number(det, "coupling_abs", 0.05, "detector")),
            coupling_phase=float(_number(det, "coupling_phase", 0.0, "detector")),
        )
        plan = TrajectoryPlan(
            inertial_duration=float(_number(traj, "inertial_duration", None, "trajectory")),
            acceleration=float(_number(traj, "acceleration", None, "trajectory")),
            accel_duration=float(_number(traj, "accel_duration", None, "trajectory")),
        )
        quadrature = QuadConfig(
            rel_tol=float(_number(quad, "rel_tol", 1e-8, "quadrature")),
            abs_tol=float(_number(quad, "abs_tol", 1e-12, "quadrature")),
            max_depth=int(_number(quad, "max_depth", 18, "quadrature")),
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    sweep = None
    if "sweep" in raw:
        sec = _section(raw, "sweep")
        variable = sec.get("variable", "T")
        values = sec.get("values")
        if values is None:
            if variable != "T":
                raise ConfigError("sweep.values is required for variables other than 'T'")
            step = _DEFAULT_SWEEP_MAX / _DEFAULT_SWEEP_COUNT
            values = [step * (i + 1) for i in range(_DEFAULT_SWEEP_COUNT)]
        if not isinstance(values, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
            raise ConfigError("sweep.values must be a list of numbers")
        sweep = SweepSpec(variable=str(variable), values=tuple(float(v) for v in values))

    n_samples = int(_number(bloch, "n_samples", 2000, "bloch"))
    if n_samples < 6:
        raise ConfigError(f"bloch.n_samples must be >= 6, got {n_samples}")
    oracle_n = int(_number(oracle, "n", 600, "oracle"))
    if oracle_n < 2:
        raise ConfigError(f"oracle.n must be >= 2, got {oracle_n}")

    out_dir = Path(output.get("directory", "out"))
    formats = output.get("formats", ["csv", "json"])
    if not isinstance(formats, list) or not all(isinstance(f, str) for f in formats):
        raise ConfigError("output.formats must be a list of strings")

    return ScenarioConfig(
        detector=detector,
        plan=plan,
        quadrature=quadrature,
        sweep=sweep,
        bloch_samples=n_samples,
        oracle_n=oracle_n,
        out_dir=out_dir,
        formats=tuple(formats),
    )
