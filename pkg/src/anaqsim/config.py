"""Experiment configuration files (TOML, or JSON as an alternative)."""
from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import InvalidArgumentError
from .hamiltonians import DeviceProfile
from .lattice import DEFAULT_C6, DEFAULT_SPACING, LatticeGeometry, build_lattice
from .schedules import MethodId


class ConfigError(InvalidArgumentError):
    """Configuration file is missing, unreadable or inconsistent."""


@dataclass(frozen=True)
class GeometryBlock:
    nx: int = 2
    ny: int = 2
    spacing_um: float = DEFAULT_SPACING
    c6: float = DEFAULT_C6
    # optional geometry sweep (error-terms, jsums)
    nx_values: tuple = ()
    ny_values: tuple = ()

    def lattice(self, nx: int | None = None, ny: int | None = None) -> LatticeGeometry:
        return build_lattice(self.nx if nx is None else nx, self.ny if ny is None else ny, self.spacing_um, self.c6)

    def sweep(self) -> list[tuple[int, int]]:
        nxs = self.nx_values or (self.nx,)
        nys = self.ny_values or (self.ny,)
        return [(a, b) for a in nxs for b in nys]


@dataclass(frozen=True)
class SweepBlock:
    epsilon_min: float = 1e-5
    epsilon_max: float = 1e-2
    points_per_decade: int = 12
    workers: int = 1


@dataclass(frozen=True)
class OutputBlock:
    directory: str = "out"
    formats: tuple = ("csv", "svg")


@dataclass(frozen=True)
class ExperimentConfig:
    geometry: GeometryBlock = field(default_factory=GeometryBlock)
    device: DeviceProfile = field(default_factory=lambda: DeviceProfile(1e-3))
    methods: tuple = tuple(MethodId)
    sweep: SweepBlock = field(default_factory=SweepBlock)
    output: OutputBlock = field(default_factory=OutputBlock)
    n_max: int = 10
    schedule_t: float = 0.0

    def __post_init__(self):
        if not self.methods:
            raise ConfigError("methods must be non-empty")
        if not self.sweep.epsilon_min < self.sweep.epsilon_max:
            raise ConfigError("epsilon_min must be below epsilon_max")
        if self.sweep.epsilon_min <= 0:
            raise ConfigError("epsilon_min must be positive")
        if self.sweep.points_per_decade < 1:
            raise ConfigError("points_per_decade must be >= 1")
        if self.sweep.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.n_max < 1:
            raise ConfigError("n_max must be >= 1")

    def with_methods(self, methods) -> "ExperimentConfig":
        return _replace(self, methods=_methods(methods))

    def with_output(self, directory: str) -> "ExperimentConfig":
        return _replace(self, output=OutputBlock(directory, self.output.formats))


def _replace(cfg, **kw):
    from dataclasses import replace

    return replace(cfg, **kw)


def _methods(values) -> tuple:
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()]
    try:
        return tuple(MethodId.parse(v) for v in values)
    except InvalidArgumentError as exc:
        raise ConfigError(str(exc)) from None


def _take(block: dict, name: str, allowed: set) -> dict:
    if not isinstance(block, dict):
        raise ConfigError(f"[{name}] must be a table")
    extra = set(block) - allowed
    if extra:
        raise ConfigError(f"unknown keys in [{name}]: {sorted(extra)}")
    return block


def _int_tuple(v, name):
    if isinstance(v, int):
        return (v,)
    try:
        return tuple(int(x) for x in v)
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a list of integers") from None


def config_from_dict(data: dict) -> ExperimentConfig:
    data = dict(data)
    top = {"geometry", "device", "methods", "sweep", "output", "multistep", "schedule"}
    extra = set(data) - top
    if extra:
        raise ConfigError(f"unknown top-level keys: {sorted(extra)}")
    try:
        g = _take(data.get("geometry", {}), "geometry", {"nx", "ny", "spacing_um", "c6", "nx_values", "ny_values"})
        geometry = GeometryBlock(
            nx=int(g.get("nx", 2)),
            ny=int(g.get("ny", 2)),
            spacing_um=float(g.get("spacing_um", DEFAULT_SPACING)),
            c6=float(g.get("c6", DEFAULT_C6)),
            nx_values=_int_tuple(g.get("nx_values", ()), "nx_values"),
            ny_values=_int_tuple(g.get("ny_values", ()), "ny_values"),
        )
        geometry.lattice()  # validates dimensions, spacing and c6

        d = _take(data.get("device", {}), "device", {"epsilon", "omega"})
        if "epsilon" in d and "omega" in d:
            raise ConfigError("give either device.epsilon or device.omega, not both")
        device = DeviceProfile.from_omega(float(d["omega"])) if "omega" in d else DeviceProfile(float(d.get("epsilon", 1e-3)))

        s = _take(data.get("sweep", {}), "sweep", {"epsilon_min", "epsilon_max", "points_per_decade", "workers"})
        sweep = SweepBlock(
            float(s.get("epsilon_min", 1e-5)),
            float(s.get("epsilon_max", 1e-2)),
            int(s.get("points_per_decade", 12)),
            int(s.get("workers", 1)),
        )
        o = _take(data.get("output", {}), "output", {"directory", "formats"})
        formats = tuple(str(f).lower() for f in o.get("formats", ("csv", "svg")))
        if set(formats) - {"csv", "svg", "json", "txt"}:
            raise ConfigError(f"unsupported output formats {formats}")
        output = OutputBlock(str(o.get("directory", "out")), formats)
        m = _take(data.get("multistep", {}), "multistep", {"n_max"})
        sch = _take(data.get("schedule", {}), "schedule", {"t"})
        t = float(sch.get("t", 0.0))
        if not (math.isfinite(t) and t >= 0):
            raise ConfigError("schedule.t must be >= 0")
        return ExperimentConfig(
            geometry=geometry,
            device=device,
            methods=_methods(data.get("methods", [m.value for m in MethodId])),
            sweep=sweep,
            output=output,
            n_max=int(m.get("n_max", 10)),
            schedule_t=t,
        )
    except ConfigError:
        raise
    except (InvalidArgumentError, TypeError, ValueError, KeyError) as exc:
        raise ConfigError(str(exc)) from None


def load_config(path) -> ExperimentConfig:
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc.strerror}") from None
    try:
        if p.suffix.lower() == ".json":
            data = json.loads(raw.decode())
        else:
            data = tomllib.loads(raw.decode())
    except (ValueError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot parse config {p}: {exc}") from None
    return config_from_dict(data)
