"""Parallel error-rate sweeps over pulse widths."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import InvalidArgumentError
from ..hamiltonians import DeviceProfile
from ..lattice import LatticeGeometry
from ..schedules import MethodId
from .optimize import analytic_bound, sweep_step
from .rates import step_error


@dataclass(frozen=True)
class SweepRow:
    method: MethodId
    nx: int
    ny: int
    epsilon: float
    t: float
    tau: float
    error_rate: float
    bound_value: float
    clamped: bool


def epsilon_grid(eps_min: float, eps_max: float, points_per_decade: int = 12) -> np.ndarray:
    """Log-spaced grid including both end points."""
    if not (0 < eps_min < eps_max):
        raise InvalidArgumentError("need 0 < epsilon_min < epsilon_max")
    if points_per_decade < 1:
        raise InvalidArgumentError("points_per_decade must be >= 1")
    decades = np.log10(eps_max / eps_min)
    n = max(int(round(decades * points_per_decade)) + 1, 2)
    return np.logspace(np.log10(eps_min), np.log10(eps_max), n)


def sweep_point(method, eps: float, geom: LatticeGeometry) -> SweepRow:
    method = MethodId.parse(method)
    device = DeviceProfile(float(eps))
    if geom.n_sites < 2:
        step = sweep_step(method, device, geom) if method is not MethodId.C1 else None
        t = step.t_star if step else 0.0
        err, tau = step_error(method, t, device, geom)
        return SweepRow(method, geom.nx, geom.ny, device.epsilon, t, tau, err / tau, 0.0, bool(step and step.clamped))
    step = sweep_step(method, device, geom)
    err, tau = step_error(method, step.t_star, device, geom)
    bound = analytic_bound(method, device, geom).value
    return SweepRow(method, geom.nx, geom.ny, device.epsilon, step.t_star, tau, err / tau, bound, step.clamped)


def error_rate_sweep(
    methods: Sequence, epsilons: Iterable[float], geom: LatticeGeometry, workers: int = 1
) -> list[SweepRow]:
    """Rows ordered by method, then epsilon. ``workers > 1`` maps points on threads."""
    jobs = [(MethodId.parse(m), float(e)) for m in methods for e in epsilons]
    if workers <= 1:
        return [sweep_point(m, e, geom) for m, e in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: sweep_point(job[0], job[1], geom), jobs))
