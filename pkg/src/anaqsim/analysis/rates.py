"""Exact error rates of a single step and of repeated steps."""
from __future__ import annotations

import numpy as np

from ..errors import InvalidArgumentError, UnsupportedError
from ..hamiltonians import DeviceProfile
from ..lattice import LatticeGeometry
from ..linalg import spectral_norm
from ..schedules import MethodId, build_step_plan
from ._system import system


def step_error(method, t: float, device: DeviceProfile, geom: LatticeGeometry, ideal_pulses: bool = False):
    """Return ``(|| F^dagger U - exp(-i tau H_XXX) ||, tau)`` for one step.

    ``ideal_pulses`` replaces every pulse by an instantaneous rotation, i.e.
    evaluates the sequence at zero pulse width.
    """
    method = MethodId.parse(method)
    if ideal_pulses:
        device = DeviceProfile(0.0)
    build_step_plan(method, t, device)  # validates (method, t)
    sysm = system(geom)
    u, tau = sysm.lab(method, t, device.epsilon)
    # ||F^dagger U - T|| == ||U - F T|| for unitary F; the right side avoids
    # the roundoff of F^dagger F != 1 when U and F agree
    return spectral_norm(u - sysm.frame(method) @ sysm.target_step(tau)), tau


def error_rate(method, t: float, device: DeviceProfile, geom: LatticeGeometry, ideal_pulses: bool = False) -> float:
    """Spectral-norm distance per unit step duration between the frame-corrected
    engineered step and exact Heisenberg evolution over the same duration."""
    err, tau = step_error(method, t, device, geom, ideal_pulses)
    if tau <= 0:
        raise InvalidArgumentError(f"{method} step at t={t}, epsilon={device.epsilon} has zero duration")
    return err / tau


def multi_step_delta(method, n: int, device: DeviceProfile, geom: LatticeGeometry, t: float | None = None) -> float:
    """``delta_1 - delta_n`` for total time ``T = n * tau_U``.

    ``delta_1`` uses one stretched step of duration ``T``; ``delta_n`` uses
    ``n`` steps at the sweep optimum (or the given) optional time ``t``. Positive values
    mean that many small steps beat one large one.
    """
    from .optimize import sweep_step

    method = MethodId.parse(method)
    if n < 1:
        raise InvalidArgumentError("number of steps must be >= 1")
    if method is MethodId.C1:
        raise UnsupportedError("C1 has a fixed Floquet step; multi-step comparison needs a Trotter method")
    if t is None:
        t = sweep_step(method, device, geom).t_star
    sysm = system(geom)
    eps = device.epsilon
    w, tau = sysm.corrected(method, t, eps)
    total = n * tau
    # every Trotter step length is tau(0) + 3 t
    t_big = t + (n - 1) * tau / 3
    w_big, tau_big = sysm.corrected(method, t_big, eps)
    assert np.isclose(tau_big, total, rtol=1e-12, atol=0)
    target = sysm.target_step(total)
    delta_1 = spectral_norm(w_big - target)
    delta_n = spectral_norm(np.linalg.matrix_power(w, n) - target)
    return float(delta_1 - delta_n)
