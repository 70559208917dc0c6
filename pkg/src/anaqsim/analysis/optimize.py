"""Optimal optional evolution time and closed-form error-rate bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidArgumentError, UnsupportedError
from ..hamiltonians import DeviceProfile
from ..lattice import LatticeGeometry
from ..schedules import MethodId
from ._system import system
from .closed_form import error_norm_bound
from .rates import error_rate

INV_PHI = (math.sqrt(5) - 1) / 2
BRACKET_EPS = 1e3  # numeric search never goes beyond 1e3 * epsilon
BRACKET_CLOSED = 10.0  # ... nor beyond 10x the closed-form optimum


@dataclass(frozen=True)
class StepResult:
    t_star: float
    clamped: bool
    error_rate: float
    source: str = "closed-form"


@dataclass(frozen=True)
class BoundReport:
    method: MethodId
    epsilon: float
    coefficient: float
    exponent: float
    value: float
    source: str = "closed-form"
    degenerate: bool = False


def golden_section(f, a: float, b: float, xtol: float = 1e-6, max_iter: int = 200):
    """Minimise a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``.

    The end points are also compared so a boundary minimum is found exactly.
    """
    if not b >= a:
        raise InvalidArgumentError("golden_section needs a <= b")
    fa, fb = f(a), f(b)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    cands = [(fa, a), (fb, b), (fc, c), (fd, d)]
    fx, x = min(cands)
    return x, fx


def _term_bounds(geom):
    a = error_norm_bound(MethodId.S1, (2, 0), geom)
    b = error_norm_bound(MethodId.S1, (1, 1), geom)
    c = error_norm_bound(MethodId.S1, (0, 2), geom)
    return a, b, c


def closed_form_t_star(method, device: DeviceProfile, geom: LatticeGeometry) -> tuple[float, bool] | None:
    """Bound-based optimum ``(t, clamped)``; ``None`` when undefined (``J3 = 0``)."""
    method = MethodId.parse(method)
    eps = device.epsilon
    if method is MethodId.S_HALF:
        e_eps = error_norm_bound(MethodId.S_HALF, (0, 1), geom)
        e_t2 = error_norm_bound(MethodId.S_HALF, (2, 0), geom)
        if e_t2 == 0.0:
            return None
        return math.sqrt(eps * e_eps / e_t2), False
    if method is MethodId.S1:
        # minimise (t^2 A + t eps B + eps^2 C) / (6 eps + 3 t)
        a, b, c = _term_bounds(geom)
        if a == 0.0:
            return 0.0, True
        disc = 4 - (2 * b - c) / a
        if disc < 0:
            return 0.0, True
        t = eps * (math.sqrt(disc) - 2)
        return (0.0, True) if t <= 0 else (t, False)
    # no free-time optimum in the tabulated sequences
    return 0.0, True


def numeric_t_star(method, device: DeviceProfile, geom: LatticeGeometry, upper: float | None = None):
    """Golden-section minimiser of the exact error rate over ``[0, upper]``."""
    method = MethodId.parse(method)
    eps = device.epsilon
    if upper is None:
        upper = BRACKET_EPS * eps
        cf = closed_form_t_star(method, device, geom)
        if cf is not None and cf[0] > 0:
            upper = min(upper, BRACKET_CLOSED * cf[0])
    if upper <= 0:
        return 0.0, error_rate(method, 0.0, device, geom)
    return golden_section(lambda t: error_rate(method, t, device, geom), 0.0, upper, xtol=1e-6 * upper)


def optimal_step(method, device: DeviceProfile, geom: LatticeGeometry, numeric: bool = False) -> StepResult:
    """Optional time ``t*`` that minimises the error rate of one step.

    By default ``t*`` comes from the closed-form bounds. ``numeric=True``
    (and the ``J3 = 0`` case of S_HALF, where the closed form divides by
    zero) minimise the exact error rate by golden-section search instead.
    """
    method = MethodId.parse(method)
    if method is MethodId.C1:
        raise UnsupportedError("the C1 step is fixed by the Floquet period")
    if device.epsilon == 0:
        raise InvalidArgumentError("optimal step needs a finite pulse width")
    cf = closed_form_t_star(method, device, geom)
    if numeric or cf is None:
        t, er = numeric_t_star(method, device, geom)
        tol = 1e-6 * BRACKET_EPS * device.epsilon
        clamped = t <= tol
        return StepResult(0.0 if clamped else t, clamped, er, "numeric")
    t, clamped = cf
    return StepResult(t, clamped, error_rate(method, t, device, geom), "closed-form")


def sweep_step(method, device: DeviceProfile, geom: LatticeGeometry) -> StepResult:
    """Step used for empirical sweeps.

    S_HALF uses the numeric optimum: the bound-based constant sits off the
    true minimum by a factor ~2, which biases the measured slope at small
    epsilon. The other Trotter methods use their (clamped) closed form and
    C1 its fixed period.
    """
    method = MethodId.parse(method)
    if method is MethodId.C1:
        return StepResult(0.0, True, error_rate(method, 0.0, device, geom), "period")
    return optimal_step(method, device, geom, numeric=method is MethodId.S_HALF)


def fitted_rate_coefficient(method, device: DeviceProfile, geom: LatticeGeometry, exponent: float) -> float:
    """``coefficient`` with ``ER ~ coefficient * eps^exponent`` from three nearby points."""
    eps = device.epsilon
    logs = []
    for f in (0.5, 1.0, 2.0):
        e = eps * f
        er = error_rate(method, 0.0, DeviceProfile(e), geom)
        if er > 0:
            logs.append(math.log(er) - exponent * math.log(e))
    return float(math.exp(np.mean(logs))) if logs else 0.0


def analytic_bound(method, device: DeviceProfile, geom: LatticeGeometry) -> BoundReport:
    """Leading-order bound on the error rate at the optimal step."""
    method = MethodId.parse(method)
    eps = device.epsilon
    sysm = system(geom)
    j1, j2, j3 = sysm.j1, sysm.j2, sysm.j3

    def report(coef, expo, source="closed-form", degenerate=False):
        return BoundReport(method, eps, float(coef), float(expo), float(coef * eps**expo), source, degenerate)

    if method is MethodId.S_HALF:
        if j3 > 0:
            return report(12.2 * math.sqrt(j1 * j3), 0.5)
        # J3 = 0: Trotter term vanishes; bound the first-order idle term and
        # the S1 mixed/idle terms at the numeric optimum instead
        if eps == 0 or j1 == 0:
            return report(0.0, 1, "next-order", True)
        t, _ = numeric_t_star(method, device, geom)
        tau = 6 * eps + 3 * t
        _, b, c = _term_bounds(geom)
        val = (eps * error_norm_bound(MethodId.S_HALF, (0, 1), geom) + t * eps * b + eps**2 * c) / tau
        return report(val / eps, 1, "next-order", True)
    if method is MethodId.S1:
        return report(14 * j3 + 2.7 * j2, 1)
    if method is MethodId.S1_TILDE:
        return report(14 * j3 + 2.7 * j2, 1, "S1 closed form")
    if method is MethodId.C1:
        coef = (2 / math.pi) * (math.sqrt(142 + 24 * math.pi**2) / 18 * j3 + j2 / 3)
        return report(coef, 1)
    # S2: exponent from the step structure, coefficient fitted numerically
    if eps == 0 or sysm.n < 2:
        return report(0.0, 2, "fitted")
    return report(fitted_rate_coefficient(method, device, geom, 2.0), 2, "fitted")
