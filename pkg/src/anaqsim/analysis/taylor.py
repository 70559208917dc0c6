"""Taylor coefficients of the step error by finite differences.

The step error ``G(t, eps) = F^dagger U(t, eps) - exp(-i tau(t, eps) H_XXX)``
is analytic in both arguments once pulses are parameterised by their fixed
rotation angle, so mixed derivatives at ``t = eps = 0`` can be taken by
symmetric stencils that reach into negative durations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import CapacityError, InvalidArgumentError, NumericalFailureError, UnsupportedError
from ..hamiltonians import DeviceProfile
from ..lattice import LatticeGeometry
from ..linalg import DenseOperator, spectral_norm
from ..schedules import MethodId
from ._system import system

MAX_ORDER = 3
MAX_SITES = 8
RICHARDSON_LEVELS = 3
RTOL = 1e-6
CHOP = 1e-7  # results below CHOP * ||H||^k are roundoff and returned as exact zero

# central stencils with O(h^2) error: offset -> weight
_STENCILS = {
    0: {0: 1.0},
    1: {-1: -0.5, 1: 0.5},
    2: {-1: 1.0, 0: -2.0, 1: 1.0},
    3: {-2: -0.5, -1: 1.0, 1: -1.0, 2: 0.5},
}
# base step relative to max(eps_ref, 1/||H||). Third derivatives divide
# roundoff by h^3, so they need a wider stencil than the first two orders.
_H0 = {1: 1e-3, 2: 1e-3, 3: 2e-2}


@dataclass(frozen=True, order=True)
class ErrorTermId:
    k1: int  # power of t
    k2: int  # power of epsilon

    def __post_init__(self):
        if self.k1 < 0 or self.k2 < 0:
            raise InvalidArgumentError("error-term powers must be non-negative")
        if self.k1 + self.k2 < 1:
            raise InvalidArgumentError("error terms have k1 + k2 >= 1")

    @property
    def order(self) -> int:
        return self.k1 + self.k2


def _as_id(term) -> ErrorTermId:
    return term if isinstance(term, ErrorTermId) else ErrorTermId(*term)


def _step_error(sysm, method, t, eps):
    w, tau = sysm.corrected(method, t, eps)
    return w - sysm.target_step(tau)


def _stencil(sysm, method, k1, k2, h):
    acc = 0.0
    for a, wa in _STENCILS[k1].items():
        for b, wb in _STENCILS[k2].items():
            acc = acc + (wa * wb) * _step_error(sysm, method, a * h, b * h)
    return acc / h ** (k1 + k2)


def taylor_error_term(
    method,
    term,
    device: DeviceProfile | None = None,
    geom: LatticeGeometry | None = None,
    h0: float | None = None,
) -> DenseOperator:
    """``(1/(k1! k2!)) d^k1_t d^k2_eps G`` at the origin."""
    method = MethodId.parse(method)
    term = _as_id(term)
    if geom is None:
        raise InvalidArgumentError("geometry is required")
    if term.order > MAX_ORDER:
        raise InvalidArgumentError(f"k1 + k2 must be <= {MAX_ORDER}")
    if geom.n_sites > MAX_SITES:
        raise CapacityError(f"finite-difference terms limited to {MAX_SITES} sites")
    if method is MethodId.C1 and term.k1:
        raise UnsupportedError("C1 has no free evolution time")
    sysm = system(geom)
    hn = sysm.idle_norm
    dim = 1 << sysm.n
    if hn == 0.0:
        return DenseOperator(np.zeros((dim, dim), dtype=np.complex128))
    eps_ref = device.epsilon if device is not None else 0.0
    if h0 is None:
        h0 = _H0[term.order] * max(eps_ref, 1.0 / hn)

    # Richardson tableau on h, h/2, h/4 with error series in h^2
    table = []
    for lvl in range(RICHARDSON_LEVELS):
        row = [_stencil(sysm, method, term.k1, term.k2, h0 / 2**lvl)]
        for j in range(1, lvl + 1):
            row.append(row[j - 1] + (row[j - 1] - table[lvl - 1][j - 1]) / (4**j - 1))
        table.append(row)
    best = table[-1][-1]
    resid = spectral_norm(best - table[-1][-2])
    norm = spectral_norm(best)
    # identically vanishing terms are judged against the natural scale ||H||^k
    if resid > RTOL * max(norm, hn**term.order):
        raise NumericalFailureError(
            f"Richardson residual {resid:.3e} exceeds tolerance for {method} {term}"
        )
    if norm <= CHOP * hn**term.order:
        return DenseOperator(np.zeros((dim, dim), dtype=np.complex128))
    best = best / (math.factorial(term.k1) * math.factorial(term.k2))
    return DenseOperator(best)


def leading_error_monomials(
    method, geom: LatticeGeometry, max_order: int = MAX_ORDER, rtol: float = 1e-6
) -> list[tuple[int, int]]:
    """Lowest nonvanishing ``k2`` for every ``k1`` up to ``max_order``.

    Returns the curve ``k2 = B(k1)`` as integer points. A term counts as
    nonzero when its norm exceeds ``rtol * ||H||^(k1 + k2)``.
    """
    method = MethodId.parse(method)
    sysm = system(geom)
    hn = sysm.idle_norm
    points = []
    k1_values = [0] if method is MethodId.C1 else range(max_order + 1)
    for k1 in k1_values:
        for k2 in range(max_order + 1 - k1):
            if k1 + k2 == 0:
                continue
            op = taylor_error_term(method, (k1, k2), None, geom)
            if spectral_norm(op) > rtol * hn ** (k1 + k2):
                points.append((k1, k2))
                break
    return points
