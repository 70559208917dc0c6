"""Legendre-type scaling analysis and log-log slope fits.

An error term ``t^k1 eps^k2`` contributes ``eps^(alpha (k1 - 1) + k2)`` to the
error rate when ``t ~ eps^alpha``. The optimal rate exponent is the lower
convex envelope of the leading terms ``k2 = B(k1)`` evaluated at ``k1 = 1``,
and the optimal ``alpha`` is minus its slope there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgumentError


@dataclass(frozen=True)
class ErrorMonomialSet:
    points: tuple

    def __post_init__(self):
        pts = tuple((int(a), int(b)) for a, b in self.points)
        if not pts:
            raise InvalidArgumentError("monomial set is empty")
        if any(a < 0 or b < 0 for a, b in pts):
            raise InvalidArgumentError("monomial powers must be non-negative")
        k1s = [a for a, _ in pts]
        if len(set(k1s)) != len(k1s):
            raise InvalidArgumentError("at most one k2 per k1")
        object.__setattr__(self, "points", tuple(sorted(pts)))


@dataclass(frozen=True)
class ScalingResult:
    alpha: float
    rate_exponent: float
    alpha_range: tuple | None = None

    @property
    def alpha_mid(self) -> float:
        """Representative alpha: the interval midpoint when a range is reported."""
        if self.alpha_range is None:
            return self.alpha
        lo, hi = self.alpha_range
        return lo if math.isinf(hi) else (lo + hi) / 2


def _lower_hull(points):
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point if it lies on or above the chord
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def legendre_scaling(mset: ErrorMonomialSet | Iterable) -> ScalingResult:
    if not isinstance(mset, ErrorMonomialSet):
        mset = ErrorMonomialSet(tuple(mset))
    pts = list(mset.points)
    if len(pts) == 1 and pts[0][0] == 0:
        return ScalingResult(0.0, float(pts[0][1]), (0.0, math.inf))
    hull = _lower_hull(pts)
    xs = [p[0] for p in hull]
    if not xs[0] <= 1 <= xs[-1]:
        raise InvalidArgumentError("lower envelope is undefined at k1 = 1")
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if x1 == 1 or x2 == 1:
            continue
        if x1 < 1 < x2:
            slope = (y2 - y1) / (x2 - x1)
            rate = y1 + slope * (1 - x1)
            return ScalingResult(max(-slope, 0.0), float(rate))
    # k1 = 1 is a hull vertex
    i = xs.index(1)
    rate = float(hull[i][1])
    left = (hull[i][1] - hull[i - 1][1]) / (1 - hull[i - 1][0]) if i > 0 else -math.inf
    right = (hull[i + 1][1] - hull[i][1]) / (hull[i + 1][0] - 1) if i + 1 < len(hull) else math.inf
    lo, hi = max(-right, 0.0), -left
    if lo == hi:
        return ScalingResult(lo, rate)
    return ScalingResult(lo, rate, (lo, hi))


def loglog_slope(samples: Sequence[tuple[float, float]]) -> tuple[float, float, float]:
    """Least-squares ``log v = slope log eps + intercept``; returns ``(slope, intercept, r2)``."""
    arr = np.asarray(list(samples), dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 3 or arr.shape[1] != 2:
        raise InvalidArgumentError("loglog_slope needs at least three (epsilon, value) pairs")
    if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("loglog_slope samples must be positive and finite")
    x, y = np.log(arr[:, 0]), np.log(arr[:, 1])
    if np.ptp(x) == 0:
        raise InvalidArgumentError("loglog_slope needs distinct epsilon values")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), r2
