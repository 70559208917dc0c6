"""Rectangular atom arrays, Van der Waals couplings and interaction sums.

All sums run over *ordered* index tuples, so every unordered pair
contributes twice:

    J1 = sum_{i != j} J_ij
    J2 = sum_{i != j} J_ij^2
    J3 = sum_{i, k, j pairwise distinct} J_ik J_kj
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import FitDegenerateError, InvalidArgumentError, SingularCouplingError

DEFAULT_C6 = 1.0e6  # MHz um^6
DEFAULT_SPACING = 1.0  # um


@dataclass(frozen=True)
class LatticeGeometry:
    nx: int
    ny: int
    spacing: float = DEFAULT_SPACING
    c6: float = DEFAULT_C6
    positions: tuple = field(default=None)

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise InvalidArgumentError(f"lattice dimensions must be >= 1, got {self.nx}x{self.ny}")
        if not self.spacing > 0:
            raise InvalidArgumentError(f"spacing must be positive, got {self.spacing}")
        if not self.c6 > 0:
            raise InvalidArgumentError(f"c6 must be positive, got {self.c6}")
        if self.positions is None:
            # row-major: site index = y * nx + x
            pos = tuple(
                (x * self.spacing, y * self.spacing) for y in range(self.ny) for x in range(self.nx)
            )
            object.__setattr__(self, "positions", pos)
        else:
            object.__setattr__(self, "positions", tuple(tuple(map(float, p)) for p in self.positions))

    @classmethod
    def from_positions(cls, positions: Sequence[Sequence[float]], c6: float = DEFAULT_C6):
        """Arbitrary 2-D site list. ``nx`` is the site count and ``ny`` is 1."""
        pts = [tuple(p) for p in positions]
        if not pts:
            raise InvalidArgumentError("need at least one site")
        if any(len(p) != 2 for p in pts):
            raise InvalidArgumentError("positions must be 2-vectors")
        return cls(nx=len(pts), ny=1, spacing=1.0, c6=c6, positions=tuple(pts))

    @property
    def n_sites(self) -> int:
        return len(self.positions)

    @property
    def positions_array(self) -> np.ndarray:
        return np.array(self.positions, dtype=float).reshape(-1, 2)


@dataclass(frozen=True, eq=False)
class CouplingMatrix:
    j: np.ndarray

    @property
    def n(self) -> int:
        return self.j.shape[0]


@dataclass(frozen=True)
class JSumFit:
    slope: float
    intercept: float
    residual: float


def build_lattice(nx: int, ny: int, spacing: float = DEFAULT_SPACING, c6: float = DEFAULT_C6) -> LatticeGeometry:
    return LatticeGeometry(int(nx), int(ny), float(spacing), float(c6))


def coupling_matrix(geom: LatticeGeometry) -> CouplingMatrix:
    """``J_ij = C6 / |r_i - r_j|^6`` with a zero diagonal."""
    j, ok = kernels.pair_couplings(geom.positions_array, geom.c6)
    if not ok:
        raise SingularCouplingError("two sites coincide; coupling diverges")
    j.setflags(write=False)
    return CouplingMatrix(j)


def _jarray(geom_or_j) -> np.ndarray:
    if isinstance(geom_or_j, LatticeGeometry):
        return coupling_matrix(geom_or_j).j
    if isinstance(geom_or_j, CouplingMatrix):
        return geom_or_j.j
    return np.asarray(geom_or_j, dtype=float)


def j_sum(order: int, geom) -> float:
    """Interaction sum of the given order (1, 2 or 3); accepts a geometry or a J matrix."""
    j = _jarray(geom)
    if order == 1:
        return float(j.sum())
    if order == 2:
        return float((j * j).sum())
    if order == 3:
        # sum_k sum_{i != j} J_ik J_jk = 2 sum_k sum_{j < i} J_ik J_jk; prefix sums
        # keep every term nonnegative, so no cancellation when one coupling dominates
        before = np.zeros_like(j)
        np.cumsum(j[:-1], axis=0, out=before[1:])
        return float(2.0 * (j * before).sum())
    raise InvalidArgumentError(f"j_sum order must be 1, 2 or 3, got {order}")


def j_sums(geom) -> tuple[float, float, float]:
    j = _jarray(geom)
    return j_sum(1, j), j_sum(2, j), j_sum(3, j)


def j3_bruteforce(geom) -> float:
    return kernels.triple_sum_bruteforce(_jarray(geom))


def fit_j_scaling(samples: Iterable[tuple[float, float]]) -> JSumFit:
    """Ordinary least-squares line ``J ~ slope * N + intercept``.

    ``residual`` is the root-mean-square deviation of the samples from the line.
    """
    pts = np.asarray(list(samples), dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 2 or len(np.unique(pts[:, 0])) < 2:
        raise FitDegenerateError("need at least two distinct sizes to fit a line")
    if pts.shape[0] < 3:
        raise InvalidArgumentError("fit_j_scaling needs at least three samples")
    slope, intercept = np.polyfit(pts[:, 0], pts[:, 1], 1)
    resid = pts[:, 1] - (slope * pts[:, 0] + intercept)
    return JSumFit(float(slope), float(intercept), float(np.sqrt(np.mean(resid**2))))


def j_sweep(nx: int, ny_values: Iterable[int], spacing: float = 1.0, c6: float = 1.0, orders=(1, 2, 3)):
    """Rows ``(order, nx, ny, N, value)`` for a fixed-width family of arrays."""
    rows = []
    for ny in ny_values:
        geom = build_lattice(nx, ny, spacing, c6)
        sums = j_sums(geom)
        for order in orders:
            rows.append((order, nx, ny, geom.n_sites, sums[order - 1]))
    return rows
