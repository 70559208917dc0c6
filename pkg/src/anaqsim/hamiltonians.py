"""Device, drive and target Hamiltonians.

Units: times in microseconds, fields and couplings in rad/us. The drive
couples to spin operators ``S = sigma / 2``, so a pulse of duration
``epsilon`` at field ``omega_max = pi / (2 epsilon)`` is an exact pi/2
rotation when interactions are switched off.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidArgumentError
from .lattice import LatticeGeometry, coupling_matrix
from .linalg import DenseOperator, PauliFactor, check_capacity, pauli_sum

AXES = ("X", "Y", "Z")


@dataclass(frozen=True)
class InteractionSpec:
    cx: float
    cy: float
    cz: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in self.coeffs):
            raise InvalidArgumentError("interaction coefficients must be finite")

    @property
    def coeffs(self) -> tuple[float, float, float]:
        return (self.cx, self.cy, self.cz)


ISING = InteractionSpec(0.0, 0.0, 1.0)
HEISENBERG = InteractionSpec(1 / 3, 1 / 3, 1 / 3)


@dataclass(frozen=True)
class FieldVector:
    bx: float = 0.0
    by: float = 0.0
    bz: float = 0.0

    @property
    def array(self) -> np.ndarray:
        return np.array([self.bx, self.by, self.bz], dtype=float)

    @property
    def magnitude(self) -> float:
        return float(np.linalg.norm(self.array))


@dataclass(frozen=True)
class DeviceProfile:
    """Pulse hardware limit. ``epsilon = 0`` means ideal, instantaneous pulses."""

    epsilon: float

    def __post_init__(self):
        if not (self.epsilon >= 0 and math.isfinite(self.epsilon)):
            raise InvalidArgumentError(f"epsilon must be finite and >= 0, got {self.epsilon}")

    @classmethod
    def from_omega(cls, omega_max: float) -> "DeviceProfile":
        if not omega_max > 0:
            raise InvalidArgumentError("omega_max must be positive")
        return cls(math.pi / (2 * omega_max))

    @property
    def omega_max(self) -> float:
        return math.inf if self.epsilon == 0 else math.pi / (2 * self.epsilon)

    @property
    def ideal(self) -> bool:
        return self.epsilon == 0


def _pair_terms(geom: LatticeGeometry, spec: InteractionSpec):
    j = coupling_matrix(geom).j
    n = geom.n_sites
    terms = []
    for i in range(n):
        for k in range(i + 1, n):
            if j[i, k] == 0:
                continue
            for axis, c in zip(AXES, spec.coeffs):
                if c:
                    terms.append((j[i, k] * c, [PauliFactor(i, axis), PauliFactor(k, axis)]))
    return terms


@lru_cache(maxsize=64)
def _idle_matrix(geom: LatticeGeometry, spec: InteractionSpec) -> np.ndarray:
    check_capacity(geom.n_sites)
    m = pauli_sum(geom.n_sites, _pair_terms(geom, spec))
    m.setflags(write=False)
    return m


def idle_hamiltonian(geom: LatticeGeometry, spec: InteractionSpec = ISING) -> DenseOperator:
    """``sum_{i<j} J_ij (cx X_i X_j + cy Y_i Y_j + cz Z_i Z_j)``."""
    return DenseOperator(_idle_matrix(geom, spec), hermitian=True)


def target_hamiltonian(geom: LatticeGeometry) -> DenseOperator:
    """Isotropic Heisenberg model with the device couplings, ``H_XXX``."""
    return idle_hamiltonian(geom, HEISENBERG)


@lru_cache(maxsize=64)
def total_spin(n: int, axis: str) -> np.ndarray:
    """``sum_i S^axis_i`` with ``S = sigma / 2``."""
    check_capacity(n)
    m = pauli_sum(n, [(0.5, [PauliFactor(i, axis)]) for i in range(n)])
    m.setflags(write=False)
    return m


def drive_matrix(n: int, rotation) -> np.ndarray:
    """``sum_a rotation[a] * S^a_total`` as a bare array."""
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=np.complex128)
    for axis, r in zip(AXES, rotation):
        if r:
            out = out + r * total_spin(n, axis)
    return out


def drive_hamiltonian(n: int, b: FieldVector) -> DenseOperator:
    """``B . sum_i S_i``."""
    check_capacity(n)
    return DenseOperator(drive_matrix(n, b.array), hermitian=True)


def map_validity(source: InteractionSpec, target: InteractionSpec, tol: float = 1e-12) -> bool:
    """Whether pulse engineering can map ``source`` couplings onto ``target``.

    The coefficient sum must be preserved and every target coefficient must
    lie within the range spanned by the source coefficients.
    """
    if abs(sum(source.coeffs) - sum(target.coeffs)) > tol:
        return False
    lo, hi = min(source.coeffs), max(source.coeffs)
    return all(lo - tol <= c <= hi + tol for c in target.coeffs)
