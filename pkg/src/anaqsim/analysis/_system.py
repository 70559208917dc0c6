"""Read-only per-geometry operator cache shared by the analysis routines."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..hamiltonians import ISING, idle_hamiltonian, target_hamiltonian
from ..lattice import LatticeGeometry, j_sums
from ..linalg import check_capacity
from ..schedules import MethodId, evolve, frame_correction, gate_sequence
from ..hamiltonians import DeviceProfile


@dataclass(frozen=True, eq=False)
class System:
    geom: LatticeGeometry
    n: int
    h_idle: np.ndarray
    h_tar: np.ndarray
    tar_w: np.ndarray
    tar_v: np.ndarray
    j1: float
    j2: float
    j3: float

    def target_step(self, tau) -> np.ndarray:
        """``exp(-i tau H_XXX)``."""
        return (self.tar_v * np.exp(-1j * tau * self.tar_w)) @ self.tar_v.conj().T

    @property
    def idle_norm(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvalsh(self.h_idle)))) if self.n > 1 else 0.0

    def frame(self, method: MethodId) -> np.ndarray:
        return _frame(method, self.n)

    def lab(self, method, t, eps, ideal_pulses=False):
        """``(U(t, eps), tau)`` with ``tau`` the signed total duration."""
        segs = gate_sequence(MethodId.parse(method), t, eps)
        u = evolve(segs, self.h_idle, self.n, ideal_pulses)
        return u, float(sum(s.duration for s in segs))

    def corrected(self, method, t, eps, ideal_pulses=False):
        """``(F^dagger U(t, eps), tau)``."""
        method = MethodId.parse(method)
        u, tau = self.lab(method, t, eps, ideal_pulses)
        return self.frame(method).conj().T @ u, tau


@lru_cache(maxsize=32)
def _frame(method: MethodId, n: int) -> np.ndarray:
    return frame_correction(method, DeviceProfile(1.0), n).matrix


@lru_cache(maxsize=32)
def system(geom: LatticeGeometry) -> System:
    check_capacity(geom.n_sites)
    h_idle = idle_hamiltonian(geom, ISING).matrix
    h_tar = target_hamiltonian(geom).matrix
    w, v = np.linalg.eigh(h_tar)
    j1, j2, j3 = j_sums(geom) if geom.n_sites > 1 else (0.0, 0.0, 0.0)
    return System(geom, geom.n_sites, h_idle, h_tar, w, v, j1, j2, j3)
