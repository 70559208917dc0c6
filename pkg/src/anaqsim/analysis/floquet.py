"""Second Magnus term of the constant-field (C1) method.

In the frame of the drive, ``Z_i`` becomes ``e_x X_i + e_y Y_i + e_z Z_i``
with a unit vector ``e(s)`` that sweeps a cone once per Floquet period
(``s = t / tau`` in [0, 1]). The interaction-picture Hamiltonian is then
``sum_ab e_a(s) e_b(s) K_ab`` with ``K_ab = sum_{i<j} J_ij sigma^a_i sigma^b_j``
and ``Omega_2`` reduces to 81 scalar double integrals times commutators.
"""
from __future__ import annotations

import math

import numpy as np

from ..errors import NumericalFailureError
from ..hamiltonians import AXES, DeviceProfile
from ..lattice import LatticeGeometry, coupling_matrix
from ..linalg import DenseOperator, PauliFactor, check_capacity, pauli_sum
from ..schedules import C1_PERIOD

MAX_NODES = 1024


def e_vector(s) -> np.ndarray:
    """Rotated Z axis ``U_d^dagger Z U_d = e . sigma`` at fraction ``s`` of the
    Floquet period, shape ``(..., 3)``, for ``U_d = exp(-i t Omega n.S)``."""
    th = 2 * np.pi * np.asarray(s, dtype=float)
    ex = 2 * math.sqrt(2) * np.sin(th / 2) ** 2
    ey = math.sqrt(6) * np.sin(th)
    ez = 1 + 2 * np.cos(th)
    return np.stack([ex, ey, ez], axis=-1) / 3


def _k_ops(geom: LatticeGeometry) -> list[np.ndarray]:
    j = coupling_matrix(geom).j
    n = geom.n_sites
    ops = []
    for a in AXES:
        for b in AXES:
            terms = [
                (j[p, q], [PauliFactor(p, a), PauliFactor(q, b)])
                for p in range(n)
                for q in range(p + 1, n)
                if j[p, q] != 0
            ]
            ops.append(pauli_sum(n, terms))
    return ops


def _ordered_integrals(nodes: int) -> np.ndarray:
    """``I[ab, cd] = int_0^1 ds1 int_0^s1 ds2 f_ab(s1) f_cd(s2)`` with ``f_ab = e_a e_b``."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    x = (x + 1) / 2
    w = w / 2
    s1 = x[:, None]
    s2 = s1 * x[None, :]  # s2 = s1 * u maps the triangle to the unit square
    wt = w[:, None] * w[None, :] * s1
    e1 = e_vector(s1[:, 0])  # (n, 3)
    e2 = e_vector(s2)  # (n, n, 3)
    f1 = np.einsum("pa,pb->pab", e1, e1).reshape(-1, 9)
    f2 = np.einsum("pqa,pqb->pqab", e2, e2).reshape(nodes, nodes, 9)
    return np.einsum("pq,pi,pqj->ij", wt, f1, f2)


def magnus_omega2_c1(device: DeviceProfile, geom: LatticeGeometry, rtol: float = 1e-8) -> DenseOperator:
    """``Omega_2(tau) = -(1/2) int_0^tau dt1 int_0^t1 dt2 [H(t1), H(t2)]`` for one period.

    Returned as the Hermitian generator, i.e. ``U ~ exp(-i (Omega_1 + Omega_2))``.
    Gauss-Legendre nodes are doubled until successive results agree to
    ``rtol`` relative.
    """
    n = geom.n_sites
    check_capacity(n)
    dim = 1 << n
    if n < 2:
        return DenseOperator(np.zeros((dim, dim), dtype=np.complex128), hermitian=True)
    tau = C1_PERIOD * device.epsilon
    ks = _k_ops(geom)
    comm = {}
    for p in range(9):
        for q in range(p + 1, 9):
            comm[p, q] = ks[p] @ ks[q] - ks[q] @ ks[p]

    def assemble(integrals):
        # antisymmetric part only: [K_p, K_q] (I_pq - I_qp)
        out = np.zeros((dim, dim), dtype=np.complex128)
        for (p, q), c in comm.items():
            out += (integrals[p, q] - integrals[q, p]) * c
        return (-0.5j * tau**2) * out

    nodes = 16
    prev = assemble(_ordered_integrals(nodes))
    while nodes < MAX_NODES:
        nodes *= 2
        cur = assemble(_ordered_integrals(nodes))
        scale = np.linalg.norm(cur, 2)
        if np.linalg.norm(cur - prev, 2) <= rtol * scale or scale == 0.0:
            return DenseOperator(cur, hermitian=True)
        prev = cur
    raise NumericalFailureError("Omega_2 quadrature did not converge")
