"""Hot inner loops, each in a numba and a numpy flavour.

The public names (``pauli_sum_into``, ``pair_couplings``,
``triple_sum_bruteforce``) dispatch on :data:`anaqsim._accel.HAS_NUMBA`.
Both flavours are importable directly so the benchmark and the tests can
compare them.

Basis convention: site 0 is the most significant bit of the basis index,
matching ``np.kron(op_0, op_1, ...)``.
"""
import numpy as np

from ._accel import HAS_NUMBA, njit

__all__ = [
    "pauli_sum_into",
    "pair_couplings",
    "triple_sum_bruteforce",
    "pauli_sum_into_numpy",
    "pair_couplings_numpy",
    "triple_sum_bruteforce_numpy",
    "BACKEND",
]


# --- Pauli sums --------------------------------------------------------------
#
# A Pauli string is encoded by (xmask, zmask): X on bit b sets xmask, Z sets
# zmask, Y sets both. With P = coeff * prod(...), the action on a basis state
# is  P|b> = coeff * (-1)^popcount(b & zmask) |b ^ xmask>,  where coeff must
# already include the i^{#Y} factor.


def pauli_sum_into_numpy(out, xmasks, zmasks, coeffs):
    dim = out.shape[0]
    cols = np.arange(dim, dtype=np.int64)
    for xm, zm, c in zip(xmasks, zmasks, coeffs):
        if c == 0:
            continue
        sign = 1 - 2 * (np.bitwise_count(cols & zm) & 1).astype(np.int64)
        out[cols ^ xm, cols] += c * sign
    return out


@njit
def _pauli_sum_into_numba(out, xmasks, zmasks, coeffs):
    dim = out.shape[0]
    for t in range(xmasks.shape[0]):
        c = coeffs[t]
        if c == 0:
            continue
        xm = xmasks[t]
        zm = zmasks[t]
        for b in range(dim):
            v = b & zm
            parity = 0
            while v:
                v &= v - 1
                parity ^= 1
            if parity:
                out[b ^ xm, b] -= c
            else:
                out[b ^ xm, b] += c
    return out


def _pauli_args(xmasks, zmasks, coeffs):
    return (
        np.ascontiguousarray(xmasks, dtype=np.int64),
        np.ascontiguousarray(zmasks, dtype=np.int64),
        np.ascontiguousarray(coeffs, dtype=np.complex128),
    )


def pauli_sum_into_numba(out, xmasks, zmasks, coeffs):
    return _pauli_sum_into_numba(out, *_pauli_args(xmasks, zmasks, coeffs))


# --- couplings ---------------------------------------------------------------


def pair_couplings_numpy(positions, c6):
    """Return (J, ok). ``ok`` is False if two sites coincide."""
    pos = np.asarray(positions, dtype=np.float64)
    diff = pos[:, None, :] - pos[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    n = pos.shape[0]
    off = ~np.eye(n, dtype=bool)
    if np.any(d2[off] == 0.0):
        return np.zeros((n, n)), False
    j = np.zeros((n, n))
    j[off] = c6 / d2[off] ** 3
    return j, True


@njit
def _pair_couplings_numba(pos, c6):
    n = pos.shape[0]
    j = np.zeros((n, n))
    for a in range(n):
        for b in range(a + 1, n):
            d2 = 0.0
            for k in range(pos.shape[1]):
                d = pos[a, k] - pos[b, k]
                d2 += d * d
            if d2 == 0.0:
                return np.zeros((n, n)), False
            v = c6 / (d2 * d2 * d2)
            j[a, b] = v
            j[b, a] = v
    return j, True


def pair_couplings_numba(positions, c6):
    return _pair_couplings_numba(np.ascontiguousarray(positions, dtype=np.float64), float(c6))


# --- three-index sums --------------------------------------------------------


def triple_sum_bruteforce_numpy(j):
    """sum over pairwise-distinct ordered (i, k, m) of J_ik J_km."""
    j = np.asarray(j, dtype=np.float64)
    n = j.shape[0]
    total = 0.0
    for k in range(n):
        outer = np.outer(j[:, k], j[k, :])
        outer[k, :] = 0.0
        outer[:, k] = 0.0
        np.fill_diagonal(outer, 0.0)
        total += outer.sum()
    return float(total)


@njit
def _triple_sum_bruteforce_numba(j):
    n = j.shape[0]
    total = 0.0
    for i in range(n):
        for k in range(n):
            if k == i:
                continue
            for m in range(n):
                if m == i or m == k:
                    continue
                total += j[i, k] * j[k, m]
    return total


def triple_sum_bruteforce_numba(j):
    return float(_triple_sum_bruteforce_numba(np.ascontiguousarray(j, dtype=np.float64)))


if HAS_NUMBA:
    BACKEND = "numba"
    pauli_sum_into = pauli_sum_into_numba
    pair_couplings = pair_couplings_numba
    triple_sum_bruteforce = triple_sum_bruteforce_numba
else:
    BACKEND = "numpy"
    pauli_sum_into = pauli_sum_into_numpy
    pair_couplings = pair_couplings_numpy
    triple_sum_bruteforce = triple_sum_bruteforce_numpy
