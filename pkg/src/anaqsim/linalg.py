"""Dense operator algebra on 2^N dimensional Hilbert spaces."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import CapacityError, InvalidArgumentError, NumericalFailureError

log = logging.getLogger(__name__)

MAX_QUBITS = 12
SVD_MAX_DIM = 256
HERMITIAN_RTOL = 1e-12
UNITARY_ATOL = 1e-10


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """A dense ``dim x dim`` complex matrix with Hermitian/unitary hints.

    The hints are promises made by the constructor, not checked on every
    construction; :meth:`check` validates them.
    """

    matrix: np.ndarray
    hermitian: bool = False
    unitary: bool = False

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidArgumentError(f"operator must be square, got shape {m.shape}")
        dim = m.shape[0]
        if dim & (dim - 1):
            raise InvalidArgumentError(f"dimension {dim} is not a power of two")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def check(self) -> bool:
        a = self.matrix
        if self.hermitian:
            scale = max(np.linalg.norm(a, 2), 1.0)
            if np.linalg.norm(a - a.conj().T, 2) > HERMITIAN_RTOL * scale:
                return False
        if self.unitary:
            if np.linalg.norm(a.conj().T @ a - np.eye(self.dim), 2) > UNITARY_ATOL:
                return False
        return True

    def dag(self) -> "DenseOperator":
        return adjoint(self)

    def __matmul__(self, other):
        return compose([self, other])

    def __sub__(self, other):
        return subtract(self, other)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)


@dataclass(frozen=True)
class PauliFactor:
    site: int
    axis: str  # "X" | "Y" | "Z"

    def __post_init__(self):
        if self.axis not in ("X", "Y", "Z"):
            raise InvalidArgumentError(f"unknown Pauli axis {self.axis!r}")
        if self.site < 0:
            raise InvalidArgumentError("site index must be non-negative")


def as_array(a) -> np.ndarray:
    if isinstance(a, DenseOperator):
        return a.matrix
    return np.asarray(a, dtype=np.complex128)


def check_capacity(n: int) -> None:
    if n > MAX_QUBITS:
        raise CapacityError(f"{n} qubits requested; dense backend supports at most {MAX_QUBITS}")


def pauli_masks(n: int, factors: Iterable[PauliFactor]) -> tuple[int, int, complex]:
    """Encode a Pauli string as (xmask, zmask, phase) for :mod:`anaqsim.kernels`."""
    xm = zm = 0
    n_y = 0
    seen = set()
    for f in factors:
        if f.site >= n:
            raise InvalidArgumentError(f"site {f.site} out of range for {n} qubits")
        if f.site in seen:
            raise InvalidArgumentError(f"duplicate site {f.site} in Pauli string")
        seen.add(f.site)
        bit = 1 << (n - 1 - f.site)
        if f.axis in ("X", "Y"):
            xm |= bit
        if f.axis in ("Z", "Y"):
            zm |= bit
        n_y += f.axis == "Y"
    return xm, zm, 1j**n_y


def pauli_sum(n: int, terms: Sequence[tuple[complex, Sequence[PauliFactor]]]) -> np.ndarray:
    """Dense matrix of ``sum_k c_k P_k``; returns a bare array."""
    check_capacity(n)
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=np.complex128)
    if not terms:
        return out
    xs, zs, cs = [], [], []
    for c, factors in terms:
        xm, zm, phase = pauli_masks(n, factors)
        xs.append(xm)
        zs.append(zm)
        cs.append(c * phase)
    kernels.pauli_sum_into(out, np.array(xs), np.array(zs), np.array(cs, dtype=np.complex128))
    return out


def pauli_string(n: int, factors: Sequence[PauliFactor]) -> DenseOperator:
    """Tensor product of single-site Paulis, identity on the remaining sites."""
    return DenseOperator(pauli_sum(n, [(1.0, list(factors))]), hermitian=True, unitary=True)


def is_hermitian(a: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    # entrywise test; cheaper than a spectral norm and equivalent up to a dim factor
    scale = np.max(np.abs(a)) if a.size else 0.0
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= rtol * scale)


def _eigh_exp(h: np.ndarray, scale) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * scale * w)) @ v.conj().T


def herm_exp(h, scale: float) -> DenseOperator:
    """``exp(-i * scale * h)`` for Hermitian ``h`` via eigendecomposition."""
    if isinstance(h, DenseOperator) and not h.hermitian:
        raise InvalidArgumentError("herm_exp requires an operator flagged Hermitian")
    a = as_array(h)
    if not is_hermitian(a):
        raise InvalidArgumentError("herm_exp called with a non-Hermitian matrix")
    return DenseOperator(_eigh_exp(a, scale), unitary=True)


def _power_norm(a: np.ndarray, tol: float = 1e-12, max_iter: int = 10_000) -> float:
    rng = np.random.default_rng(0x5EED)
    v = rng.standard_normal(a.shape[1]) + 1j * rng.standard_normal(a.shape[1])
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = a.conj().T @ (a @ v)
        lam_new = np.real(np.vdot(v, w))
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        if abs(lam_new - lam) <= tol * abs(lam_new):
            return float(np.sqrt(lam_new))
        lam = lam_new
    raise NumericalFailureError("power iteration did not converge")


def spectral_norm(a) -> float:
    """Largest singular value."""
    m = as_array(a)
    if not np.all(np.isfinite(m)):
        raise InvalidArgumentError("spectral_norm of a matrix with non-finite entries")
    if m.shape[0] <= SVD_MAX_DIM:
        return float(np.linalg.svd(m, compute_uv=False)[0]) if m.size else 0.0
    try:
        return _power_norm(m)
    except NumericalFailureError:
        log.warning("power iteration stalled on dim %d; falling back to full SVD", m.shape[0])
        return float(np.linalg.svd(m, compute_uv=False)[0])


def _check_dims(ops) -> int:
    dims = {as_array(o).shape for o in ops}
    if len(dims) != 1:
        raise InvalidArgumentError(f"dimension mismatch: {sorted(dims)}")
    return next(iter(dims))[0]


def compose(ops: Sequence) -> DenseOperator:
    """Matrix product ``ops[0] @ ops[1] @ ...``; the last entry acts first."""
    if not ops:
        raise InvalidArgumentError("compose needs at least one operator")
    _check_dims(ops)
    out = as_array(ops[0])
    for o in ops[1:]:
        out = out @ as_array(o)
    unitary = all(isinstance(o, DenseOperator) and o.unitary for o in ops)
    herm = len(ops) == 1 and isinstance(ops[0], DenseOperator) and ops[0].hermitian
    return DenseOperator(out, hermitian=herm, unitary=unitary)


def adjoint(a) -> DenseOperator:
    flags = (a.hermitian, a.unitary) if isinstance(a, DenseOperator) else (False, False)
    return DenseOperator(as_array(a).conj().T, hermitian=flags[0], unitary=flags[1])


def subtract(a, b) -> DenseOperator:
    _check_dims([a, b])
    herm = all(isinstance(o, DenseOperator) and o.hermitian for o in (a, b))
    return DenseOperator(as_array(a) - as_array(b), hermitian=herm)


def identity(n: int) -> DenseOperator:
    check_capacity(n)
    return DenseOperator(np.eye(1 << n, dtype=np.complex128), hermitian=True, unitary=True)
