"""Closed-form error operators, their norm bounds, and pulse Magnus terms.

Operators are assembled as Pauli sums. Products are written as literal
operator products; factors that land on the same site are multiplied out
with ``sigma_a sigma_b = delta_ab + i eps_abc sigma_c`` before encoding.

Three-index sums run over ordered, pairwise-distinct ``(i, j, k)`` and
``J^2`` sums over ordered ``i != j``.
"""
from __future__ import annotations

import itertools
import math
from typing import Iterable

import numpy as np

from ..errors import InvalidArgumentError, NotAvailableError
from ..hamiltonians import DeviceProfile, total_spin
from ..lattice import LatticeGeometry, coupling_matrix, j_sums
from ..linalg import DenseOperator, PauliFactor, _eigh_exp, check_capacity, pauli_sum, spectral_norm
from ..schedules import MethodId, rotation_gate
from .taylor import ErrorTermId, _as_id

SQRT2 = math.sqrt(2.0)
PI = math.pi

# sigma_a sigma_b = phase * sigma_c (None for identity)
_MUL = {
    ("X", "X"): (1, None), ("Y", "Y"): (1, None), ("Z", "Z"): (1, None),
    ("X", "Y"): (1j, "Z"), ("Y", "Z"): (1j, "X"), ("Z", "X"): (1j, "Y"),
    ("Y", "X"): (-1j, "Z"), ("Z", "Y"): (-1j, "X"), ("X", "Z"): (-1j, "Y"),
}  # fmt: skip


def reduce_product(factors: Iterable[tuple[int, str]]) -> tuple[complex, list[PauliFactor]]:
    """Multiply a left-to-right product of single-site Paulis."""
    phase = 1 + 0j
    per_site: dict[int, str | None] = {}
    for site, axis in factors:
        cur = per_site.get(site)
        if cur is None:
            per_site[site] = axis
        else:
            p, res = _MUL[(cur, axis)]
            phase *= p
            per_site[site] = res
    return phase, [PauliFactor(s, a) for s, a in sorted(per_site.items()) if a is not None]


class _Builder:
    """Accumulates ``sum c * (product of site Paulis)`` terms."""

    def __init__(self, n: int):
        check_capacity(n)
        self.n = n
        self.terms: list = []

    def add(self, coeff, *factors):
        if coeff == 0:
            return
        phase, pf = reduce_product(factors)
        self.terms.append((coeff * phase, pf))

    def matrix(self) -> np.ndarray:
        return pauli_sum(self.n, self.terms)


def _pairs(j):
    n = j.shape[0]
    return [(a, b) for a in range(n) for b in range(n) if a != b and j[a, b] != 0]


def _triples(j):
    n = j.shape[0]
    return [
        (a, b, c)
        for a, b, c in itertools.permutations(range(n), 3)
        if j[a, b] != 0 and j[b, c] != 0
    ]


# --- step error operators ----------------------------------------------------

# Overall factors of the second-order operators, fixed against finite
# differences of the exact step.
T2_SCALE = -1.0 / 8.0
EPS2_SCALE = 0.25
TEPS_SCALE = 0.25

CLOSED_FORM_TERMS = {
    (MethodId.S_HALF, ErrorTermId(1, 0)),
    (MethodId.S_HALF, ErrorTermId(0, 1)),
    (MethodId.S_HALF, ErrorTermId(2, 0)),
    (MethodId.S1, ErrorTermId(1, 0)),
    (MethodId.S1, ErrorTermId(0, 1)),
    (MethodId.S1, ErrorTermId(2, 0)),
    (MethodId.S1, ErrorTermId(0, 2)),
    (MethodId.S1, ErrorTermId(1, 1)),
}


def _e_shalf_eps(b: _Builder, j):
    c = -2j / PI
    n = j.shape[0]
    for a in range(n):
        for k in range(a + 1, n):
            g = c * j[a, k]
            if g == 0:
                continue
            b.add(g, (a, "Y"), (k, "Z"))
            b.add(-g, (a, "X"), (k, "Z"))
            b.add(g, (a, "Z"), (k, "Y"))
            b.add(-g, (a, "Z"), (k, "X"))


def _e_t2(b: _Builder, j):
    for a, m, k in _triples(j):
        g = T2_SCALE * 8j * j[a, m] * j[m, k]
        b.add(g, (a, "X"), (m, "Y"), (k, "Z"))
        b.add(-g, (a, "Y"), (m, "X"), (k, "Z"))
        b.add(-g, (a, "Y"), (m, "Z"), (k, "X"))


def _single_site_j2(b: _Builder, j, coeff):
    for a, m in _pairs(j):
        g = coeff * j[a, m] ** 2
        b.add(g, (a, "X"))
        b.add(-g, (a, "Y"))


def _e_eps2(b: _Builder, j):
    for a, m, k in _triples(j):
        g = EPS2_SCALE * 2j * j[a, m] * j[m, k]
        b.add(8 * g, (a, "Y"), (m, "Z"), (k, "X"))
        b.add(-4 * g, (a, "Y"), (m, "X"), (k, "Z"))
        b.add(-4 * g, (a, "X"), (m, "Y"), (k, "Z"))
        h = g / PI
        b.add(7 * h, (a, "Y"), (m, "X"), (k, "Y"))
        b.add(-7 * h, (a, "X"), (m, "Y"), (k, "X"))
        b.add(h, (a, "Z"), (m, "Y"), (k, "Z"))
        b.add(-h, (a, "Z"), (m, "X"), (k, "Z"))
    _single_site_j2(b, j, EPS2_SCALE * 12j / PI)


def _e_teps(b: _Builder, j):
    for a, m, k in _triples(j):
        g = TEPS_SCALE * 8j * j[a, m] * j[m, k]
        b.add(2 * g, (a, "Y"), (m, "Z"), (k, "X"))
        b.add(-1.5 * g, (a, "X"), (m, "Y"), (k, "Z"))
        b.add(0.5 * g, (a, "Y"), (m, "X"), (k, "Z"))
        b.add(g / PI, (a, "Y"), (m, "X"), (k, "Y"))
        b.add(-g / PI, (a, "X"), (m, "Y"), (k, "X"))
    _single_site_j2(b, j, TEPS_SCALE * 8j / PI)


def analytic_error_operator(method, term, geom: LatticeGeometry) -> DenseOperator:
    """Explicit Pauli-sum error operator ``E_{method; t^k1 eps^k2}``."""
    method = MethodId.parse(method)
    term = _as_id(term)
    if (method, term) not in CLOSED_FORM_TERMS:
        raise NotAvailableError(f"no closed form for {method} term {term}")
    n = geom.n_sites
    b = _Builder(n)
    j = coupling_matrix(geom).j
    key = (term.k1, term.k2)
    if key == (0, 1) and method is MethodId.S_HALF:
        _e_shalf_eps(b, j)
    elif key == (2, 0):
        _e_t2(b, j)
    elif key == (0, 2):
        _e_eps2(b, j)
    elif key == (1, 1):
        _e_teps(b, j)
    # remaining first-order terms vanish identically
    return DenseOperator(b.matrix())


def error_norm_bound(method, term, geom: LatticeGeometry) -> float:
    """Upper bound on ``||E_{method; term}||`` from the interaction sums."""
    method = MethodId.parse(method)
    term = _as_id(term)
    if (method, term) not in CLOSED_FORM_TERMS:
        raise NotAvailableError(f"no bound for {method} term {term}")
    j1, j2, j3 = j_sums(geom) if geom.n_sites > 1 else (0.0, 0.0, 0.0)
    key = (term.k1, term.k2)
    if key == (0, 1) and method is MethodId.S_HALF:
        return 4 * SQRT2 / PI * j1
    if key == (2, 0):
        return 8 * math.sqrt(3 + 2 * math.sqrt(3)) * j3
    if key == (0, 2):
        return 28 * j3 + 12 * SQRT2 / PI * j2
    if key == (1, 1):
        return 25 * j3 + 8 * SQRT2 / PI * j2
    return 0.0


# --- pulse Magnus terms --------------------------------------------------------


def _check_axis_sign(axis, sign):
    if axis not in ("X", "Y") or sign not in (1, -1):
        raise InvalidArgumentError(f"pulse Magnus terms exist for axis X|Y and sign +-1, got ({axis}, {sign})")


def _first_order(b: _Builder, j, axis, sign):
    # chi (X pulses) rotates Z toward Y; nu (Y pulses) rotates Z toward X
    p, cross_sign = ("Y", sign) if axis == "X" else ("X", -sign)
    n = j.shape[0]
    for a in range(n):
        for k in range(a + 1, n):
            g = j[a, k]
            if g == 0:
                continue
            b.add(g / 2, (a, p), (k, p))
            b.add(g / 2, (a, "Z"), (k, "Z"))
            c = cross_sign * g / PI
            b.add(c, (a, p), (k, "Z"))
            b.add(c, (a, "Z"), (k, p))


def _second_order(b: _Builder, j, axis, sign):
    n = j.shape[0]
    if axis == "X":
        p, q, pre, s = "Y", "X", 1 / PI, sign
    else:
        p, q, pre, s = "X", "Y", -1 / PI, -sign
    for mid in range(n):
        for a in range(n):
            for m in range(n):
                if a == mid or m == mid:
                    continue
                g = pre * j[a, mid] * j[mid, m]
                if g == 0:
                    continue
                ga, gb = g / PI, s * g / 8
                b.add(ga, (a, p), (mid, q), (m, "Z"))
                b.add(ga, (mid, q), (m, "Z"), (a, p))
                b.add(gb, (a, p), (m, p), (mid, q))
                b.add(gb, (a, "Z"), (mid, q), (m, "Z"))
                b.add(gb, (m, p), (mid, q), (a, p))
                b.add(gb, (mid, q), (m, "Z"), (a, "Z"))


def pulse_magnus_term(axis: str, sign: int, order: int, geom: LatticeGeometry) -> DenseOperator:
    """Magnus term of a finite pi/2 pulse in the frame of the ideal rotation.

    ``order = 1`` gives chi_1 / nu_1, ``order = 2`` gives chi_2 / nu_2; X
    pulses give chi, Y pulses give nu.
    """
    _check_axis_sign(axis, sign)
    if order not in (1, 2):
        raise InvalidArgumentError("pulse Magnus order must be 1 or 2")
    if geom.n_sites > 8:
        raise InvalidArgumentError("pulse Magnus terms limited to 8 sites")
    b = _Builder(geom.n_sites)
    j = coupling_matrix(geom).j
    (_first_order if order == 1 else _second_order)(b, j, axis, sign)
    return DenseOperator(b.matrix(), hermitian=True)


def ideal_rotation(axis: str, angle: float, n: int) -> np.ndarray:
    """``exp(-i angle sum_i S^axis_i)``."""
    return _eigh_exp(total_spin(n, axis), angle)


def verify_pulse_magnus(axis: str, sign: int, device: DeviceProfile, geom: LatticeGeometry) -> float:
    """``|| R_ideal^-1 R(eps) - exp(-i (chi_1 eps + chi_2 eps^2)) ||``."""
    _check_axis_sign(axis, sign)
    n = geom.n_sites
    eps = device.epsilon
    gate = rotation_gate(axis, sign, device, geom).matrix
    ups = ideal_rotation(axis, -sign * PI / 2, n) @ gate
    gen = eps * pulse_magnus_term(axis, sign, 1, geom).matrix + eps**2 * pulse_magnus_term(axis, sign, 2, geom).matrix
    return spectral_norm(ups - _eigh_exp(gen, 1.0))
