import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anaqsim import kernels
from anaqsim.errors import FitDegenerateError, InvalidArgumentError, SingularCouplingError
from anaqsim.lattice import (
    LatticeGeometry,
    build_lattice,
    coupling_matrix,
    fit_j_scaling,
    j3_bruteforce,
    j_sum,
    j_sums,
    j_sweep,
)


def test_square_couplings(sq):
    j = coupling_matrix(sq).j
    assert j.shape == (4, 4)
    assert np.allclose(np.diag(j), 0)
    assert np.allclose(j, j.T)
    # sites 0-1 neighbours, 0-3 diagonal at distance sqrt(2)
    assert j[0, 1] == pytest.approx(1.0)
    assert j[0, 3] == pytest.approx(1 / 8)


def test_square_sums(sq):
    # four bonds of 1 and two diagonals of 1/8, each counted twice
    j1, j2, j3 = j_sums(sq)
    assert j1 == pytest.approx(2 * (4 + 2 / 8))
    assert j2 == pytest.approx(2 * (4 + 2 / 64))
    assert j3 == pytest.approx(10.0)
    assert j3 == pytest.approx(j3_bruteforce(sq), rel=1e-14)


def test_chain_j3(chain3):
    # paths i-k-j with distinct ends: 0-1-2 and 2-1-0 (1*1), 1-0-2 etc (1/64)
    brute = 0.0
    j = coupling_matrix(chain3).j
    for a, b, c in itertools.permutations(range(3), 3):
        brute += j[a, b] * j[b, c]
    assert j_sum(3, chain3) == pytest.approx(brute)
    assert j_sum(3, chain3) == pytest.approx(2.0625)


def test_pair_order_two_is_2g2():
    g = build_lattice(2, 1, 1.0, 3.0)
    assert j_sum(2, g) == pytest.approx(2 * 9.0)
    assert j_sum(3, g) == 0.0


def test_units_scale_with_c6_and_spacing():
    a = build_lattice(2, 3, 1.0, 1.0)
    b = build_lattice(2, 3, 2.0, 64.0)  # (2a)^6 = 64 a^6
    assert np.allclose(coupling_matrix(a).j, coupling_matrix(b).j)


@pytest.mark.parametrize("nx,ny", [(a, b) for a in range(1, 7) for b in range(1, 7) if a * b <= 12])
def test_closed_j3_equals_bruteforce(nx, ny):
    g = build_lattice(nx, ny, 1.0, 1.0)
    assert j_sum(3, g) == pytest.approx(j3_bruteforce(g), rel=1e-12, abs=1e-15)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=2, max_size=9, unique=True))
def test_random_positions_j3(points):
    pts = np.array(points)
    d = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
    if np.min(d + np.eye(len(pts)) * 10) < 0.3:
        return
    g = LatticeGeometry.from_positions(points, c6=1.0)
    assert j_sum(3, g) == pytest.approx(j3_bruteforce(g), rel=1e-10, abs=1e-12)


def test_kernel_flavours_agree():
    rng = np.random.default_rng(3)
    pos = rng.uniform(0, 4, size=(9, 2))
    ja, oka = kernels.pair_couplings_numpy(pos, 2.5)
    jb, okb = kernels.pair_couplings_numba(pos, 2.5)
    assert oka and okb
    assert np.allclose(ja, jb, rtol=1e-14)
    assert kernels.triple_sum_bruteforce_numpy(ja) == pytest.approx(kernels.triple_sum_bruteforce_numba(ja), rel=1e-12)


def test_invalid_geometry():
    with pytest.raises(InvalidArgumentError):
        build_lattice(0, 2)
    with pytest.raises(InvalidArgumentError):
        build_lattice(2, 2, spacing=-1)
    with pytest.raises(InvalidArgumentError):
        build_lattice(2, 2, c6=0)
    with pytest.raises(SingularCouplingError):
        coupling_matrix(LatticeGeometry.from_positions([(0, 0), (0, 0)]))
    with pytest.raises(InvalidArgumentError):
        j_sum(4, build_lattice(2, 2))


def test_fit_degenerate_and_exact():
    with pytest.raises(FitDegenerateError):
        fit_j_scaling([(4, 1.0), (4, 2.0), (4, 3.0)])
    with pytest.raises(InvalidArgumentError):
        fit_j_scaling([(4, 1.0), (6, 2.0)])
    f = fit_j_scaling([(n, 3.0 * n - 2.0) for n in (2, 5, 9, 11)])
    assert f.slope == pytest.approx(3.0)
    assert f.intercept == pytest.approx(-2.0)
    assert f.residual == pytest.approx(0.0, abs=1e-12)


def test_sweep_rows():
    rows = j_sweep(3, [1, 2], orders=(1, 3))
    assert [(r[0], r[2], r[3]) for r in rows] == [(1, 1, 3), (3, 1, 3), (1, 2, 6), (3, 2, 6)]
