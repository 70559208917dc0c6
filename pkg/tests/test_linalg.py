import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from anaqsim import kernels
from anaqsim.errors import CapacityError, InvalidArgumentError
from anaqsim.linalg import (
    MAX_QUBITS,
    DenseOperator,
    PauliFactor,
    _power_norm,
    adjoint,
    check_capacity,
    compose,
    herm_exp,
    identity,
    pauli_string,
    pauli_sum,
    spectral_norm,
    subtract,
)

from .conftest import kron_string

pauli_ops = st.dictionaries(st.integers(0, 3), st.sampled_from("XYZ"), max_size=4)


@settings(max_examples=60, deadline=None)
@given(pauli_ops)
def test_pauli_string_matches_kron(ops):
    got = pauli_string(4, [PauliFactor(s, a) for s, a in ops.items()]).matrix
    assert np.allclose(got, kron_string(4, ops))


def test_pauli_sum_flavours_agree():
    rng = np.random.default_rng(1)
    n = 5
    xs = rng.integers(0, 1 << n, 20)
    zs = rng.integers(0, 1 << n, 20)
    cs = rng.standard_normal(20) + 1j * rng.standard_normal(20)
    a = np.zeros((1 << n, 1 << n), complex)
    b = np.zeros((1 << n, 1 << n), complex)
    kernels.pauli_sum_into_numpy(a, xs, zs, cs)
    kernels.pauli_sum_into_numba(b, xs, zs, cs)
    assert np.allclose(a, b, atol=1e-14)


def test_pauli_sum_linear():
    terms = [(0.5, [PauliFactor(0, "X"), PauliFactor(2, "Y")]), (-2.0, [PauliFactor(1, "Z")])]
    ref = 0.5 * kron_string(3, {0: "X", 2: "Y"}) - 2.0 * kron_string(3, {1: "Z"})
    assert np.allclose(pauli_sum(3, terms), ref)


def test_duplicate_site_rejected():
    with pytest.raises(InvalidArgumentError):
        pauli_string(2, [PauliFactor(0, "X"), PauliFactor(0, "Z")])
    with pytest.raises(InvalidArgumentError):
        PauliFactor(0, "W")


def _random_hermitian(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2


@pytest.mark.parametrize("dim", [2, 8, 32])
def test_herm_exp_matches_expm(dim):
    rng = np.random.default_rng(dim)
    h = _random_hermitian(rng, dim)
    u = herm_exp(DenseOperator(h, hermitian=True), 0.7)
    assert np.allclose(u.matrix, scipy.linalg.expm(-0.7j * h), atol=1e-12)
    assert u.unitary and u.check()


def test_herm_exp_rejects_non_hermitian():
    with pytest.raises(InvalidArgumentError):
        herm_exp(np.array([[0, 1], [0, 0]], dtype=complex), 1.0)
    with pytest.raises(InvalidArgumentError):
        herm_exp(DenseOperator(np.eye(2)), 1.0)


@pytest.mark.parametrize("dim", [4, 64, 512])
def test_spectral_norm(dim):
    rng = np.random.default_rng(dim)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    ref = np.linalg.svd(a, compute_uv=False)[0]
    assert spectral_norm(a) == pytest.approx(ref, rel=1e-6)
    assert _power_norm(a) == pytest.approx(ref, rel=1e-6)


def test_spectral_norm_edge_cases():
    assert spectral_norm(np.zeros((4, 4))) == 0.0
    with pytest.raises(InvalidArgumentError):
        spectral_norm(np.full((2, 2), np.nan))


def test_operator_algebra():
    x = pauli_string(1, [PauliFactor(0, "X")])
    z = pauli_string(1, [PauliFactor(0, "Z")])
    assert np.allclose((x @ z).matrix, -1j * pauli_string(1, [PauliFactor(0, "Y")]).matrix)
    assert np.allclose(compose([x, x]).matrix, identity(1).matrix)
    assert np.allclose(adjoint(DenseOperator(np.array([[0, 1j], [0, 0]]))).matrix, [[0, 0], [-1j, 0]])
    assert np.allclose(subtract(x, x).matrix, 0)
    with pytest.raises(InvalidArgumentError):
        subtract(identity(1), identity(2))
    with pytest.raises(InvalidArgumentError):
        DenseOperator(np.eye(3))
    with pytest.raises(InvalidArgumentError):
        DenseOperator(np.zeros((2, 4)))


def test_capacity():
    check_capacity(MAX_QUBITS)
    with pytest.raises(CapacityError):
        check_capacity(MAX_QUBITS + 1)
    with pytest.raises(CapacityError):
        identity(MAX_QUBITS + 1)
