import math

import numpy as np
import pytest

from anaqsim.errors import InvalidArgumentError
from anaqsim.hamiltonians import (
    HEISENBERG,
    ISING,
    DeviceProfile,
    FieldVector,
    InteractionSpec,
    drive_hamiltonian,
    idle_hamiltonian,
    map_validity,
    target_hamiltonian,
    total_spin,
)
from anaqsim.lattice import coupling_matrix

from .conftest import kron_string


def _reference(geom, spec):
    n = geom.n_sites
    j = coupling_matrix(geom).j
    h = np.zeros((1 << n, 1 << n), complex)
    for a in range(n):
        for b in range(a + 1, n):
            for axis, c in zip("XYZ", spec.coeffs):
                h += j[a, b] * c * kron_string(n, {a: axis, b: axis})
    return h


@pytest.mark.parametrize("spec", [ISING, HEISENBERG, InteractionSpec(0.2, -0.5, 1.3)])
def test_idle_matches_kron(sq, spec):
    assert np.allclose(idle_hamiltonian(sq, spec).matrix, _reference(sq, spec))


def test_target_is_heisenberg(chain3):
    h = target_hamiltonian(chain3).matrix
    assert np.allclose(h, _reference(chain3, HEISENBERG))
    # SU(2) symmetric: commutes with total spin
    for axis in "XYZ":
        s = total_spin(3, axis)
        assert np.allclose(h @ s, s @ h)


def test_total_spin_is_half_pauli():
    assert np.allclose(total_spin(2, "Z"), 0.5 * (kron_string(2, {0: "Z"}) + kron_string(2, {1: "Z"})))


def test_drive_hamiltonian():
    b = FieldVector(1.0, -2.0, 0.5)
    h = drive_hamiltonian(2, b).matrix
    ref = sum(c * total_spin(2, a) for c, a in zip(b.array, "XYZ"))
    assert np.allclose(h, ref)
    assert b.magnitude == pytest.approx(math.sqrt(5.25))


def test_device_profile():
    d = DeviceProfile(1e-3)
    assert d.omega_max == pytest.approx(math.pi / 2e-3)
    assert DeviceProfile.from_omega(d.omega_max).epsilon == pytest.approx(1e-3)
    assert DeviceProfile(0).ideal and DeviceProfile(0).omega_max == math.inf
    with pytest.raises(InvalidArgumentError):
        DeviceProfile(-1e-3)
    with pytest.raises(InvalidArgumentError):
        DeviceProfile.from_omega(0)


def test_map_validity():
    assert map_validity(ISING, HEISENBERG)
    assert not map_validity(ISING, InteractionSpec(1, 1, 1))  # sum not preserved
    assert not map_validity(InteractionSpec(0.5, 0.5, 0), InteractionSpec(0, 0, 1))  # outside the range
    assert map_validity(HEISENBERG, HEISENBERG)
