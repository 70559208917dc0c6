import numpy as np
import pytest

from anaqsim.lattice import build_lattice

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def sq():
    """2x2 array with nearest-neighbour coupling 1."""
    return build_lattice(2, 2, 1.0, 1.0)


@pytest.fixture(scope="session")
def chain3():
    return build_lattice(3, 1, 1.0, 1.0)


@pytest.fixture(scope="session")
def pair():
    return build_lattice(2, 1, 1.0, 1.0)


@pytest.fixture(scope="session")
def single():
    return build_lattice(1, 1, 1.0, 1.0)


# dense reference operators built from Kronecker products
PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


def kron_string(n, ops: dict):
    out = np.eye(1, dtype=complex)
    for site in range(n):
        out = np.kron(out, PAULI[ops.get(site, "I")])
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
