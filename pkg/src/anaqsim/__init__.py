"""Pulse-engineered Heisenberg simulation on Ising-type analog devices.

Exact dense propagators of pulse sequences, their error rates against the
target Heisenberg evolution, closed-form error operators and bounds, and
the scaling analysis built on them.
"""
__version__ = "0.1.0"

from .errors import (
    AnaqsimError,
    CapacityError,
    FitDegenerateError,
    InvalidArgumentError,
    NotAvailableError,
    NumericalFailureError,
    SingularCouplingError,
    UnsupportedError,
)
from .hamiltonians import (
    HEISENBERG,
    ISING,
    DeviceProfile,
    FieldVector,
    InteractionSpec,
    drive_hamiltonian,
    idle_hamiltonian,
    map_validity,
    target_hamiltonian,
)
from .lattice import (
    CouplingMatrix,
    JSumFit,
    LatticeGeometry,
    build_lattice,
    coupling_matrix,
    fit_j_scaling,
    j3_bruteforce,
    j_sum,
    j_sums,
)
from .linalg import DenseOperator, PauliFactor, adjoint, compose, herm_exp, identity, pauli_string, spectral_norm, subtract
from .schedules import (
    MethodId,
    PulseSchedule,
    PulseSegment,
    StepPlan,
    build_step_plan,
    compile_schedule,
    frame_correction,
    propagate,
    rotation_gate,
    schedule_for,
)
from .scaling import ErrorMonomialSet, ScalingResult, legendre_scaling, loglog_slope

__all__ = [
    "__version__",
    "AnaqsimError",
    "CapacityError",
    "CouplingMatrix",
    "DenseOperator",
    "DeviceProfile",
    "ErrorMonomialSet",
    "FieldVector",
    "FitDegenerateError",
    "HEISENBERG",
    "ISING",
    "InteractionSpec",
    "InvalidArgumentError",
    "JSumFit",
    "LatticeGeometry",
    "MethodId",
    "NotAvailableError",
    "NumericalFailureError",
    "PauliFactor",
    "PulseSchedule",
    "PulseSegment",
    "ScalingResult",
    "SingularCouplingError",
    "StepPlan",
    "UnsupportedError",
    "adjoint",
    "build_lattice",
    "build_step_plan",
    "compile_schedule",
    "compose",
    "coupling_matrix",
    "drive_hamiltonian",
    "fit_j_scaling",
    "frame_correction",
    "herm_exp",
    "identity",
    "idle_hamiltonian",
    "j3_bruteforce",
    "j_sum",
    "j_sums",
    "legendre_scaling",
    "loglog_slope",
    "map_validity",
    "pauli_string",
    "propagate",
    "rotation_gate",
    "schedule_for",
    "spectral_norm",
    "subtract",
    "target_hamiltonian",
]
