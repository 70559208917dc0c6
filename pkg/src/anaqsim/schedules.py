"""Pulse-sequence compilation and exact propagation.

Every method is a list of piecewise-constant segments. A segment carries its
duration and its *rotation vector* (field times duration), so that pulses
keep their pi/2 angle when the duration is continued to zero or negative
values for derivative evaluation. Idle gaps are zero-rotation segments; the
Ising interaction acts during every segment, pulses included.

Segment lists are in time order: ``segments[0]`` acts first. The propagator
of the list is therefore ``U = U_last ... U_1 U_0``.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, UnsupportedError
from .hamiltonians import ISING, DeviceProfile, FieldVector, InteractionSpec, drive_matrix, idle_hamiltonian
from .lattice import LatticeGeometry
from .linalg import DenseOperator, _eigh_exp, check_capacity

HALF_PI = math.pi / 2


class MethodId(str, enum.Enum):
    S_HALF = "S_HALF"
    S1 = "S1"
    S1_TILDE = "S1_TILDE"
    S2 = "S2"
    C1 = "C1"

    @classmethod
    def parse(cls, value) -> "MethodId":
        if isinstance(value, cls):
            return value
        key = str(value).strip().upper().replace("-", "_")
        aliases = {"S1/2": "S_HALF", "SHALF": "S_HALF", "S12": "S_HALF", "S1T": "S1_TILDE", "S1TILDE": "S1_TILDE"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise InvalidArgumentError(f"unknown method {value!r}") from None

    def __str__(self):
        return self.value


TROTTER_METHODS = (MethodId.S_HALF, MethodId.S1, MethodId.S1_TILDE, MethodId.S2)

# (t_rot, t_comp) per frame (XX, YY, ZZ), in units of epsilon.
STEP_TABLE = {
    MethodId.S_HALF: ((1, 1, 2), (1, 1, 0)),
    MethodId.S1: ((1, 1, 2), (1, 1, 0)),
    MethodId.S1_TILDE: ((1, 2, 1), (1, 0, 1)),
    MethodId.S2: ((2, 2, 4), (2, 2, 0)),
}

C1_PERIOD = 4  # Floquet period in units of epsilon
C1_DIRECTION = np.array([math.sqrt(2.0), 0.0, 1.0]) / math.sqrt(3.0)

FRAME_NOTES = {
    MethodId.S_HALF: "identity",
    MethodId.S1: "global Z pi-rotation exp(-i pi/2 sum Z)",
    MethodId.S1_TILDE: "global Z pi-rotation from the net X/Y pulse product",
    MethodId.S2: "identity",
    MethodId.C1: "U_drive(4 eps): 2 pi rotation about the drive axis, (-1)^N",
}

_PULSES = {
    "X+": (HALF_PI, 0.0, 0.0),
    "X-": (-HALF_PI, 0.0, 0.0),
    "Y+": (0.0, HALF_PI, 0.0),
    "Y-": (0.0, -HALF_PI, 0.0),
    "Z+": (0.0, 0.0, HALF_PI),
    "Z-": (0.0, 0.0, -HALF_PI),
}


@dataclass(frozen=True)
class PulseSegment:
    duration: float
    rotation: tuple = (0.0, 0.0, 0.0)

    @property
    def is_pulse(self) -> bool:
        return any(self.rotation)

    @property
    def field(self) -> FieldVector:
        if not self.is_pulse:
            return FieldVector()
        if self.duration == 0:
            return FieldVector(*(math.copysign(math.inf, r) if r else 0.0 for r in self.rotation))
        return FieldVector(*(r / self.duration for r in self.rotation))


@dataclass(frozen=True)
class PulseSchedule:
    segments: tuple
    method: MethodId
    epsilon: float
    t: float
    frame_correction: str = ""

    @property
    def duration(self) -> float:
        return float(sum(s.duration for s in self.segments))

    def max_field(self) -> float:
        return max((s.field.magnitude for s in self.segments), default=0.0)

    def to_json(self, indent=2) -> str:
        return json.dumps(schedule_to_dict(self), indent=indent)


@dataclass(frozen=True)
class StepPlan:
    t_rot: tuple
    t_comp: tuple
    t: float
    tau: float
    epsilon: float = 0.0

    @property
    def idle(self) -> tuple:
        """Idle time per frame, ``t_i = t_comp_i + t``."""
        return tuple(c + self.t for c in self.t_comp)


def gate_sequence(method: MethodId, t: float, eps: float) -> list[PulseSegment]:
    """Raw segment list for ``method`` at optional time ``t`` and pulse width ``eps``.

    No validation: negative arguments are accepted so that the sequence can
    be differentiated around ``t = eps = 0``.
    """
    method = MethodId.parse(method)
    if method is MethodId.C1:
        tau = C1_PERIOD * eps
        rot = tuple(float(x) for x in C1_DIRECTION * (2 * math.pi))  # omega * 4 eps = 2 pi
        return [PulseSegment(tau, rot)]

    _, comp = STEP_TABLE[method]
    tx, ty, tz = (c * eps + t for c in comp)
    I = lambda d: ("I", d)  # noqa: E731
    if method is MethodId.S_HALF:
        seq = ["Y+", I(tx), "Y-", "X+", I(ty), "X-", I(tz)]
    elif method is MethodId.S1:
        seq = ["Y+", I(tx), "Y+", "X+", I(ty), "X+", I(tz)]
    elif method is MethodId.S1_TILDE:
        seq = [I(tz / 2), "X-", I(ty / 2), "Y+", I(tx), "Y+", I(ty / 2), "X+", I(tz / 2)]
    else:  # S2
        seq = [
            I(tz / 2), "X-", I(ty / 2), "X-",
            "Y-", I(tx / 2), "Y-",
            "Y+", I(tx / 2), "Y+",
            "X+", I(ty / 2), "X+", I(tz / 2),
        ]  # fmt: skip
    segs = []
    for s in seq:
        if isinstance(s, tuple):
            if s[1] != 0:
                segs.append(PulseSegment(s[1]))
        else:
            segs.append(PulseSegment(eps, _PULSES[s]))
    return segs


def build_step_plan(method, t: float, device: DeviceProfile) -> StepPlan:
    method = MethodId.parse(method)
    if t < 0:
        raise InvalidArgumentError(f"optional evolution time must be >= 0, got {t}")
    eps = device.epsilon
    if method is MethodId.C1:
        if t > 0:
            raise UnsupportedError("C1 has no free evolution time; its step is the Floquet period")
        zero = (0.0, 0.0, 0.0)
        return StepPlan(zero, zero, 0.0, C1_PERIOD * eps, eps)
    rot, comp = STEP_TABLE[method]
    t_rot = tuple(r * eps for r in rot)
    t_comp = tuple(c * eps for c in comp)
    tau = float(sum(s.duration for s in gate_sequence(method, t, eps)))
    return StepPlan(t_rot, t_comp, float(t), tau, eps)


def compile_schedule(method, plan: StepPlan, device: DeviceProfile) -> PulseSchedule:
    method = MethodId.parse(method)
    eps = device.epsilon
    expected = build_step_plan(method, plan.t, device)
    if not (
        np.allclose(plan.t_rot, expected.t_rot, rtol=0, atol=1e-15 + 1e-12 * eps)
        and np.allclose(plan.t_comp, expected.t_comp, rtol=0, atol=1e-15 + 1e-12 * eps)
    ):
        raise InvalidArgumentError(f"step plan does not match {method} at epsilon={eps}")
    segs = tuple(gate_sequence(method, plan.t, eps))
    return PulseSchedule(segs, method, eps, plan.t, FRAME_NOTES[method])


# short alias
compile = compile_schedule  # noqa: A001


def schedule_for(method, t: float, device: DeviceProfile) -> PulseSchedule:
    plan = build_step_plan(method, t, device)
    return compile_schedule(method, plan, device)


# --- propagation -------------------------------------------------------------


def evolve(segments: Sequence[PulseSegment], h_idle: np.ndarray, n: int, ideal_pulses: bool = False) -> np.ndarray:
    """Exact propagator of a segment list for a given idle Hamiltonian (bare array)."""
    dim = 1 << n
    u = np.eye(dim, dtype=np.complex128)
    cache = {}
    for seg in segments:
        key = (seg.duration, seg.rotation)
        if key not in cache:
            if seg.is_pulse:
                gen = drive_matrix(n, seg.rotation)
                if not ideal_pulses:
                    gen = gen + seg.duration * h_idle
            else:
                gen = seg.duration * h_idle
            # a vanishing generator is exactly the identity; skipping it keeps
            # interaction-free systems free of eigensolver roundoff
            step = _eigh_exp(gen, 1.0) if gen.any() else None
            cache[key] = step
        step = cache[key]
        if step is None:
            continue
        u = step @ u
    return u


def propagate(
    schedule: PulseSchedule | Sequence[PulseSegment],
    geom: LatticeGeometry,
    spec: InteractionSpec = ISING,
    ideal_pulses: bool = False,
) -> DenseOperator:
    """Product of segment exponentials, first segment rightmost."""
    n = geom.n_sites
    check_capacity(n)
    segs = schedule.segments if isinstance(schedule, PulseSchedule) else tuple(schedule)
    h = idle_hamiltonian(geom, spec).matrix
    return DenseOperator(evolve(segs, h, n, ideal_pulses), unitary=True)


def drive_propagator(segments: Sequence[PulseSegment], n: int) -> np.ndarray:
    """Propagator of the drive alone (interactions off)."""
    u = np.eye(1 << n, dtype=np.complex128)
    for seg in segments:
        if seg.is_pulse:
            u = _eigh_exp(drive_matrix(n, seg.rotation), 1.0) @ u
    return u


def frame_correction(method, device: DeviceProfile, n: int) -> DenseOperator:
    """Residual global rotation ``F`` left by a method's pulses.

    The engineered evolution is compared through ``F^dagger U``. ``F`` is the
    net drive-only propagator of the sequence, independent of the idle times.
    """
    method = MethodId.parse(method)
    check_capacity(n)
    segs = gate_sequence(method, 0.0, device.epsilon if method is MethodId.C1 else 0.0)
    return DenseOperator(drive_propagator(segs, n), unitary=True)


def rotation_gate(axis: str, sign: int, device: DeviceProfile, geom: LatticeGeometry) -> DenseOperator:
    """Finite-width global pi/2 pulse ``exp(-i eps H_Ising -/+ i pi/4 sum sigma_axis)``."""
    if axis not in ("X", "Y", "Z") or sign not in (1, -1):
        raise InvalidArgumentError(f"bad rotation gate ({axis}, {sign})")
    seg = PulseSegment(device.epsilon, _PULSES[f"{axis}{'+' if sign > 0 else '-'}"])
    return propagate([seg], geom)


# --- JSON interchange ----------------------------------------------------------


def _num(x):
    return None if not math.isfinite(x) else float(x)


def schedule_to_dict(schedule: PulseSchedule) -> dict:
    segs = []
    for s in schedule.segments:
        f = s.field
        segs.append(
            {
                "duration": float(s.duration),
                "bx": _num(f.bx),
                "by": _num(f.by),
                "bz": _num(f.bz),
                "rotation": [float(r) for r in s.rotation],
            }
        )
    return {
        "method": schedule.method.value,
        "epsilon": float(schedule.epsilon),
        "t": float(schedule.t),
        "tau": schedule.duration,
        "frame_correction": schedule.frame_correction,
        "segments": segs,
    }


def schedule_from_dict(data: dict) -> PulseSchedule:
    segs = []
    for s in data["segments"]:
        d = float(s["duration"])
        if "rotation" in s and s["rotation"] is not None:
            rot = tuple(float(r) for r in s["rotation"])
        else:
            rot = tuple(float(s.get(k) or 0.0) * d for k in ("bx", "by", "bz"))
        segs.append(PulseSegment(d, rot))
    method = MethodId.parse(data["method"])
    return PulseSchedule(tuple(segs), method, float(data["epsilon"]), float(data["t"]), data.get("frame_correction", FRAME_NOTES[method]))


def schedule_from_json(text: str) -> PulseSchedule:
    return schedule_from_dict(json.loads(text))
