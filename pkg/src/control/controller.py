from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Tuple

import numpy as np

from src.config import RATE_ERROR_LIMIT, SPEED_ERROR_LIMIT, TRACKER_K1, TRACKER_K2
from src.numerics.linalg import Mat
from src.utils.errors import ParameterError
from src.vehicle.dynamics import POS, RATE, VEL, RigidState, RotorSpeeds
from src.vehicle.kinematics import check_gimbal, rotation_inertial_to_body, wrap_angle
from src.vehicle.mixer import mixer
from src.vehicle.params import VehicleParams

ERROR_LAWS = ("proportional", "direct")

# 12-vector matching the state ordering; see tracking_error for slot contents.
ErrorState = np.ndarray


@dataclass
class Setpoint:
    """Desired NED position (m) and yaw (rad)."""

    p_inertial_des: np.ndarray = field(default_factory=lambda: np.zeros(3))
    psi_des: float = 0.0

    def __post_init__(self):
        self.p_inertial_des = np.array(self.p_inertial_des, dtype=float).reshape(3)
        self.psi_des = float(self.psi_des)
        if not (np.all(np.isfinite(self.p_inertial_des)) and np.isfinite(self.psi_des)):
            raise ParameterError("Setpoint must be finite")


@dataclass(frozen=True)
class TrackerConfig:
    """Tracking law constants.

    Attributes:
        k1: Position error to speed error gain, 1/s.
        k2: Yaw error to yaw-rate error gain, 1/s.
        v_sat: Per-component limit on the linear speed errors, m/s.
        w_sat: Limit on the yaw-rate error, rad/s.
        error_law: "proportional" feeds speed errors proportional to the
            position and yaw errors; "direct" feeds the raw errors in the
            position and yaw slots without saturation.
    """

    k1: float = TRACKER_K1
    k2: float = TRACKER_K2
    v_sat: float = SPEED_ERROR_LIMIT
    w_sat: float = RATE_ERROR_LIMIT
    error_law: str = "proportional"

    def __post_init__(self):
        for name in ("k1", "k2", "v_sat", "w_sat"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"Tracker {name} must be positive, got {getattr(self, name)}")
        if self.error_law not in ERROR_LAWS:
            raise ParameterError(f"Unknown error law {self.error_law!r}; choose from {', '.join(ERROR_LAWS)}")


class SaturationFlags(NamedTuple):
    speed_error: bool = False
    rate_error: bool = False
    rotor_clamp: bool = False

    @property
    def bitmask(self) -> int:
        return int(self.speed_error) | (int(self.rate_error) << 1) | (int(self.rotor_clamp) << 2)

    @property
    def any(self) -> bool:
        return self.speed_error or self.rate_error or self.rotor_clamp


class ControlOutput(NamedTuple):
    u: np.ndarray
    rotors: RotorSpeeds
    flags: SaturationFlags


def hover_state_vector(state: RigidState) -> np.ndarray:
    """State vector X with the inertial position rotated into the body frame."""
    x = state.as_vector()
    x[POS] = rotation_inertial_to_body(state.euler) @ state.p_inertial
    return x


def hover_input(x: np.ndarray, gain_matrix: Mat) -> np.ndarray:
    """U = -G X."""
    return -(np.asarray(gain_matrix, dtype=float) @ np.asarray(x, dtype=float))


def _tracking_error(state: RigidState, sp: Setpoint, cfg: TrackerConfig) -> Tuple[ErrorState, bool, bool]:
    rotation = rotation_inertial_to_body(state.euler)
    position_error = rotation @ (state.p_inertial - sp.p_inertial_des)
    yaw_error = wrap_angle(state.euler[2] - sp.psi_des)

    e = np.zeros(12)
    e[RATE] = state.omega_body
    e[9:11] = state.euler[:2]

    if cfg.error_law == "direct":
        e[VEL] = state.v_body
        e[POS] = position_error
        e[11] = yaw_error
        return e, False, False

    speed = state.v_body + cfg.k1 * position_error
    yaw_rate = state.omega_body[2] + cfg.k2 * yaw_error

    speed_saturated = bool(np.any(np.abs(speed) > cfg.v_sat))
    rate_saturated = abs(yaw_rate) > cfg.w_sat

    e[VEL] = np.clip(speed, -cfg.v_sat, cfg.v_sat)
    e[8] = min(max(yaw_rate, -cfg.w_sat), cfg.w_sat)
    return e, speed_saturated, rate_saturated


def tracking_error(state: RigidState, sp: Setpoint, cfg: Optional[TrackerConfig] = None) -> ErrorState:
    """Error vector for U = -G e.

    Speed slots carry v_body + k1 * (body-frame position error), each clamped
    to +/-v_sat; the wz slot carries wz + k2 * (wrapped yaw error), clamped to
    +/-w_sat. Position and yaw slots are zero; roll, pitch and the other rates
    are copied from the state.
    """
    e, _, _ = _tracking_error(state, sp, cfg or TrackerConfig())
    return e


def control_step(
    state: RigidState,
    sp: Optional[Setpoint],
    gain_matrix: Mat,
    cfg: Optional[TrackerConfig],
    params: VehicleParams,
) -> ControlOutput:
    """One controller update; sp=None selects hover mode (U = -G X)."""
    check_gimbal(state.euler[1])

    if sp is None:
        e = hover_state_vector(state)
        speed_saturated = rate_saturated = False
    else:
        e, speed_saturated, rate_saturated = _tracking_error(state, sp, cfg or TrackerConfig())

    u = hover_input(e, gain_matrix)
    rotors, clamped = mixer(u, params)
    return ControlOutput(u, rotors, SaturationFlags(speed_saturated, rate_saturated, clamped))


class Controller:
    """Immutable pairing of a gain matrix, tracker constants and vehicle."""

    def __init__(self, gain_matrix: Mat, params: VehicleParams, tracker: Optional[TrackerConfig] = None):
        self.gain_matrix = np.array(gain_matrix, dtype=float)
        self.gain_matrix.setflags(write=False)
        self.params = params
        self.tracker = tracker or TrackerConfig()

    def step(self, state: RigidState, setpoint: Optional[Setpoint] = None) -> ControlOutput:
        return control_step(state, setpoint, self.gain_matrix, self.tracker, self.params)
