import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

from src.numerics.linalg import Mat
from src.utils.errors import NonFiniteError
from src.vehicle.kinematics import euler_rates
from src.vehicle.params import VehicleParams

STATE_SIZE = 12
INPUT_SIZE = 4

# Slots of the 12-vector (x', y', z', x, y, z, wx, wy, wz, phi, theta, psi)
VEL = slice(0, 3)
POS = slice(3, 6)
RATE = slice(6, 9)
EULER = slice(9, 12)

STATE_LABELS = ("vx", "vy", "vz", "X", "Y", "Z", "wx", "wy", "wz", "phi", "theta", "psi")


def _vec3(values) -> np.ndarray:
    return np.array(values, dtype=float).reshape(3)


@dataclass
class RigidState:
    """Vehicle state: body velocity, NED position, body rates, Euler angles."""

    v_body: np.ndarray = field(default_factory=lambda: np.zeros(3))
    p_inertial: np.ndarray = field(default_factory=lambda: np.zeros(3))
    omega_body: np.ndarray = field(default_factory=lambda: np.zeros(3))
    euler: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        self.v_body = _vec3(self.v_body)
        self.p_inertial = _vec3(self.p_inertial)
        self.omega_body = _vec3(self.omega_body)
        self.euler = _vec3(self.euler)

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.v_body, self.p_inertial, self.omega_body, self.euler])

    @classmethod
    def from_vector(cls, x: Sequence[float]) -> "RigidState":
        x = np.asarray(x, dtype=float)
        if x.shape != (STATE_SIZE,):
            raise ValueError(f"State vector must have {STATE_SIZE} entries, got shape {x.shape}")
        return cls(x[VEL], x[POS], x[RATE], x[EULER])

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.as_vector())))


class RotorSpeeds(NamedTuple):
    """Angular speeds of rotors 1-4, rad/s."""

    m1: float
    m2: float
    m3: float
    m4: float

    def squared(self) -> np.ndarray:
        return np.square(np.array(self, dtype=float))

    @classmethod
    def hover(cls, params: VehicleParams) -> "RotorSpeeds":
        speed = params.hover_speed
        return cls(speed, speed, speed, speed)


@dataclass
class BodyDisturbance:
    """Disturbance acting on the body.

    dv and domega are speed offsets injected by the simulator at control
    interval boundaries. force and torque are continuous body-axis loads that
    enter the derivative directly; they default to zero.
    """

    dv: np.ndarray = field(default_factory=lambda: np.zeros(3))
    domega: np.ndarray = field(default_factory=lambda: np.zeros(3))
    force: np.ndarray = field(default_factory=lambda: np.zeros(3))
    torque: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        self.dv = _vec3(self.dv)
        self.domega = _vec3(self.domega)
        self.force = _vec3(self.force)
        self.torque = _vec3(self.torque)
        if not all(np.all(np.isfinite(v)) for v in (self.dv, self.domega, self.force, self.torque)):
            raise NonFiniteError("Disturbance components must be finite")

    def speed_offsets(self) -> np.ndarray:
        return np.concatenate([self.dv, self.domega])

    @property
    def has_loads(self) -> bool:
        return bool(np.any(self.force) or np.any(self.torque))


def rotor_aggregates(rotors: Sequence[float]) -> Tuple[float, float, float, float]:
    """Aggregates (w1..w4) of the squared rotor speeds."""
    s1, s2, s3, s4 = np.square(np.asarray(rotors, dtype=float))
    return s1 + s2 + s3 + s4, s2 - s4, s1 - s3, s1 - s2 + s3 - s4


def state_derivative(
    x: np.ndarray,
    aggregates: Sequence[float],
    params: VehicleParams,
    force: Optional[np.ndarray] = None,
    torque: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Nonlinear right-hand side on the flat 12-vector.

    Thrust acts along body -z: z'' = g cos(phi) cos(theta) - w1 k/m. The body
    acceleration has no Coriolis term.
    """
    vx, vy, vz, _, _, _, wx, wy, wz, phi, theta, psi = x
    w1, w2, w3, w4 = aggregates
    p = params

    phi_dot, theta_dot, psi_dot = euler_rates((phi, theta, psi), (wx, wy, wz))

    sphi, cphi = math.sin(phi), math.cos(phi)
    stheta, ctheta = math.sin(theta), math.cos(theta)
    spsi, cpsi = math.sin(psi), math.cos(psi)

    ax = -p.g * stheta
    ay = p.g * sphi * ctheta
    az = p.g * cphi * ctheta - w1 * (p.k / p.m)
    alpha_x = -w2 * (p.k * p.L / p.Ix)
    alpha_y = -w3 * (p.k * p.L / p.Iy)
    alpha_z = w4 * (p.b * p.L / p.Iz)

    if force is not None:
        ax += force[0] / p.m
        ay += force[1] / p.m
        az += force[2] / p.m
    if torque is not None:
        alpha_x += torque[0] / p.Ix
        alpha_y += torque[1] / p.Iy
        alpha_z += torque[2] / p.Iz

    # Inertial velocity is R_IB^T v_body
    north = ctheta * cpsi * vx + (sphi * stheta * cpsi - cphi * spsi) * vy + (cphi * stheta * cpsi + sphi * spsi) * vz
    east = ctheta * spsi * vx + (sphi * stheta * spsi + cphi * cpsi) * vy + (cphi * stheta * spsi - sphi * cpsi) * vz
    down = -stheta * vx + sphi * ctheta * vy + cphi * ctheta * vz

    return np.array([
        ax, ay, az,
        north, east, down,
        alpha_x, alpha_y, alpha_z,
        phi_dot, theta_dot, psi_dot,
    ])


def nonlinear_deriv(
    state: RigidState,
    rotors: Sequence[float],
    dist: Optional[BodyDisturbance] = None,
    params: Optional[VehicleParams] = None,
) -> np.ndarray:
    """Time derivative of the full state for given rotor speeds.

    Only the force/torque part of dist enters here; speed offsets are
    injected by the simulator.
    """
    params = params or VehicleParams()
    force = torque = None
    if dist is not None and dist.has_loads:
        force, torque = dist.force, dist.torque
    return state_derivative(state.as_vector(), rotor_aggregates(rotors), params, force, torque)


def linearized_ab(params: Optional[VehicleParams] = None) -> Tuple[Mat, Mat]:
    """Small-angle linear model X' = AX + BU about hover.

    Only gravity appears; no other vehicle parameter enters A or B.
    """
    grav = (params or VehicleParams()).g

    a = np.zeros((STATE_SIZE, STATE_SIZE))
    a[0, 10] = -grav  # x'' <- theta
    a[1, 9] = grav  # y'' <- phi
    for i in range(3):
        a[3 + i, i] = 1.0  # position <- velocity
        a[9 + i, 6 + i] = 1.0  # euler <- body rate

    b = np.zeros((STATE_SIZE, INPUT_SIZE))
    b[2, 0] = 1.0  # u1 -> z''
    b[6, 1] = 1.0  # u2 -> wx'
    b[7, 2] = 1.0  # u3 -> wy'
    b[8, 3] = 1.0  # u4 -> wz'
    return a, b
