import math
from typing import Sequence, Tuple

import numpy as np

from src.config import GIMBAL_LIMIT_DEG
from src.utils.errors import GimbalProximityError

GIMBAL_LIMIT = math.radians(GIMBAL_LIMIT_DEG)


def rotation_inertial_to_body(euler: Sequence[float]) -> np.ndarray:
    """Z-Y-X rotation taking NED inertial vectors into the body frame."""
    phi, theta, psi = euler
    cphi, sphi = math.cos(phi), math.sin(phi)
    ctheta, stheta = math.cos(theta), math.sin(theta)
    cpsi, spsi = math.cos(psi), math.sin(psi)

    return np.array([
        [ctheta * cpsi, ctheta * spsi, -stheta],
        [sphi * stheta * cpsi - cphi * spsi, sphi * stheta * spsi + cphi * cpsi, sphi * ctheta],
        [cphi * stheta * cpsi + sphi * spsi, cphi * stheta * spsi - sphi * cpsi, cphi * ctheta],
    ])


def check_gimbal(theta: float) -> None:
    if abs(theta) >= GIMBAL_LIMIT:
        raise GimbalProximityError(
            f"Pitch {math.degrees(theta):.2f} deg is within the {GIMBAL_LIMIT_DEG:.0f} deg gimbal guard"
        )


def euler_rates(euler: Sequence[float], omega_body: Sequence[float]) -> Tuple[float, float, float]:
    """Roll, pitch and yaw rates from body angular velocity (Z-Y-X kinematics).

    Uses the standard tan(theta) coupling in the roll rate.
    """
    phi, theta, _ = euler
    wx, wy, wz = omega_body
    check_gimbal(theta)

    sphi, cphi = math.sin(phi), math.cos(phi)
    coupled = wy * sphi + wz * cphi

    phi_dot = wx + math.tan(theta) * coupled
    theta_dot = wy * cphi - wz * sphi
    psi_dot = coupled / math.cos(theta)
    return phi_dot, theta_dot, psi_dot


def wrap_angle(angle: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    wrapped = math.remainder(angle, 2.0 * math.pi)
    if wrapped == -math.pi:
        return math.pi
    return wrapped
