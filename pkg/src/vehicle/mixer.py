from typing import Sequence, Tuple

import numpy as np

from src.vehicle.dynamics import RotorSpeeds
from src.vehicle.params import VehicleParams

# Squared rotor speeds from aggregates (w1..w4), rows are rotors 1-4.
_AGGREGATE_TO_SQUARES = 0.25 * np.array([
    [1.0, 0.0, 2.0, 1.0],
    [1.0, 2.0, 0.0, -1.0],
    [1.0, 0.0, -2.0, 1.0],
    [1.0, -2.0, 0.0, -1.0],
])


def inputs_from_aggregates(w: Sequence[float], params: VehicleParams) -> np.ndarray:
    """Abstract inputs u1..u4 from rotor aggregates, thrust sign pointing up."""
    w1, w2, w3, w4 = w
    p = params
    return np.array([
        p.g - w1 * (p.k / p.m),
        -w2 * (p.k * p.L / p.Ix),
        -w3 * (p.k * p.L / p.Iy),
        w4 * (p.b * p.L / p.Iz),
    ])


def aggregates_from_inputs(u: Sequence[float], params: VehicleParams) -> np.ndarray:
    """Inverse of inputs_from_aggregates."""
    u1, u2, u3, u4 = u
    p = params
    return np.array([
        (p.g - u1) * (p.m / p.k),
        -u2 * (p.Ix / (p.k * p.L)),
        -u3 * (p.Iy / (p.k * p.L)),
        u4 * (p.Iz / (p.b * p.L)),
    ])


def _span(values: np.ndarray) -> float:
    return float(values.max() - values.min())


def _yaw_share(tilt: np.ndarray, yaw: np.ndarray, limit: float) -> float:
    """Largest fraction of the yaw differential that fits next to the tilt one."""
    tilt_gap = tilt[:, None] - tilt[None, :]
    yaw_gap = yaw[:, None] - yaw[None, :]
    growing = yaw_gap > 0.0
    if not np.any(growing):
        return 1.0
    bound = float(np.min((limit - tilt_gap[growing]) / yaw_gap[growing]))
    return min(max(bound, 0.0), 1.0)


def mixer(u: Sequence[float], params: VehicleParams) -> Tuple[RotorSpeeds, bool]:
    """Rotor speeds that realise the inputs u, saturated to [0, omega_max].

    Demands the rotors can meet are mixed exactly. Otherwise the roll/pitch
    differential is scaled down until its spread fits the rotor range and
    yaw keeps the largest share that still fits beside it. The collective
    only gets the room left over, so saturation never turns into a torque
    the controller did not ask for.

    Returns:
        The rotor speeds and whether the demand had to be saturated.
    """
    w = aggregates_from_inputs(u, params)
    limit = params.omega_max ** 2
    squares = _AGGREGATE_TO_SQUARES @ w
    if np.all(squares >= 0.0) and np.all(squares <= limit):
        return RotorSpeeds(*np.sqrt(squares).tolist()), False

    tilt = _AGGREGATE_TO_SQUARES[:, 1:3] @ w[1:3]
    if _span(tilt) > limit:
        tilt = tilt * (limit / _span(tilt))
    yaw = _AGGREGATE_TO_SQUARES[:, 3] * w[3]
    shaped = tilt + _yaw_share(tilt, yaw, limit) * yaw

    collective = min(max(0.25 * w[0], -shaped.min()), limit - shaped.max())
    speeds = np.sqrt(np.clip(collective + shaped, 0.0, limit))
    return RotorSpeeds(*speeds.tolist()), True
