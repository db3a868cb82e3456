from typing import Callable

import numpy as np

from src.utils.errors import NonFiniteError

# f(t, y) -> dy/dt, same shape as y
Derivative = Callable[[float, np.ndarray], np.ndarray]


def rk4_step(deriv: Derivative, state: np.ndarray, t: float, dt: float) -> np.ndarray:
    """Advance state by one classical fourth-order Runge-Kutta step.

    Args:
        deriv: Right-hand side f(t, y).
        state: State at time t. Not modified.
        t: Current time, s.
        dt: Step size, s. Must be positive.

    Raises:
        NonFiniteError: If any stage derivative contains NaN or inf.
    """
    if dt <= 0:
        raise ValueError(f"Step size must be positive, got {dt}")

    y = np.asarray(state, dtype=float)
    half = 0.5 * dt

    k1 = _checked(deriv(t, y), t)
    k2 = _checked(deriv(t + half, y + half * k1), t + half)
    k3 = _checked(deriv(t + half, y + half * k2), t + half)
    k4 = _checked(deriv(t + dt, y + dt * k3), t + dt)

    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _checked(value, t: float) -> np.ndarray:
    value = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(value)):
        raise NonFiniteError(f"Non-finite derivative at t={t:.6f}")
    return value
