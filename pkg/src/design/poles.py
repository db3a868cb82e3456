import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from src.config import POLE_REAL_MAX, POLE_REAL_MIN
from src.design.gains import GainVector
from src.numerics.linalg import Mat, as_mat, characteristic_poly, mat_mul
from src.numerics.polynomial import ComplexRoot, poly_roots
from src.utils.errors import DimensionError, ParameterError
from src.vehicle.dynamics import linearized_ab

DEFAULT_GRAVITY = 9.81


@dataclass(frozen=True)
class PoleSpec:
    """Vertical strip of the s-plane that every closed-loop pole must occupy."""

    re_min: float = POLE_REAL_MIN
    re_max: float = POLE_REAL_MAX

    def __post_init__(self):
        if not (self.re_min < self.re_max < 0):
            raise ParameterError(f"Pole band needs re_min < re_max < 0, got [{self.re_min}, {self.re_max}]")

    def contains(self, pole: ComplexRoot) -> bool:
        return self.re_min <= pole.real <= self.re_max

    @classmethod
    def parse(cls, text: str) -> "PoleSpec":
        """Parse a band written 'MIN:MAX', for example '-30:-6'."""
        low, sep, high = text.partition(":")
        if not sep:
            raise ParameterError(f"Band must look like MIN:MAX, got {text!r}")
        try:
            return cls(float(low), float(high))
        except ValueError:
            raise ParameterError(f"Band bounds must be numbers, got {text!r}")

    def __str__(self) -> str:
        return f"[{self.re_min:g}, {self.re_max:g}]"


@dataclass(frozen=True)
class SecondOrderMetrics:
    """Dominant-pair step response estimates.

    Attributes:
        t_s: 2% settling time, s.
        t_r: 10-90% rise time, s.
        os_pct: Percent overshoot.
    """

    t_s: float
    t_r: float
    os_pct: float


def controllability_matrix(a: Mat, b: Mat) -> Mat:
    """[B | AB | ... | A^(n-1) B] for an n-state system."""
    a = as_mat(a)
    b = as_mat(b)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionError(f"A must be square, got {a.shape}")
    if b.shape[0] != n:
        raise DimensionError(f"B must have {n} rows, got {b.shape[0]}")

    blocks = [b]
    for _ in range(n - 1):
        blocks.append(mat_mul(a, blocks[-1]))
    return np.hstack(blocks)


def open_loop_characteristic(grav: float = DEFAULT_GRAVITY) -> Polynomial:
    """det(sI - A) of the linear hover model."""
    a, _ = linearized_ab()
    a[0, 10] = -grav
    a[1, 9] = grav
    return characteristic_poly(a)


def closed_loop_factors(gains: GainVector, grav: float = DEFAULT_GRAVITY) -> Tuple[Polynomial, ...]:
    """The four decoupled factors of det(sI - (A - BG)).

    Under the structured gain matrix the closed loop splits exactly into
    altitude, yaw, roll and pitch subsystems. Coefficients are ascending.
    """
    g = gains
    altitude = Polynomial([g[1], g[0], 1.0])
    yaw = Polynomial([g[11], g[10], 1.0])
    roll = Polynomial([grav * g[3], grav * g[2], g[5], g[4], 1.0])
    pitch = Polynomial([-grav * g[7], -grav * g[6], g[9], g[8], 1.0])
    return altitude, yaw, roll, pitch


def closed_loop_poles(gains: GainVector, grav: float = DEFAULT_GRAVITY) -> List[ComplexRoot]:
    """All twelve closed-loop poles: altitude, yaw, roll then pitch roots."""
    poles: List[ComplexRoot] = []
    for factor in closed_loop_factors(gains, grav):
        poles.extend(poly_roots(factor))
    return poles


def second_order_metrics(zeta: float, omega_n: float) -> SecondOrderMetrics:
    """Settling time, rise time and overshoot of a dominant second-order pair."""
    if zeta <= 0 or omega_n <= 0:
        raise ParameterError(f"Damping ratio and natural frequency must be positive, got zeta={zeta}, omega_n={omega_n}")

    t_s = 4.0 / (zeta * omega_n)
    t_r = 1.8 / omega_n
    if zeta >= 1.0:
        os_pct = 0.0
    else:
        os_pct = 100.0 * math.exp(-zeta * math.pi / math.sqrt(1.0 - zeta * zeta))
    return SecondOrderMetrics(t_s=t_s, t_r=t_r, os_pct=os_pct)


def pole_metrics(pole: ComplexRoot) -> SecondOrderMetrics:
    """Metrics for a single stable pole; a real pole counts as critically damped."""
    omega_n = abs(pole)
    if pole.real >= 0 or omega_n == 0:
        raise ParameterError(f"Metrics need a stable pole, got {pole}")
    zeta = min(1.0, -pole.real / omega_n)
    return second_order_metrics(zeta, omega_n)


def design_criteria_met(poles: Sequence[ComplexRoot], max_settling: float = 1.0, max_rise: float = 0.5,
                        max_overshoot: float = 100.0) -> bool:
    """True when every pole, taken as a dominant pair, meets the response targets."""
    for pole in poles:
        if pole.real >= 0:
            return False
        metrics = pole_metrics(pole)
        if metrics.t_s >= max_settling or metrics.t_r >= max_rise or metrics.os_pct >= max_overshoot:
            return False
    return True


def pole_cost(poles: Sequence[ComplexRoot], spec: PoleSpec) -> float:
    """Sum of squared distances of real parts outside the band to the nearest edge."""
    cost = 0.0
    for pole in poles:
        re = pole.real
        if re < spec.re_min:
            cost += (spec.re_min - re) ** 2
        elif re > spec.re_max:
            cost += (re - spec.re_max) ** 2
    return cost


def max_pole_deviation(poles: Sequence[ComplexRoot], reference: Sequence[ComplexRoot]) -> float:
    """Largest real or imaginary mismatch after nearest-neighbour pairing."""
    if len(poles) != len(reference):
        raise ValueError(f"Cannot compare {len(poles)} poles against {len(reference)} reference poles")

    remaining = list(poles)
    worst = 0.0
    for ref in reference:
        nearest = min(range(len(remaining)), key=lambda i: abs(remaining[i] - ref))
        pole = remaining.pop(nearest)
        worst = max(worst, abs(pole.real - ref.real), abs(pole.imag - ref.imag))
    return worst
