from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from src.utils.errors import ParameterError
from src.vehicle.dynamics import BodyDisturbance

DISTURBANCE_MODES = ("none", "pulse", "gaussian")

# How a sampled value reaches the plant:
#   rate    - speed change per second of exposure; each control interval adds value * dt_control
#   impulse - the sampled value itself is added at every control interval
#   load    - body force m * dv and torque I * domega held over the interval
INJECTION_MODES = ("rate", "impulse", "load")

Triple = Tuple[float, float, float]


def _triple(value: Union[float, Sequence[float]]) -> Triple:
    if np.isscalar(value):
        return (float(value),) * 3
    values = tuple(float(v) for v in value)
    if len(values) != 3:
        raise ParameterError(f"Expected a scalar or three components, got {value!r}")
    return values


@dataclass(frozen=True)
class DisturbanceSpec:
    """Disturbance scenario.

    Attributes:
        mode: "none", "pulse" or "gaussian".
        dv, domega: Pulse magnitudes on the linear (m/s) and angular (rad/s)
            speeds; scalars apply to all three axes.
        t0, t1: Pulse window, s. Control intervals starting in [t0, t1) see the pulse.
        std_v, std_w: Standard deviations of the gaussian draws, m/s and rad/s.
        seed: RNG seed for gaussian draws.
        injection: One of INJECTION_MODES.
    """

    mode: str = "none"
    dv: Union[float, Triple] = 0.0
    domega: Union[float, Triple] = 0.0
    t0: float = 0.0
    t1: float = 0.5
    std_v: float = 0.0
    std_w: float = 0.0
    seed: int = 0
    injection: str = "rate"

    def __post_init__(self):
        if self.mode not in DISTURBANCE_MODES:
            raise ParameterError(f"Unknown disturbance mode {self.mode!r}; choose from {', '.join(DISTURBANCE_MODES)}")
        if self.injection not in INJECTION_MODES:
            raise ParameterError(f"Unknown injection {self.injection!r}; choose from {', '.join(INJECTION_MODES)}")
        if not self.t0 < self.t1:
            raise ParameterError(f"Pulse window needs t0 < t1, got [{self.t0}, {self.t1}]")
        if self.std_v < 0 or self.std_w < 0:
            raise ParameterError("Disturbance standard deviations must be non-negative")
        object.__setattr__(self, "dv", _triple(self.dv))
        object.__setattr__(self, "domega", _triple(self.domega))


def sample_disturbance(spec: DisturbanceSpec, t: float,
                       rng: Optional[np.random.Generator] = None) -> BodyDisturbance:
    """Disturbance for the control interval starting at t.

    Gaussian draws take one normal sample per component in the order
    x', y', z', wx, wy, wz, so a seeded generator reproduces the sequence.
    """
    if spec.mode == "pulse":
        if spec.t0 <= t < spec.t1 - 1e-12:
            return BodyDisturbance(dv=spec.dv, domega=spec.domega)
        return BodyDisturbance()

    if spec.mode == "gaussian":
        if rng is None:
            raise ParameterError("Gaussian disturbances need a random generator")
        scales = np.array([spec.std_v] * 3 + [spec.std_w] * 3)
        draw = rng.normal(0.0, 1.0, size=6) * scales
        return BodyDisturbance(dv=draw[:3], domega=draw[3:])

    return BodyDisturbance()


class DisturbanceSampler:
    """Owns the seeded generator for one scenario run."""

    def __init__(self, spec: DisturbanceSpec):
        self.spec = spec
        self.rng = np.random.default_rng(spec.seed)

    def sample(self, t: float) -> BodyDisturbance:
        return sample_disturbance(self.spec, t, self.rng)
