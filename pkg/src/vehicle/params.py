import logging
import math
import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Dict, Mapping, Sequence, Tuple

from src.config import DEFAULT_VEHICLE
from src.utils.errors import ParameterError
from src.utils.kvfile import parse_assignment, read_key_values

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VehicleParams:
    """Physical constants of a plus-configuration quadrotor.

    Attributes:
        L: Half distance between opposite rotors, m.
        m: Mass, kg.
        k: Rotor speed squared to thrust constant, N s^2.
        b: Rotor speed squared to drag torque constant, N m s^2.
        Ix, Iy, Iz: Principal inertias, kg m^2.
        omega_max: Maximum rotor speed, rad/s.
        g: Gravitational acceleration, m/s^2.
    """

    L: float = DEFAULT_VEHICLE["L"]
    m: float = DEFAULT_VEHICLE["m"]
    k: float = DEFAULT_VEHICLE["k"]
    b: float = DEFAULT_VEHICLE["b"]
    Ix: float = DEFAULT_VEHICLE["Ix"]
    Iy: float = DEFAULT_VEHICLE["Iy"]
    Iz: float = DEFAULT_VEHICLE["Iz"]
    omega_max: float = DEFAULT_VEHICLE["omega_max"]
    g: float = DEFAULT_VEHICLE["g"]

    def __post_init__(self):
        for field in fields(self):
            value = getattr(self, field.name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ParameterError(f"Parameter {field.name} must be a finite number, got {value!r}")
            if value <= 0:
                raise ParameterError(f"Parameter {field.name} must be strictly positive, got {value}")
            object.__setattr__(self, field.name, float(value))

    @property
    def hover_speed(self) -> float:
        """Rotor speed at which four equal rotors balance gravity, rad/s."""
        return math.sqrt(self.g * self.m / (4.0 * self.k))

    @property
    def hover_feasible(self) -> bool:
        return self.hover_speed <= self.omega_max

    def with_overrides(self, overrides: Mapping[str, object]) -> "VehicleParams":
        """Return a copy with some fields replaced; values may be strings."""
        known = {field.name for field in fields(self)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise ParameterError(f"Unknown vehicle parameters: {', '.join(unknown)}. Valid keys: {', '.join(sorted(known))}")

        parsed = {}
        for key, value in overrides.items():
            try:
                parsed[key] = float(value)
            except (TypeError, ValueError):
                raise ParameterError(f"Parameter {key} is not a number: {value!r}")
        return replace(self, **parsed)

    def scaled(self, factor: float) -> "VehicleParams":
        """Geometrically similar vehicle: lengths scale by factor, mass by factor^3.

        Inertias scale by factor^5 and the rotor constants keep the hover speed
        unchanged, so every scaled airframe can still hover. Gravity is kept.
        """
        if factor <= 0:
            raise ParameterError(f"Scale factor must be positive, got {factor}")
        mass_ratio = factor ** 3
        return replace(
            self,
            L=self.L * factor,
            m=self.m * mass_ratio,
            k=self.k * mass_ratio,
            b=self.b * mass_ratio * factor,
            Ix=self.Ix * factor ** 5,
            Iy=self.Iy * factor ** 5,
            Iz=self.Iz * factor ** 5,
        )

    def as_dict(self) -> Dict[str, float]:
        return asdict(self)

    @classmethod
    def load(cls, sources: Sequence[str] = ()) -> "VehicleParams":
        """Defaults merged with each source in order.

        A source is a KEY=VALUE file, or an inline KEY=VALUE override when it
        contains '=' and names no existing file.
        """
        params = cls()
        for source in sources:
            if "=" in source and not os.path.exists(source):
                params = params.with_overrides(parse_assignment(source))
            else:
                params = params.with_overrides(read_key_values(source))
                logger.info(f"Loaded vehicle parameters from {source}")
        return params


def hover_rotor_speed(params: VehicleParams) -> Tuple[float, bool]:
    """Hover rotor speed and whether it is reachable within omega_max."""
    speed = params.hover_speed
    if not params.hover_feasible:
        logger.warning(f"Hover speed {speed:.2f} rad/s exceeds omega_max {params.omega_max:.2f} rad/s")
    return speed, params.hover_feasible
