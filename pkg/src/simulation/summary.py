import os
from dataclasses import dataclass, field
from typing import Dict, Optional, Union

import numpy as np

from src.simulation.log import FLAG_ROTOR_CLAMP, SimLog
from src.utils.kvfile import write_key_values
from src.vehicle.dynamics import EULER, POS, STATE_LABELS

BAND_FRACTION = 0.02
BAND_FLOOR = 1e-9
FINAL_WINDOW = 2.0

# Position and Euler channels decide settling
_SETTLING_CHANNELS = list(range(POS.start, POS.stop)) + list(range(EULER.start, EULER.stop))
_DISTURBANCE_SLICE = slice(1 + 12 + 4 + 4, 1 + 12 + 4 + 4 + 6)
_PSI = EULER.stop - 1


@dataclass
class ScenarioSummary:
    """Scalar figures of merit for one run.

    Deviations are taken against the regulation target: zero everywhere in
    hover mode, the setpoint position and yaw in track mode.
    """

    name: str
    mode: str
    rows: int
    duration: float
    aborted: bool = False
    abort_reason: Optional[str] = None
    max_deviation: Dict[str, float] = field(default_factory=dict)
    settling_time: float = 0.0
    last_disturbance_time: float = 0.0
    settling_after_disturbance: float = 0.0
    final_position_error: float = 0.0
    final_yaw_error: float = 0.0
    window_position_error: float = 0.0
    window_yaw_error: float = 0.0
    window_saturated: bool = False
    rotor_saturation_fraction: float = 0.0

    @property
    def max_position_excursion(self) -> float:
        return max((self.max_deviation.get(label, 0.0) for label in ("X", "Y", "Z")), default=0.0)

    @property
    def max_euler_deviation(self) -> float:
        return max((self.max_deviation.get(label, 0.0) for label in ("phi", "theta", "psi")), default=0.0)

    def as_dict(self) -> Dict[str, object]:
        values = {
            "name": self.name,
            "mode": self.mode,
            "rows": self.rows,
            "duration": self.duration,
            "aborted": self.aborted,
            "abort_reason": self.abort_reason or "",
        }
        for label, value in self.max_deviation.items():
            values[f"max_dev_{label}"] = value
        values.update({
            "max_position_excursion": self.max_position_excursion,
            "max_euler_deviation": self.max_euler_deviation,
            "settling_time": self.settling_time,
            "last_disturbance_time": self.last_disturbance_time,
            "settling_after_disturbance": self.settling_after_disturbance,
            "final_position_error": self.final_position_error,
            "final_yaw_error": self.final_yaw_error,
            "window_position_error": self.window_position_error,
            "window_yaw_error": self.window_yaw_error,
            "window_saturated": self.window_saturated,
            "rotor_saturation_fraction": self.rotor_saturation_fraction,
        })
        return values

    def write(self, path: Union[str, os.PathLike]) -> None:
        write_key_values(path, self.as_dict())


def summarize(log: SimLog, window: float = FINAL_WINDOW) -> ScenarioSummary:
    """Reduce a log to its summary. The log must have at least one row."""
    if not log.rows:
        raise ValueError(f"Cannot summarize empty log {log.name!r}")

    data = np.array(log.rows, dtype=float)
    times = data[:, 0]
    states = data[:, 1:13]
    disturbances = data[:, _DISTURBANCE_SLICE]
    flags = data[:, -1].astype(int)

    reference = np.zeros(12)
    if log.setpoint is not None:
        reference[POS] = log.setpoint.p_inertial_des
        reference[_PSI] = log.setpoint.psi_des

    deviation = states - reference
    # Yaw error wraps to (-pi, pi]
    deviation[:, _PSI] = np.angle(np.exp(1j * deviation[:, _PSI]))
    magnitude = np.abs(deviation)

    peaks = magnitude.max(axis=0)
    bands = np.maximum(BAND_FRACTION * peaks, BAND_FLOOR)
    outside = np.any(magnitude[:, _SETTLING_CHANNELS] > bands[_SETTLING_CHANNELS], axis=1)
    settling_time = float(times[outside][-1]) if outside.any() else 0.0

    disturbed = np.any(disturbances != 0.0, axis=1)
    last_disturbance = float(times[disturbed][-1]) if disturbed.any() else 0.0

    position_error = np.linalg.norm(deviation[:, POS], axis=1)
    yaw_error = magnitude[:, _PSI]
    in_window = times >= times[-1] - window - 1e-12

    return ScenarioSummary(
        name=log.name,
        mode=log.mode,
        rows=len(log.rows),
        duration=float(times[-1]),
        aborted=log.aborted,
        abort_reason=log.abort_reason,
        max_deviation={label: float(value) for label, value in zip(STATE_LABELS, peaks)},
        settling_time=settling_time,
        last_disturbance_time=last_disturbance,
        settling_after_disturbance=max(0.0, settling_time - last_disturbance),
        final_position_error=float(position_error[-1]),
        final_yaw_error=float(yaw_error[-1]),
        window_position_error=float(position_error[in_window].mean()),
        window_yaw_error=float(yaw_error[in_window].mean()),
        window_saturated=bool(np.any(flags[in_window] != 0)),
        rotor_saturation_fraction=float(np.mean((flags & FLAG_ROTOR_CLAMP) != 0)),
    )
