import os
from dataclasses import dataclass, field
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from src.config import CSV_SIGNIFICANT_DIGITS
from src.control.controller import ControlOutput, Setpoint
from src.vehicle.dynamics import STATE_LABELS, BodyDisturbance

CONTROL_COLUMNS = ("u1", "u2", "u3", "u4")
ROTOR_COLUMNS = ("wm1", "wm2", "wm3", "wm4")
DISTURBANCE_COLUMNS = ("d_vx", "d_vy", "d_vz", "d_wx", "d_wy", "d_wz")
LOG_COLUMNS = ("t",) + STATE_LABELS + CONTROL_COLUMNS + ROTOR_COLUMNS + DISTURBANCE_COLUMNS + ("sat_flags",)

# Bits of the sat_flags column
FLAG_SPEED_ERROR = 1
FLAG_RATE_ERROR = 2
FLAG_ROTOR_CLAMP = 4


@dataclass
class SimLog:
    """Per-control-interval record of one scenario run.

    Row k holds the state at t_k after disturbance injection, the control and
    rotor speeds computed from it, the sampled disturbance and the saturation
    bitmask. The control on the final row is never applied.
    """

    name: str
    mode: str = "hover"
    setpoint: Optional[Setpoint] = None
    dt_control: float = 0.01
    rows: List[List[float]] = field(default_factory=list)
    aborted: bool = False
    abort_reason: Optional[str] = None
    abort_time: Optional[float] = None

    def record(self, t: float, x: np.ndarray, output: ControlOutput, disturbance: BodyDisturbance) -> None:
        row = [float(t)]
        row.extend(float(v) for v in x)
        row.extend(float(v) for v in output.u)
        row.extend(float(v) for v in output.rotors)
        row.extend(float(v) for v in disturbance.speed_offsets())
        row.append(output.flags.bitmask)
        self.rows.append(row)

    def abort(self, t: float, reason: str) -> None:
        self.aborted = True
        self.abort_time = float(t)
        self.abort_reason = reason

    def __len__(self) -> int:
        return len(self.rows)

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.rows, columns=list(LOG_COLUMNS))
        return frame.astype({"sat_flags": "int64"})

    def write_csv(self, path: Union[str, os.PathLike], digits: int = CSV_SIGNIFICANT_DIGITS) -> None:
        directory = os.path.dirname(os.fspath(path))
        if directory:
            os.makedirs(directory, exist_ok=True)
        self.to_frame().to_csv(path, index=False, float_format=f"%.{digits}g")


def read_log_csv(path: Union[str, os.PathLike]) -> pd.DataFrame:
    """Load a log written by SimLog.write_csv, checking the header."""
    if not os.path.exists(path):
        raise FileNotFoundError(f"Log not found: {path}")
    frame = pd.read_csv(path)
    if tuple(frame.columns) != LOG_COLUMNS:
        raise ValueError(f"Unexpected log header in {path}")
    return frame
