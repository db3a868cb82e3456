import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.config import DT_CONTROL, DT_PHYSICS
from src.control.controller import Controller, Setpoint, TrackerConfig
from src.numerics.integrate import rk4_step
from src.numerics.linalg import Mat
from src.simulation.disturbances import DisturbanceSampler, DisturbanceSpec
from src.simulation.log import SimLog
from src.utils.errors import GimbalProximityError, NonFiniteError, ParameterError
from src.vehicle.dynamics import RATE, VEL, RigidState, rotor_aggregates, state_derivative
from src.vehicle.params import VehicleParams

logger = logging.getLogger(__name__)

SCENARIO_MODES = ("hover", "track")

_STEP_TOLERANCE = 1e-9


def _whole_multiple(value: float, unit: float) -> Optional[int]:
    count = round(value / unit)
    if count < 1 or abs(count * unit - value) > _STEP_TOLERANCE * max(1.0, value):
        return None
    return count


@dataclass
class ScenarioConfig:
    """One closed-loop simulation run.

    Attributes:
        name: Label carried into the log and summary.
        mode: "hover" regulates to the origin; "track" follows setpoint.
        duration: Simulated time, s. A whole number of control intervals.
        dt_control: Controller period, s.
        dt_physics: RK4 step, s. dt_control must be a whole multiple of it.
        disturbance: Disturbance scenario.
        setpoint: Required in track mode, ignored in hover mode.
        initial_state: State at t = 0.
    """

    name: str = "scenario"
    mode: str = "hover"
    duration: float = 5.0
    dt_control: float = DT_CONTROL
    dt_physics: float = DT_PHYSICS
    disturbance: DisturbanceSpec = field(default_factory=DisturbanceSpec)
    setpoint: Optional[Setpoint] = None
    initial_state: RigidState = field(default_factory=RigidState)

    def __post_init__(self):
        if self.mode not in SCENARIO_MODES:
            raise ParameterError(f"Unknown scenario mode {self.mode!r}; choose from {', '.join(SCENARIO_MODES)}")
        if self.mode == "track" and self.setpoint is None:
            raise ParameterError("Track mode needs a setpoint")
        if not (self.duration > 0 and self.dt_control > 0 and self.dt_physics > 0):
            raise ParameterError("duration, dt_control and dt_physics must be positive")
        if self.dt_physics > self.dt_control:
            raise ParameterError(f"dt_physics {self.dt_physics} exceeds dt_control {self.dt_control}")
        if self.substeps is None:
            raise ParameterError(f"dt_control {self.dt_control} is not a whole multiple of dt_physics {self.dt_physics}")
        if self.intervals is None:
            raise ParameterError(f"duration {self.duration} is not a whole number of control intervals")

    @property
    def substeps(self) -> Optional[int]:
        return _whole_multiple(self.dt_control, self.dt_physics)

    @property
    def intervals(self) -> Optional[int]:
        return _whole_multiple(self.duration, self.dt_control)


def run_scenario(
    cfg: ScenarioConfig,
    gain_matrix: Mat,
    tracker: Optional[TrackerConfig] = None,
    params: Optional[VehicleParams] = None,
) -> SimLog:
    """Simulate the closed loop and return its log.

    Each control interval samples the disturbance, injects it into the speed
    states at the interval start, computes the control from the injected
    state, logs the row, then integrates the nonlinear model with the rotor
    speeds held constant. A gimbal-guard violation or a non-finite state
    ends the run early with an aborted log.
    """
    params = params or VehicleParams()
    controller = Controller(gain_matrix, params, tracker)
    sampler = DisturbanceSampler(cfg.disturbance)
    injection = cfg.disturbance.injection
    setpoint = cfg.setpoint if cfg.mode == "track" else None

    substeps = cfg.substeps
    intervals = cfg.intervals
    inertia = np.array([params.Ix, params.Iy, params.Iz])

    log = SimLog(name=cfg.name, mode=cfg.mode, setpoint=setpoint, dt_control=cfg.dt_control)
    x = cfg.initial_state.as_vector()
    clamping = False

    logger.info(f"Starting {cfg.name}: {cfg.mode} mode, {cfg.duration:g} s, {cfg.disturbance.mode} disturbance")

    for k in range(intervals + 1):
        t = k * cfg.dt_control
        disturbance = sampler.sample(t)

        force = torque = None
        if injection == "rate":
            x[VEL] += disturbance.dv * cfg.dt_control
            x[RATE] += disturbance.domega * cfg.dt_control
        elif injection == "impulse":
            x[VEL] += disturbance.dv
            x[RATE] += disturbance.domega
        else:
            force = params.m * disturbance.dv
            torque = inertia * disturbance.domega

        if not np.all(np.isfinite(x)):
            log.abort(t, "non-finite state")
            break

        try:
            output = controller.step(RigidState.from_vector(x), setpoint)
        except GimbalProximityError as e:
            log.abort(t, str(e))
            break

        log.record(t, x, output, disturbance)

        if output.flags.rotor_clamp != clamping:
            clamping = output.flags.rotor_clamp
            logger.debug(f"{cfg.name}: rotor clamp {'engaged' if clamping else 'released'} at t={t:.3f}")

        if k == intervals:
            break

        aggregates = rotor_aggregates(output.rotors)

        def deriv(_t, y):
            return state_derivative(y, aggregates, params, force, torque)

        try:
            for j in range(substeps):
                x = rk4_step(deriv, x, t + j * cfg.dt_physics, cfg.dt_physics)
        except (GimbalProximityError, NonFiniteError) as e:
            log.abort(t, str(e))
            break

    if log.aborted:
        logger.warning(f"{cfg.name} aborted at t={log.abort_time:.3f}: {log.abort_reason}")
    else:
        logger.info(f"Finished {cfg.name}: {len(log)} rows")
    return log
