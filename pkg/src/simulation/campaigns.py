import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.config import DT_CONTROL, DT_PHYSICS
from src.control.controller import Setpoint, TrackerConfig
from src.numerics.linalg import Mat
from src.simulation.disturbances import DisturbanceSpec
from src.simulation.scenario import ScenarioConfig, run_scenario
from src.simulation.summary import ScenarioSummary, summarize
from src.vehicle.params import VehicleParams

logger = logging.getLogger(__name__)

PERTURB_DURATION = 5.0
RANDOM_DURATION = 10.0
TRACK_DURATION = 20.0

TRACK_POSITION = (10.0, 5.0, -2.0)
TRACK_YAW = 3.0


def perturb_scenario(
    dv: float = 1.0,
    domega: float = 0.1,
    window: Tuple[float, float] = (0.0, 0.5),
    duration: float = PERTURB_DURATION,
    injection: str = "rate",
    dt_control: float = DT_CONTROL,
    dt_physics: float = DT_PHYSICS,
) -> ScenarioConfig:
    """Hover from rest with a pulse on every linear and angular speed."""
    return ScenarioConfig(
        name="perturb",
        mode="hover",
        duration=duration,
        dt_control=dt_control,
        dt_physics=dt_physics,
        disturbance=DisturbanceSpec(
            mode="pulse", dv=dv, domega=domega, t0=window[0], t1=window[1], injection=injection
        ),
    )


def random_scenario(
    seed: int = 0,
    std_v: float = 10.0,
    std_w: float = 1.0,
    duration: float = RANDOM_DURATION,
    injection: str = "rate",
    dt_control: float = DT_CONTROL,
    dt_physics: float = DT_PHYSICS,
) -> ScenarioConfig:
    """Hover under gaussian speed disturbances resampled every control interval."""
    return ScenarioConfig(
        name=f"random-{seed}",
        mode="hover",
        duration=duration,
        dt_control=dt_control,
        dt_physics=dt_physics,
        disturbance=DisturbanceSpec(mode="gaussian", std_v=std_v, std_w=std_w, seed=seed, injection=injection),
    )


def track_scenario(
    seed: int = 0,
    position: Sequence[float] = TRACK_POSITION,
    yaw: float = TRACK_YAW,
    std_v: float = 1.0,
    std_w: float = 0.1,
    duration: float = TRACK_DURATION,
    injection: str = "rate",
    dt_control: float = DT_CONTROL,
    dt_physics: float = DT_PHYSICS,
) -> ScenarioConfig:
    """Fly from the origin to a position and yaw setpoint under light noise."""
    return ScenarioConfig(
        name=f"track-{seed}",
        mode="track",
        duration=duration,
        dt_control=dt_control,
        dt_physics=dt_physics,
        setpoint=Setpoint(position, yaw),
        disturbance=DisturbanceSpec(mode="gaussian", std_v=std_v, std_w=std_w, seed=seed, injection=injection),
    )


SCENARIOS: Dict[str, Callable[..., ScenarioConfig]] = {
    "perturb": perturb_scenario,
    "random": random_scenario,
    "track": track_scenario,
}


def _run_scaled(job) -> Tuple[float, ScenarioSummary]:
    factor, base, gain_matrix, tracker, scenario = job
    params = base.scaled(factor)
    log = run_scenario(scenario, gain_matrix, tracker, params)
    return factor, summarize(log)


def sweep_parameters(
    factors: Sequence[float],
    gain_matrix: Mat,
    base: Optional[VehicleParams] = None,
    tracker: Optional[TrackerConfig] = None,
    scenario: Optional[ScenarioConfig] = None,
    workers: int = 1,
) -> List[Tuple[float, ScenarioSummary]]:
    """Run one scenario (the perturbation pulse by default) on scaled vehicles.

    The same gain matrix is used for every factor. Results keep the order of
    factors.
    """
    base = base or VehicleParams()
    scenario = scenario or perturb_scenario()
    jobs = [(factor, base, gain_matrix, tracker, scenario) for factor in factors]

    logger.info(f"Sweeping {len(jobs)} scale factors with {workers} worker(s)")
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_scaled, jobs))
    return [_run_scaled(job) for job in jobs]
