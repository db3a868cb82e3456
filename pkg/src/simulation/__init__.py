from src.simulation.campaigns import SCENARIOS, perturb_scenario, random_scenario, sweep_parameters, track_scenario
from src.simulation.disturbances import DisturbanceSampler, DisturbanceSpec, sample_disturbance
from src.simulation.log import LOG_COLUMNS, SimLog, read_log_csv
from src.simulation.scenario import ScenarioConfig, run_scenario
from src.simulation.summary import ScenarioSummary, summarize

__all__ = [
    "DisturbanceSampler",
    "DisturbanceSpec",
    "LOG_COLUMNS",
    "SCENARIOS",
    "ScenarioConfig",
    "ScenarioSummary",
    "SimLog",
    "perturb_scenario",
    "random_scenario",
    "read_log_csv",
    "run_scenario",
    "sample_disturbance",
    "summarize",
    "sweep_parameters",
    "track_scenario",
]
