import logging
import time
from dataclasses import dataclass, replace
from typing import Callable, List, Optional, Sequence, Tuple

from src.config import LOG_LEVEL
from src.control.controller import TrackerConfig
from src.design.annealer import AnnealConfig, AnnealResult, anneal_multistart
from src.design.gains import PAPER_POLES, GainVector, assemble_gain_matrix
from src.design.poles import PoleSpec, closed_loop_poles, max_pole_deviation, pole_cost
from src.numerics.polynomial import ComplexRoot
from src.simulation.campaigns import perturb_scenario, sweep_parameters
from src.simulation.log import SimLog
from src.simulation.scenario import ScenarioConfig, run_scenario
from src.simulation.summary import ScenarioSummary, summarize
from src.vehicle.params import VehicleParams

# Largest pole mismatch accepted when checking the published gains
PAPER_POLE_TOLERANCE = 0.05


@dataclass
class DesignReport:
    result: AnnealResult
    poles: List[ComplexRoot]

    @property
    def succeeded(self) -> bool:
        return self.result.succeeded


@dataclass
class VerifyReport:
    gains: GainVector
    poles: List[ComplexRoot]
    cost: float
    reference_deviation: Optional[float] = None

    @property
    def in_band(self) -> bool:
        return self.cost == 0.0

    @property
    def passed(self) -> bool:
        if self.reference_deviation is not None and self.reference_deviation >= PAPER_POLE_TOLERANCE:
            return False
        return self.in_band


class QuadrotorControlPipeline:
    """Orchestrates gain design, verification and closed-loop simulation."""

    def __init__(self, log_level: Optional[str] = None,
                 progress_callback: Optional[Callable[[str, float], None]] = None):
        """Initialize the pipeline.

        Args:
            log_level: Logging level name. If None, uses the configured level.
            progress_callback: Optional callback function to report progress (message, percentage)
        """
        logging.basicConfig(
            level=(log_level or LOG_LEVEL).upper(),
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        self.logger = logging.getLogger(__name__)
        self.progress_callback = progress_callback

    def _report_progress(self, message: str, percentage: float) -> None:
        """Report progress through callback if available and log it."""
        self.logger.info(f"Progress ({percentage:.0f}%): {message}")
        if self.progress_callback:
            self.progress_callback(message, percentage)

    def design(self, config: AnnealConfig, spec: Optional[PoleSpec] = None,
               restarts: int = 1, workers: int = 1) -> DesignReport:
        """Search for in-band gains over seeds config.seed .. config.seed + restarts - 1."""
        spec = spec or PoleSpec()
        if restarts < 1:
            raise ValueError("restarts must be at least 1")

        start_time = time.time()
        seeds = list(range(config.seed, config.seed + restarts))
        self._report_progress(f"Annealing gains for band {spec} over {len(seeds)} seed(s)...", 10)

        result = anneal_multistart(config, seeds, spec, workers=workers)
        poles = closed_loop_poles(result.gains)

        elapsed_time = time.time() - start_time
        self._report_progress(
            f"Best seed {result.seed}: cost {result.cost:.6g} after {result.iterations} proposals "
            f"in {elapsed_time:.1f} seconds",
            100
        )
        return DesignReport(result=result, poles=poles)

    def verify(self, gains: GainVector, spec: Optional[PoleSpec] = None,
               reference: Optional[Sequence[ComplexRoot]] = None) -> VerifyReport:
        """Closed-loop poles of gains, their band cost and optional reference mismatch."""
        spec = spec or PoleSpec()
        poles = closed_loop_poles(gains)
        report = VerifyReport(gains=gains, poles=poles, cost=pole_cost(poles, spec))
        if reference is not None:
            report.reference_deviation = max_pole_deviation(poles, reference)
        self.logger.info(f"Verified gains: cost {report.cost:.6g}, in band {spec}: {report.in_band}")
        return report

    def verify_paper(self, gains: GainVector, spec: Optional[PoleSpec] = None) -> VerifyReport:
        return self.verify(gains, spec, PAPER_POLES)

    def simulate(
        self,
        scenario: ScenarioConfig,
        gains: GainVector,
        params: Optional[VehicleParams] = None,
        tracker: Optional[TrackerConfig] = None,
        csv_path: Optional[str] = None,
        summary_path: Optional[str] = None,
    ) -> Tuple[SimLog, ScenarioSummary]:
        """Run one scenario and optionally write its CSV log and summary."""
        params = params or VehicleParams()
        start_time = time.time()

        self._report_progress(f"Simulating {scenario.name} for {scenario.duration:g} s...", 10)
        log = run_scenario(scenario, assemble_gain_matrix(gains), tracker, params)
        summary = summarize(log)
        self._report_progress(f"Simulated {len(log)} control intervals", 80)

        if csv_path:
            log.write_csv(csv_path)
            self.logger.info(f"Wrote log to {csv_path}")
        if summary_path:
            summary.write(summary_path)
            self.logger.info(f"Wrote summary to {summary_path}")

        elapsed_time = time.time() - start_time
        self._report_progress(f"Finished {scenario.name} in {elapsed_time:.1f} seconds", 100)
        return log, summary

    def sweep(
        self,
        factors: Sequence[float],
        gains: GainVector,
        params: Optional[VehicleParams] = None,
        tracker: Optional[TrackerConfig] = None,
        scenario: Optional[ScenarioConfig] = None,
        workers: int = 1,
    ) -> List[Tuple[float, ScenarioSummary]]:
        """Perturbation response of geometrically scaled vehicles under one gain set."""
        scenario = scenario or perturb_scenario()
        self._report_progress(f"Sweeping {len(factors)} vehicle scale factor(s)...", 10)
        results = sweep_parameters(
            factors, assemble_gain_matrix(gains), params, tracker,
            replace(scenario, name=f"{scenario.name}-sweep"), workers
        )
        self._report_progress("Sweep complete", 100)
        return results
