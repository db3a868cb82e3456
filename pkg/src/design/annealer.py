import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.design.gains import GAIN_COUNT, GainVector
from src.design.poles import DEFAULT_GRAVITY, PoleSpec, closed_loop_factors, closed_loop_poles, pole_cost
from src.numerics.polynomial import poly_roots
from src.utils.errors import ParameterError


# Search box per gain; g7 and g8 live in the negative orthant the pitch
# quartic needs for positive low-order coefficients.
DEFAULT_GAIN_BOUNDS: Tuple[Tuple[float, float], ...] = (
    (1.0, 100.0), (100.0, 2000.0),  # g1, g2
    (100.0, 2000.0), (100.0, 2000.0), (1.0, 100.0), (100.0, 2000.0),  # g3..g6
    (-2000.0, -1.0), (-2000.0, -1.0), (1.0, 100.0), (100.0, 2000.0),  # g7..g10
    (1.0, 100.0), (100.0, 2000.0),  # g11, g12
)

# Index into closed_loop_factors (altitude, yaw, roll, pitch) for each gain.
FACTOR_OF_GAIN = (0, 0, 2, 2, 2, 2, 3, 3, 3, 3, 1, 1)


@dataclass(frozen=True)
class AnnealConfig:
    """Cooling schedule and search box for the gain search.

    Attributes:
        seed: RNG seed; the search is fully determined by it.
        initial_temp: Starting temperature.
        cooling_ratio: Geometric cooling factor applied after each temperature stage.
        steps_per_temp: Proposals evaluated per temperature stage.
        min_temp: The search stops once the temperature falls to this value.
        step_scale: Proposal standard deviation as a fraction of the gain's
            bound width at the initial temperature.
        gain_bounds: (low, high) per gain, g1 first.
    """

    seed: int
    initial_temp: float = 10.0
    cooling_ratio: float = 0.95
    steps_per_temp: int = 200
    min_temp: float = 1e-4
    step_scale: float = 0.1
    gain_bounds: Tuple[Tuple[float, float], ...] = field(default=DEFAULT_GAIN_BOUNDS)

    def __post_init__(self):
        if not (self.initial_temp > self.min_temp > 0):
            raise ParameterError("Temperatures must satisfy initial_temp > min_temp > 0")
        if not (0 < self.cooling_ratio < 1):
            raise ParameterError("cooling_ratio must lie in (0, 1)")
        if self.steps_per_temp < 1:
            raise ParameterError("steps_per_temp must be at least 1")
        if self.step_scale <= 0:
            raise ParameterError("step_scale must be positive")
        if len(self.gain_bounds) != GAIN_COUNT or any(low >= high for low, high in self.gain_bounds):
            raise ParameterError(f"gain_bounds needs {GAIN_COUNT} intervals with low < high")


@dataclass(frozen=True)
class AnnealResult:
    gains: GainVector
    cost: float
    iterations: int
    seed: int

    @property
    def succeeded(self) -> bool:
        return self.cost == 0.0


class GainAnnealer:
    """Simulated annealing over the twelve structured gains.

    Cost is the pole-band violation of the closed loop. A proposal moves one
    uniformly chosen gain, so only the factor owning that gain is re-solved.
    """

    def __init__(self, config: AnnealConfig, spec: Optional[PoleSpec] = None, grav: float = DEFAULT_GRAVITY):
        self.config = config
        self.spec = spec or PoleSpec()
        self.grav = grav
        self.logger = logging.getLogger(__name__)

        bounds = np.array(config.gain_bounds, dtype=float)
        self.low = bounds[:, 0]
        self.high = bounds[:, 1]
        self.width = self.high - self.low

    def _factor_costs(self, values: np.ndarray) -> List[float]:
        factors = closed_loop_factors(GainVector(tuple(values)), self.grav)
        return [pole_cost(poly_roots(factor), self.spec) for factor in factors]

    def _factor_cost(self, values: np.ndarray, factor_index: int) -> float:
        factor = closed_loop_factors(GainVector(tuple(values)), self.grav)[factor_index]
        return pole_cost(poly_roots(factor), self.spec)

    def run(self) -> AnnealResult:
        cfg = self.config
        rng = np.random.default_rng(cfg.seed)

        current = rng.uniform(self.low, self.high)
        current_costs = self._factor_costs(current)
        current_cost = sum(current_costs)
        best, best_cost = current.copy(), current_cost

        temperature = cfg.initial_temp
        iterations = 0
        stage = 0
        while best_cost > 0.0 and temperature > cfg.min_temp:
            spread = cfg.step_scale * (temperature / cfg.initial_temp)
            for _ in range(cfg.steps_per_temp):
                index = int(rng.integers(GAIN_COUNT))
                candidate = current.copy()
                candidate[index] = np.clip(
                    candidate[index] + rng.normal(0.0, spread * self.width[index]),
                    self.low[index],
                    self.high[index],
                )

                factor_index = FACTOR_OF_GAIN[index]
                candidate_costs = list(current_costs)
                candidate_costs[factor_index] = self._factor_cost(candidate, factor_index)
                candidate_cost = sum(candidate_costs)
                iterations += 1

                if candidate_cost < best_cost:
                    best, best_cost = candidate.copy(), candidate_cost

                delta = candidate_cost - current_cost
                if delta <= 0 or rng.random() < math.exp(-delta / temperature):
                    current, current_costs, current_cost = candidate, candidate_costs, candidate_cost

                if best_cost == 0.0:
                    break

            stage += 1
            if stage % 20 == 0:
                self.logger.debug(f"Seed {cfg.seed}: T={temperature:.3g}, current={current_cost:.4g}, best={best_cost:.4g}")
            temperature *= cfg.cooling_ratio

        gains = GainVector(tuple(best))
        final_cost = pole_cost(closed_loop_poles(gains, self.grav), self.spec)
        if final_cost > 0.0:
            self.logger.warning(f"Seed {cfg.seed}: search ended with cost {final_cost:.6g} after {iterations} proposals")
        else:
            self.logger.info(f"Seed {cfg.seed}: found in-band gains after {iterations} proposals")
        return AnnealResult(gains=gains, cost=final_cost, iterations=iterations, seed=cfg.seed)


def anneal_gains(cfg: AnnealConfig, spec: Optional[PoleSpec] = None,
                 grav: float = DEFAULT_GRAVITY) -> Tuple[GainVector, float, int]:
    """Run one seeded search. Returns (best gains, final cost, proposals evaluated)."""
    result = GainAnnealer(cfg, spec, grav).run()
    return result.gains, result.cost, result.iterations


def _run_seed(args) -> AnnealResult:
    cfg, spec, grav = args
    return GainAnnealer(cfg, spec, grav).run()


def anneal_multistart(cfg: AnnealConfig, seeds: Sequence[int], spec: Optional[PoleSpec] = None,
                      grav: float = DEFAULT_GRAVITY, workers: int = 1) -> AnnealResult:
    """Independent searches over several seeds; lowest cost wins, earliest seed on ties."""
    if not seeds:
        raise ParameterError("At least one seed is required")

    jobs = [(replace(cfg, seed=seed), spec, grav) for seed in seeds]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_seed, jobs))
    else:
        results = [_run_seed(job) for job in jobs]

    return min(results, key=lambda result: result.cost)
