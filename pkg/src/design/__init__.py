from src.design.annealer import AnnealConfig, AnnealResult, GainAnnealer, anneal_gains, anneal_multistart
from src.design.gains import PAPER_GAINS, PAPER_POLES, GainVector, assemble_gain_matrix
from src.design.poles import (
    PoleSpec,
    SecondOrderMetrics,
    closed_loop_factors,
    closed_loop_poles,
    controllability_matrix,
    design_criteria_met,
    max_pole_deviation,
    open_loop_characteristic,
    pole_cost,
    pole_metrics,
    second_order_metrics,
)

__all__ = [
    "AnnealConfig",
    "AnnealResult",
    "GainAnnealer",
    "GainVector",
    "PAPER_GAINS",
    "PAPER_POLES",
    "PoleSpec",
    "SecondOrderMetrics",
    "anneal_gains",
    "anneal_multistart",
    "assemble_gain_matrix",
    "closed_loop_factors",
    "closed_loop_poles",
    "controllability_matrix",
    "design_criteria_met",
    "max_pole_deviation",
    "open_loop_characteristic",
    "pole_cost",
    "pole_metrics",
    "second_order_metrics",
]
