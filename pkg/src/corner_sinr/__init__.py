"""Average and fine-grained reliability of V2V links around road intersections."""

__version__ = "0.1.0"

from .analytic import ReliabilityBreakdown, success_probability, success_probability_oracle
from .design import DesignPoint, design_sweep, designed, optimal_tx_prob, optimal_tx_prob_inf
from .montecarlo import MetaEstimate, fine_grained_sweep, meta_distribution
from .scene import (
    Link,
    Position,
    RadioParams,
    RoadNetwork,
    Scenario,
    Suburban,
    Urban,
    pathloss,
    worst_case_link,
    tx_grid,
    validate_scenario,
)
from .specfun import g_func, g_inf, h_func

__all__ = [
    "DesignPoint",
    "Link",
    "MetaEstimate",
    "Position",
    "RadioParams",
    "ReliabilityBreakdown",
    "RoadNetwork",
    "Scenario",
    "Suburban",
    "Urban",
    "design_sweep",
    "designed",
    "fine_grained_sweep",
    "g_func",
    "g_inf",
    "h_func",
    "meta_distribution",
    "optimal_tx_prob",
    "optimal_tx_prob_inf",
    "pathloss",
    "success_probability",
    "success_probability_oracle",
    "worst_case_link",
    "tx_grid",
    "validate_scenario",
]
