"""Sensor cover scheduling for maximum network lifetime."""

from .gk import GkConfig, epsilon_for_w, min_cost_cover, run_gk, w_for_epsilon
from .greedy import (
    Generator,
    GreedyConfig,
    SolveResult,
    bgop_generate_cover,
    cardei_generate_cover,
    first_fit_generate_cover,
    hef_generate_cover,
    run_greedy,
)
from .instance_gen import GenConfig, GenerationFailed, SplitMix64, generate
from .model import (
    CoverageMatrix,
    InfeasibleInstance,
    Instance,
    Schedule,
    SensorCover,
    ValidationReport,
    build_coverage_matrix,
    critical_target,
    is_cover,
    is_minimal,
    max_lifetime,
    minimalize_cover,
    total_lifetime,
    upper_bound,
    validate_schedule,
)
from .oracle import CoverSet, LpSolution, TooManyCovers, enumerate_minimal_covers, exact_optimum, lp_optimal_lifetime

__version__ = "0.1.0"
