"""Intermediate-sense pseudocontraction checks for fixed-point and cyclic maps.

The package evaluates the parameterised contractive inequalities, their slacks
and contraction constants, classifies parameter schedules, and runs Picard
orbits of piecewise-affine maps to fixed points or best proximity points.
"""

from ._kernels import BACKEND
from .analysis import (
    Branch,
    ContractionReport,
    InequalityVariant,
    ParamPoint,
    ParamSchedule,
    Region,
    Verdict,
    bound_check,
    brute_force_mu,
    classify_schedule,
    definition_checks,
    empirical_mu,
    inequality_residual,
    k_a,
    k_b,
    limit_condition,
    region_xi_zero,
    xi_slack,
)
from .cyclic import (
    CyclicPair,
    ProximityResult,
    best_proximity_run,
    cyclic_k,
    gamma_admissible,
    gamma_floor,
    gamma_from_contraction,
    multi_start_agreement,
    proximity_distance_trace,
    verify_cyclicity,
)
from .iteration import (
    IterationTrace,
    MapDef,
    Piece,
    detect_fixed_point,
    orbit,
    pair_trace,
    squared_gap_deltas,
    tail_residuals,
)
from .metric import (
    EUCLIDEAN,
    Ball,
    Box,
    HalfspaceIntersection,
    MetricDef,
    Segment,
    distance,
    envelope_residuals,
    interval,
    project,
    set_distance,
)
from .scenarios import Scenario, builtin_scenarios, get_scenario, load_scenario

__version__ = "0.1.0"
