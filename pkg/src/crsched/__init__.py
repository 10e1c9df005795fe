"""Scheduling workbench for a centralized cognitive-radio cell.

Computes interference-safe per-user rates from cell geometry and licensee
activity, solves four period-scheduling objectives exactly (and greedily for
the fair ones), and drives Monte-Carlo experiments with confidence-sized
replication.
"""

from .params import (
    CellState,
    ConfigError,
    InfeasibleGeometry,
    NonPositiveParam,
    ParamError,
    PU_OFF,
    Schedule,
    ScheduleInvariantError,
    SimParams,
    WeightSumError,
    check_schedule,
    load_scenario,
    validate_params,
)
from .channel import DegenerateGeometry, RateMatrix, compute_rate_matrix, rate
from .env import active_pu_set, init_cell_state, step_mobility, step_pu_occupancy
from .fairness import FairnessState, effective_objective_offsets, period_objective, update
from .heuristic import HeuristicMode, greedy_fair_schedule
from .exact import (
    Infeasible,
    NoFeasiblePhi,
    SolveResult,
    TooLarge,
    brute_force,
    solve_exact,
    solve_maxmin,
    solve_phi_search,
    solve_propfair,
    solve_throughput_max,
    solve_weighted_maxmin,
)
from .metrics import MetricsRecord, jain_index, normal_quantile, required_sample_size, summarize
from .harness import ExperimentPlan, compare_report, load_plan, run

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
