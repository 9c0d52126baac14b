"""Equilibrium solver and convergence verifier for a misère take-away
game whose moves are lotteries over {1, ..., m}."""

from .analysis import (
    BoundReport,
    DeviationSeries,
    DropConstants,
    check_corridor,
    check_drop_down,
    check_envelope,
    check_km_bound,
    check_monotonicity,
    check_no_long_winning,
    check_plus_minus,
    deviation_series,
    drop_constants,
)
from .engine import (
    TIE_HIGHEST,
    TIE_LOWEST,
    TIE_RANDOM,
    ValueTable,
    best_response,
    expected_win_prob,
    solve,
)
from .lotteries import (
    ConditionReport,
    GameSpec,
    Lottery,
    LotterySet,
    SetKind,
    candidate_set,
    compute_conditions,
    finite_set,
    polytope_vertices,
    truncated_simplex,
    validate_lottery,
)
from .oracles import (
    SimConfig,
    SimResult,
    brute_force_values,
    estimate_win_prob,
    one_shot_deviation_gap,
    simulate_game,
)

__all__ = [
    "BoundReport",
    "ConditionReport",
    "DeviationSeries",
    "DropConstants",
    "GameSpec",
    "Lottery",
    "LotterySet",
    "SetKind",
    "SimConfig",
    "SimResult",
    "TIE_HIGHEST",
    "TIE_LOWEST",
    "TIE_RANDOM",
    "ValueTable",
    "best_response",
    "brute_force_values",
    "candidate_set",
    "check_corridor",
    "check_drop_down",
    "check_envelope",
    "check_km_bound",
    "check_monotonicity",
    "check_no_long_winning",
    "check_plus_minus",
    "compute_conditions",
    "deviation_series",
    "drop_constants",
    "estimate_win_prob",
    "expected_win_prob",
    "finite_set",
    "one_shot_deviation_gap",
    "polytope_vertices",
    "simulate_game",
    "solve",
    "truncated_simplex",
    "validate_lottery",
]
