"""Social power maximization for an external influencer in FJ opinion dynamics.

An external, fully stubborn influencer (agent 0) adds links of weight omega
to at most K regular agents of a Friedkin-Johnsen network and wants to
maximize its social power: the average weight its opinion carries in the
group's final opinions. This package provides the model (graphs, dynamics,
the equivalent absorbing random-walk chain), the solvers (submodular greedy
with a certified guarantee, exhaustive search, Monte-Carlo evaluation with
explicit sample budgets, regime-specific K=1 rules, closed forms for rank-1
and ring topologies), and a seeded experiment harness with a CSV/PNG CLI.
"""

from __future__ import annotations

from . import errors
from .chain import (
    TRUNCATED,
    AugmentedChain,
    SampleBudget,
    WalkOutcome,
    WalkStats,
    absorbing_probabilities,
    build_chain,
    expected_absorption_time,
    hitting_times,
    mc_absorption_stats,
    mc_estimate_sp0,
    sample_budget,
    simulate_walk,
    single_agent_cost,
    single_agent_cost_direct,
    sp0_lower_floor,
    sp0_scale,
    truncated_sp0,
)
from .dynamics import (
    InfluencerAction,
    SteadyState,
    StubbornnessProfile,
    augmented_steady_state,
    check_convergence_condition,
    exit_weights,
    fj_simulate,
    influencer_mass,
    social_power,
    social_power_influencer,
    steady_state,
    transient_block,
)
from .experiments import (
    BASELINE_STREAM,
    GRAPH_STREAM,
    REPORT_HEADER,
    SOLVER_TAGS,
    THETA_STREAM,
    WALK_STREAM,
    BudgetResult,
    DispersionSweep,
    ExperimentConfig,
    McParams,
    OrbitRow,
    PhaseMap,
    ReportRow,
    ResolvedInstance,
    SpEvaluation,
    ValidationSummary,
    load_config,
    parse_config,
    parse_report,
    random_normalized_graph,
    render_csv,
    resolve_instance,
    run_budget,
    run_dispersion,
    run_optimize,
    run_phase_map,
    run_sp,
    run_validate,
    stream_rng,
    stream_seed,
    write_csv,
)
from .graphs import (
    STOCHASTIC_TOL,
    CirculantSpec,
    RingSpec,
    StochasticGraph,
    build_circulant,
    build_symmetric_ring,
    is_strongly_connected,
    load_edge_list,
    load_matrix,
    normalize_adjacency,
    save_matrix,
    validate_stochastic,
)
from .rank1 import (
    HyperbolicInstance,
    Rank1Model,
    hyperbolic_solve,
    rank1_parameters,
    rank1_sp0,
    rank1_special_solve,
)
from .rings import (
    MonotoneCheck,
    RingModel,
    circulant_inverse,
    circulant_monotone_product_check,
    circular_variance,
    orbit_representative,
    ring_distance,
    ring_solve_k2,
)
from .selection import (
    EXHAUSTIVE_CAP,
    TIE_TOL,
    GScores,
    MonteCarlo,
    PropertyReport,
    SelectionReport,
    big_theta_select,
    exhaustive_select,
    g_scores,
    greedy_select,
    marginal_gain,
    random_select,
    small_theta_select,
    verify_monotone,
    verify_submodular,
)
from .sweeps import DEFAULT_BATCH, sp0_all_subsets, sp0_of_subsets

__version__ = "1.0.0"

__all__ = [
    "errors",
    "__version__",
    # graphs
    "STOCHASTIC_TOL",
    "StochasticGraph",
    "CirculantSpec",
    "RingSpec",
    "validate_stochastic",
    "is_strongly_connected",
    "build_circulant",
    "build_symmetric_ring",
    "normalize_adjacency",
    "load_edge_list",
    "load_matrix",
    "save_matrix",
    # dynamics
    "StubbornnessProfile",
    "InfluencerAction",
    "SteadyState",
    "check_convergence_condition",
    "transient_block",
    "exit_weights",
    "fj_simulate",
    "steady_state",
    "augmented_steady_state",
    "social_power",
    "influencer_mass",
    "social_power_influencer",
    # chain
    "TRUNCATED",
    "AugmentedChain",
    "SampleBudget",
    "WalkOutcome",
    "WalkStats",
    "build_chain",
    "absorbing_probabilities",
    "expected_absorption_time",
    "hitting_times",
    "single_agent_cost",
    "single_agent_cost_direct",
    "simulate_walk",
    "mc_estimate_sp0",
    "sp0_scale",
    "mc_absorption_stats",
    "truncated_sp0",
    "sp0_lower_floor",
    "sample_budget",
    # selection
    "TIE_TOL",
    "EXHAUSTIVE_CAP",
    "SelectionReport",
    "MonteCarlo",
    "GScores",
    "PropertyReport",
    "greedy_select",
    "exhaustive_select",
    "random_select",
    "marginal_gain",
    "g_scores",
    "big_theta_select",
    "small_theta_select",
    "verify_monotone",
    "verify_submodular",
    # rank1
    "Rank1Model",
    "HyperbolicInstance",
    "rank1_sp0",
    "rank1_parameters",
    "hyperbolic_solve",
    "rank1_special_solve",
    # rings
    "RingModel",
    "MonotoneCheck",
    "circulant_inverse",
    "ring_solve_k2",
    "ring_distance",
    "circular_variance",
    "orbit_representative",
    "circulant_monotone_product_check",
    # sweeps
    "DEFAULT_BATCH",
    "sp0_of_subsets",
    "sp0_all_subsets",
    # experiments
    "GRAPH_STREAM",
    "THETA_STREAM",
    "WALK_STREAM",
    "BASELINE_STREAM",
    "SOLVER_TAGS",
    "REPORT_HEADER",
    "McParams",
    "ExperimentConfig",
    "ResolvedInstance",
    "ReportRow",
    "SpEvaluation",
    "PhaseMap",
    "OrbitRow",
    "DispersionSweep",
    "BudgetResult",
    "ValidationSummary",
    "stream_rng",
    "stream_seed",
    "parse_config",
    "load_config",
    "random_normalized_graph",
    "resolve_instance",
    "write_csv",
    "render_csv",
    "parse_report",
    "run_sp",
    "run_optimize",
    "run_phase_map",
    "run_dispersion",
    "run_budget",
    "run_validate",
]
