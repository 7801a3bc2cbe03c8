"""Solvers that choose which agents the influencer links to.

All solvers maximize the influencer's social power sp_0 under a cardinality
budget K. Ties are broken toward the lowest agent id (lexicographically
smallest set for the exhaustive search); near-ties within 1e-12 resolve the
same way so symmetric instances stay deterministic across BLAS builds.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .chain import SampleBudget, build_chain, mc_estimate_sp0, single_agent_cost, sp0_scale
from .dynamics import InfluencerAction, StubbornnessProfile, influencer_mass
from .errors import (
    AlreadySelectedError,
    BudgetExceedsNError,
    CombinatorialExplosionError,
    CounterexampleFoundError,
    ParameterDomainError,
    TiedMaximumError,
    ZeroOmegaError,
)
from .graphs import StochasticGraph

# Absolute slack for "strictly better" comparisons in argmax/argmin loops.
TIE_TOL = 1e-12

EXHAUSTIVE_CAP = 5_000_000


@dataclass(frozen=True)
class SelectionReport:
    """Outcome of one solver run.

    sp0 is the exact social power of the returned set, or None for solvers
    that never evaluate it (random, gScore, smallTheta); marginal_gains is
    the per-round gain sequence where the solver produces one.
    """

    solver: str
    selected: tuple[int, ...]
    sp0: float | None
    marginal_gains: tuple[float, ...]
    evaluations: int


@dataclass(frozen=True)
class MonteCarlo:
    """Greedy evaluator that scores candidates with seeded random walks."""

    budget: SampleBudget
    seed: int


@dataclass(frozen=True)
class GScores:
    """Structural scores g_i = (1 - omega) W_ii + sum_{j != i} W_ji.

    delta_g is the gap between the two largest scores and theta_threshold
    = n / (delta_g + n) is the stubbornness level above which the top score
    identifies the K=1 optimum.
    """

    g: np.ndarray
    delta_g: float
    theta_threshold: float


@dataclass(frozen=True)
class PropertyReport:
    """Summary of a randomized property check that found no counterexample."""

    property_name: str
    trials: int
    worst_margin: float


def _check_common(graph: StochasticGraph, theta: StubbornnessProfile, omega: float, k: int):
    if theta.n != graph.n:
        raise ParameterDomainError(f"profile size {theta.n} != graph size {graph.n}")
    if not (0.0 <= omega < 1.0):
        raise ParameterDomainError("omega must lie in [0, 1)")
    if k < 1:
        raise ParameterDomainError("K must be at least 1")
    if k > graph.n:
        raise BudgetExceedsNError(k, graph.n)


def _candidate_masses(
    a_mat: np.ndarray,
    b: np.ndarray,
    c: np.ndarray,
    theta: np.ndarray,
    omega: float,
    mass: float,
) -> np.ndarray:
    """Influencer mass after adding each single agent to the current set.

    B grows by the rank-one term omega e_i A[i,:], so one inverse of the
    current B prices every candidate in O(n) by Sherman-Morrison. Entries for
    already-selected agents are meaningless; callers skip them.
    """
    g_inv = np.linalg.inv(b)
    f = a_mat @ g_inv
    y = g_inv.sum(axis=0)
    z = f @ c
    gamma = omega * (1.0 - theta)
    f_diag = np.diagonal(f)
    denom = 1.0 + omega * f_diag
    return mass + gamma * y - omega * y * (z + gamma * f_diag) / denom


def greedy_select(
    graph: StochasticGraph,
    theta: StubbornnessProfile,
    omega: float,
    k: int,
    evaluator: str | MonteCarlo = "exact",
    rank_one_updates: bool = True,
) -> SelectionReport:
    """K rounds of best-single-addition, the standard submodular greedy.

    Each round scores every unselected agent and adds the best one. The exact
    evaluator prices candidates by rank-one updates of the current system
    (set rank_one_updates=False to re-solve from scratch per candidate; the
    two agree to solver precision). A MonteCarlo evaluator scores candidates
    with seeded walk batches instead; the reported sp0 is then still the
    exact value of the final set, while marginal_gains keep the estimated
    gains the decisions were based on.
    """
    _check_common(graph, theta, omega, k)
    if isinstance(evaluator, MonteCarlo):
        return _greedy_monte_carlo(graph, theta, omega, k, evaluator)
    if evaluator != "exact":
        raise ParameterDomainError(f"unknown evaluator {evaluator!r}")

    n = graph.n
    tvec = theta.theta
    a_mat = (1.0 - tvec)[:, None] * graph.weights
    b = np.eye(n) - a_mat
    c = np.zeros(n)
    mass = 0.0
    chosen: list[int] = []
    taken = np.zeros(n, dtype=bool)
    gains: list[float] = []
    evaluations = 0
    for _ in range(k):
        if rank_one_updates:
            scores = _candidate_masses(a_mat, b, c, tvec, omega, mass)
        else:
            scores = np.full(n, -np.inf)
            for i in range(n):
                if taken[i]:
                    continue
                b_i = np.array(b)
                b_i[i, :] += omega * a_mat[i, :]
                c_i = np.array(c)
                c_i[i] = omega * (1.0 - tvec[i])
                scores[i] = np.linalg.solve(b_i, c_i).sum()
        best = -1
        best_val = -math.inf
        for i in range(n):
            if taken[i]:
                continue
            evaluations += 1
            if scores[i] > best_val + TIE_TOL:
                best = i
                best_val = float(scores[i])
        b[best, :] += omega * a_mat[best, :]
        c[best] = omega * (1.0 - tvec[best])
        new_mass = float(np.linalg.solve(b, c).sum())
        gains.append((new_mass - mass) / (n + 1))
        mass = new_mass
        taken[best] = True
        chosen.append(best)
    sp0 = (mass + 1.0) / (n + 1)
    return SelectionReport("greedy", tuple(chosen), sp0, tuple(gains), evaluations)


def _greedy_monte_carlo(
    graph: StochasticGraph,
    theta: StubbornnessProfile,
    omega: float,
    k: int,
    evaluator: MonteCarlo,
) -> SelectionReport:
    n = graph.n
    chosen: list[int] = []
    gains: list[float] = []
    evaluations = 0
    prev_sp = 1.0 / (n + 1)
    for rnd in range(k):
        best = -1
        best_est = -math.inf
        for i in range(n):
            if i in chosen:
                continue
            action = InfluencerAction(frozenset(chosen) | {i}, omega)
            walk_chain = build_chain(graph, theta, action)
            # one independent, replayable stream per (seed, round, candidate)
            sub = np.random.SeedSequence([evaluator.seed, rnd, i])
            est = mc_estimate_sp0(walk_chain, evaluator.budget, int(sub.generate_state(1)[0]))
            evaluations += 1
            if est > best_est + TIE_TOL:
                best = i
                best_est = est
        chosen.append(best)
        best_sp = sp0_scale(best_est, n)
        gains.append(best_sp - prev_sp)
        prev_sp = best_sp
    mass = influencer_mass(graph, theta, frozenset(chosen), omega)
    sp0 = (mass + 1.0) / (n + 1)
    return SelectionReport("greedy", tuple(chosen), sp0, tuple(gains), evaluations)


def exhaustive_select(
    graph: StochasticGraph,
    theta: StubbornnessProfile,
    omega: float,
    k: int,
    cap: int = EXHAUSTIVE_CAP,
) -> SelectionReport:
    """Brute-force maximizer over all size-K subsets, in lexicographic order.

    Monotonicity makes smaller sets dominated, so only |S| = K is scanned.
    """
    _check_common(graph, theta, omega, k)
    n = graph.n
    count = math.comb(n, k)
    if count > cap:
        raise CombinatorialExplosionError(count, cap)
    tvec = theta.theta
    a_mat = (1.0 - tvec)[:, None] * graph.weights
    b0 = np.eye(n) - a_mat
    gamma = omega * (1.0 - tvec)
    best_set: tuple[int, ...] | None = None
    best_mass = -math.inf
    for combo in itertools.combinations(range(n), k):
        idx = list(combo)
        b = np.array(b0)
        b[idx, :] += omega * a_mat[idx, :]
        c = np.zeros(n)
        c[idx] = gamma[idx]
        mass = float(np.linalg.solve(b, c).sum())
        if mass > best_mass + TIE_TOL:
            best_set = combo
            best_mass = mass
    assert best_set is not None
    sp0 = (best_mass + 1.0) / (n + 1)
    return SelectionReport("exhaustive", best_set, sp0, (), count)


def random_select(n: int, k: int, seed) -> SelectionReport:
    """Uniform random size-K baseline; sp0 is left to the caller to evaluate."""
    if k < 1:
        raise ParameterDomainError("K must be at least 1")
    if k > n:
        raise BudgetExceedsNError(k, n)
    rng = np.random.default_rng(seed)
    picks = rng.choice(n, size=k, replace=False)
    return SelectionReport("random", tuple(sorted(int(i) for i in picks)), None, (), 0)


def marginal_gain(
    graph: StochasticGraph,
    theta: StubbornnessProfile,
    omega: float,
    selected,
    i: int,
) -> float:
    """Increase of sp_0 from adding agent i to the current set."""
    current = frozenset(int(x) for x in selected)
    if i in current:
        raise AlreadySelectedError(i)
    base = influencer_mass(graph, theta, current, omega)
    grown = influencer_mass(graph, theta, current | {int(i)}, omega)
    return (grown - base) / (graph.n + 1)


def g_scores(graph: StochasticGraph, omega: float) -> GScores:
    """Column-sum scores that rank single agents in the high-stubbornness regime."""
    if not (0.0 <= omega < 1.0):
        raise ParameterDomainError("omega must lie in [0, 1)")
    w = graph.weights
    g = w.sum(axis=0) - omega * np.diagonal(w)
    if graph.n >= 2:
        top_two = np.partition(g, graph.n - 2)[-2:]
        delta = float(top_two[1] - top_two[0])
    else:
        delta = math.inf
    threshold = graph.n / (delta + graph.n) if math.isfinite(delta) else 0.0
    return GScores(g=g, delta_g=delta, theta_threshold=float(threshold))


def big_theta_select(graph: StochasticGraph, omega: float) -> SelectionReport:
    """K=1 pick by the largest g-score; exact optimum once every agent is
    stubborn beyond the reported threshold."""
    scores = g_scores(graph, omega)
    top = scores.g.max()
    tied = np.flatnonzero(scores.g == top)
    if tied.size > 1:
        raise TiedMaximumError([int(i) for i in tied])
    return SelectionReport("gScore", (int(tied[0]),), None, (), 0)


def small_theta_select(graph: StochasticGraph, omega: float) -> SelectionReport:
    """K=1 pick minimizing the hitting-time cost; exact optimum for weakly
    stubborn populations."""
    if omega <= 0.0:
        raise ZeroOmegaError("the hitting-time criterion needs omega > 0")
    if omega >= 1.0:
        raise ParameterDomainError("omega must lie in (0, 1)")
    best = -1
    best_cost = math.inf
    for i in range(graph.n):
        cost = single_agent_cost(graph, i, omega)
        if cost < best_cost - TIE_TOL:
            best = i
            best_cost = cost
    return SelectionReport("smallTheta", (best,), None, (), graph.n)


def _replay_payload(graph, theta, omega, small, big, i, seed, trial) -> dict:
    return {
        "S": sorted(int(x) for x in small),
        "T": sorted(int(x) for x in big),
        "i": None if i is None else int(i),
        "omega": float(omega),
        "theta": [float(t) for t in theta.theta],
        "weights": [[float(v) for v in row] for row in graph.weights],
        "seed": seed,
        "trial": trial,
    }


def verify_monotone(
    graph: StochasticGraph,
    theta: StubbornnessProfile,
    omega: float,
    trials: int,
    seed,
    slack: float = 1e-10,
) -> PropertyReport:
    """Sample (S, i) pairs and check sp_0 never drops when i joins S.

    Raises CounterexampleFoundError with a replayable payload on violation;
    a violation signals an implementation bug, not model behavior.
    """
    rng = np.random.default_rng(seed)
    n = graph.n
    worst = math.inf
    for trial in range(trials):
        size = int(rng.integers(0, n))
        s = frozenset(int(x) for x in rng.choice(n, size=size, replace=False))
        rest = sorted(set(range(n)) - s)
        i = rest[int(rng.integers(len(rest)))]
        base = influencer_mass(graph, theta, s, omega)
        grown = influencer_mass(graph, theta, s | {i}, omega)
        gain = (grown - base) / (n + 1)
        worst = min(worst, gain)
        if gain < -slack:
            raise CounterexampleFoundError(
                f"social power dropped by {-gain:g} when adding agent {i}",
                payload=_replay_payload(graph, theta, omega, s, s | {i}, i, seed, trial),
            )
    return PropertyReport("monotone", trials, worst)


def verify_submodular(
    graph: StochasticGraph,
    theta: StubbornnessProfile,
    omega: float,
    trials: int,
    seed,
    slack: float = 1e-10,
) -> PropertyReport:
    """Sample nested S ⊆ T and i outside T; check gains diminish with set growth."""
    rng = np.random.default_rng(seed)
    n = graph.n
    worst = math.inf
    for trial in range(trials):
        big_size = int(rng.integers(0, n))
        big = frozenset(int(x) for x in rng.choice(n, size=big_size, replace=False))
        small_size = int(rng.integers(0, big_size + 1))
        small = frozenset(
            int(x) for x in rng.choice(sorted(big), size=small_size, replace=False)
        )
        rest = sorted(set(range(n)) - big)
        i = rest[int(rng.integers(len(rest)))]
        gain_small = influencer_mass(graph, theta, small | {i}, omega) - influencer_mass(
            graph, theta, small, omega
        )
        gain_big = influencer_mass(graph, theta, big | {i}, omega) - influencer_mass(
            graph, theta, big, omega
        )
        margin = (gain_small - gain_big) / (n + 1)
        worst = min(worst, margin)
        if margin < -slack:
            raise CounterexampleFoundError(
                f"marginal gain of agent {i} grew with the set ({-margin:g} over slack)",
                payload=_replay_payload(graph, theta, omega, small, big, i, seed, trial),
            )
    return PropertyReport("submodular", trials, worst)


__all__ = [
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
]
