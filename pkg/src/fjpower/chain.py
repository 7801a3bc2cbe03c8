"""Absorbing-chain view of the influenced dynamics.

The chain has 2n+1 states: state 0 merges the influencer's opinion, states
1..n are the (transient) agents, and state n+i is the absorbing state holding
agent i's initial opinion. A transient row moves to 0 with weight
omega (1 - theta_i) (if i is selected), to other transient states by H(S),
and to its own absorbing state with weight theta_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .dynamics import InfluencerAction, StubbornnessProfile, exit_weights, transient_block
from .errors import (
    HeterogeneousStubbornnessError,
    ParameterDomainError,
    SingularSystemError,
    ZeroOmegaError,
)
from .graphs import StochasticGraph, is_strongly_connected

TRUNCATED = "truncated"


@dataclass(frozen=True)
class AugmentedChain:
    """Transition structure of the absorbing chain for one action."""

    n_transient: int
    transient_block: np.ndarray  # H(S), n x n
    absorb_column0: np.ndarray  # omega (1 - theta_i) on selected rows, else 0
    absorb_diag: np.ndarray     # theta

    @property
    def n(self) -> int:
        return self.n_transient

    @property
    def transition(self) -> np.ndarray:
        """Full (2n+1) x (2n+1) row-stochastic matrix, built on demand."""
        n = self.n_transient
        t = np.zeros((2 * n + 1, 2 * n + 1))
        t[0, 0] = 1.0
        t[1:n + 1, 0] = self.absorb_column0
        t[1:n + 1, 1:n + 1] = self.transient_block
        t[1:n + 1, n + 1:] = np.diag(self.absorb_diag)
        t[n + 1:, n + 1:] = np.eye(n)
        return t

    def continuation_bound(self) -> float:
        """Max per-step survival probability, an upper bound on rho(H)."""
        return float(self.transient_block.sum(axis=1).max())

    def spectral_bound(self, iters: int = 64) -> float:
        """Upper bound on rho(H) via the row-sum norm of H^k (H is nonnegative)."""
        v = np.ones(self.n_transient)
        log_norm = 0.0
        for _ in range(iters):
            v = self.transient_block @ v
            top = float(v.max())
            if top == 0.0:
                return 0.0
            log_norm += math.log(top)
            v /= top
        return math.exp(log_norm / iters)


@dataclass(frozen=True)
class SampleBudget:
    """Walk count r and truncation depth ell for the sampling estimator."""

    r: int
    ell: int
    epsilon: float
    delta: float
    sigma: float
    theta_min: float
    sp_lower: float

    def __post_init__(self):
        if self.r < 1 or self.ell < 1:
            raise ParameterDomainError("budget requires r >= 1 and ell >= 1")
        for name in ("epsilon", "delta", "sigma", "theta_min"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise ParameterDomainError(f"{name} must lie in (0, 1), got {value!r}")
        if self.sp_lower <= 0.0:
            raise ParameterDomainError("sp_lower must be positive")


@dataclass(frozen=True)
class WalkOutcome:
    """Result of one simulated walk."""

    absorbed_by_zero: bool
    length: int
    terminal_state: int | str


def build_chain(
    graph: StochasticGraph, theta: StubbornnessProfile, action: InfluencerAction
) -> AugmentedChain:
    """Assemble the chain blocks for (graph, theta, S, omega)."""
    if theta.n != graph.n:
        raise ParameterDomainError(f"profile size {theta.n} != graph size {graph.n}")
    if action.selected and max(action.selected) >= graph.n:
        raise ParameterDomainError("selected agent id outside the graph")
    return AugmentedChain(
        n_transient=graph.n,
        transient_block=transient_block(graph, theta, action.selected, action.omega),
        absorb_column0=exit_weights(theta, action.selected, action.omega),
        absorb_diag=np.array(theta.theta, dtype=float, copy=True),
    )


def absorbing_probabilities(chain: AugmentedChain, initial=None) -> np.ndarray:
    """Absorption probabilities (pi_0, ..., pi_n) for a start over {0} and agents.

    `initial` is a distribution over the n+1 start states (state 0 first);
    the default is uniform, under which pi equals the social-power vector.
    """
    n = chain.n_transient
    if initial is None:
        q = np.full(n + 1, 1.0 / (n + 1))
    else:
        q = np.asarray(initial, dtype=float).reshape(-1)
        if q.size != n + 1:
            raise ParameterDomainError(f"initial distribution needs {n + 1} entries")
        if np.any(q < 0) or abs(q.sum() - 1.0) > 1e-9:
            raise ParameterDomainError("initial distribution must be a probability vector")
    b = np.eye(n) - chain.transient_block
    try:
        z = np.linalg.solve(b.T, q[1:])
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc
    pi = np.empty(n + 1)
    pi[0] = q[0] + z @ chain.absorb_column0
    pi[1:] = z * chain.absorb_diag
    if abs(pi.sum() - 1.0) > 1e-8:
        raise SingularSystemError(f"absorption probabilities sum to {pi.sum()!r}")
    return pi


def expected_absorption_time(
    graph: StochasticGraph, theta: StubbornnessProfile, action: InfluencerAction
) -> float:
    """Mean transitions to absorption from a uniform start over the agents.

    Requires a uniform stubbornness level in (0, 1); equals
    (1/n) 1' (I - H(S))^{-1} 1.
    """
    if not theta.is_uniform():
        raise HeterogeneousStubbornnessError("expected absorption time needs uniform theta")
    level = theta.uniform_value()
    if not (0.0 < level < 1.0):
        raise ParameterDomainError("uniform theta must lie in (0, 1)")
    chain = build_chain(graph, theta, action)
    b = np.eye(graph.n) - chain.transient_block
    visits = np.linalg.solve(b, np.ones(graph.n))
    return float(visits.mean())


def hitting_times(graph: StochasticGraph, target: int) -> tuple[np.ndarray, float]:
    """Expected first-hitting times to `target` for the plain walk on W.

    Returns (times, return_time): times[j] is the expected hitting time from
    j for j != target, and the target's own slot holds the return time so
    that times.sum() - return_time is the sum over the other agents.
    """
    n = graph.n
    if not (0 <= target < n):
        raise ParameterDomainError(f"target {target} outside the graph")
    if not is_strongly_connected(graph):
        raise SingularSystemError("hitting times need a strongly connected graph")
    times = np.zeros(n)
    if n > 1:
        off = np.flatnonzero(np.arange(n) != target)
        sub = np.eye(n - 1) - graph.weights[np.ix_(off, off)]
        try:
            h = np.linalg.solve(sub, np.ones(n - 1))
        except np.linalg.LinAlgError as exc:
            raise SingularSystemError(str(exc)) from exc
        times[off] = h
        return_time = 1.0 + float(graph.weights[target, off] @ h)
    else:
        return_time = 1.0
    times[target] = return_time
    return times, return_time


def single_agent_cost(graph: StochasticGraph, i: int, omega: float) -> float:
    """Hitting-time form of the single-agent absorption cost.

    (1/n) sum_{j != i} E[tau_ji] + ((1 - omega)/omega) E[tau_ii] + 1.
    """
    if omega <= 0.0:
        raise ZeroOmegaError("single-agent cost needs omega > 0")
    if omega >= 1.0:
        raise ParameterDomainError("omega must lie in (0, 1)")
    times, return_time = hitting_times(graph, i)
    others = (times.sum() - return_time) / graph.n
    return float(others + (1.0 - omega) / omega * return_time + 1.0)


def single_agent_cost_direct(graph: StochasticGraph, i: int, omega: float) -> float:
    """Matrix form of the same cost: (1/n) 1' (I - (I - omega e_i e_i') W)^{-1} 1."""
    if omega <= 0.0:
        raise ZeroOmegaError("single-agent cost needs omega > 0")
    if omega >= 1.0:
        raise ParameterDomainError("omega must lie in (0, 1)")
    w = np.array(graph.weights, copy=True)
    w[i, :] *= 1.0 - omega
    try:
        y = np.linalg.solve(np.eye(graph.n) - w, np.ones(graph.n))
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc
    return float(y.mean())


# --- seeded walk machinery -------------------------------------------------
#
# Per-walk randomness is a pure function of (master seed, walk index, step),
# realized with a splitmix64-style integer mixer on uint64 lanes. Results are
# therefore identical no matter how walks are batched or scheduled.

_MIX_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX_M1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_M2 = np.uint64(0x94D049BB133111EB)


def _mix64(x: np.ndarray) -> np.ndarray:
    z = (x + _MIX_GAMMA).astype(np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _MIX_M1
    z = (z ^ (z >> np.uint64(27))) * _MIX_M2
    return z ^ (z >> np.uint64(31))


def _walk_keys(seed: int, start: int, stop: int) -> np.ndarray:
    s = np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF)
    idx = np.arange(start, stop, dtype=np.uint64)
    return _mix64(s + _mix64(idx))


def _uniforms(keys: np.ndarray, step: int) -> np.ndarray:
    # scalar offset computed in Python ints to wrap mod 2^64 without warnings
    offset = np.uint64((int(step) * 0xD1B54A32D192ED03) & 0xFFFFFFFFFFFFFFFF)
    bits = _mix64(keys + offset)
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


@dataclass(frozen=True)
class WalkStats:
    """Aggregate counts from a batch of seeded walks."""

    walks: int
    absorbed_zero: int
    absorbed_self: int
    truncated: int
    mean_time: float
    std_time: float


def _run_walks(chain: AugmentedChain, walks: int, max_steps: int, seed: int) -> WalkStats:
    n = chain.n_transient
    rowcum = np.cumsum(
        np.hstack(
            [chain.absorb_column0[:, None], chain.transient_block, chain.absorb_diag[:, None]]
        ),
        axis=1,
    )
    absorbed_zero = absorbed_self = truncated = 0
    time_sum = 0.0
    time_sq = 0.0
    chunk = max(1024, 4_000_000 // (n + 2))
    for lo in range(0, walks, chunk):
        hi = min(walks, lo + chunk)
        keys = _walk_keys(seed, lo, hi)
        # step 0 picks the uniformly random start agent
        state = np.minimum((_uniforms(keys, 0) * n).astype(np.int64), n - 1)
        alive = np.ones(hi - lo, dtype=bool)
        for step in range(1, max_steps + 1):
            live = np.flatnonzero(alive)
            if live.size == 0:
                break
            u = _uniforms(keys[live], step)
            cum = rowcum[state[live]]
            idx = np.minimum((u[:, None] >= cum).sum(axis=1), n + 1)
            hit_zero = idx == 0
            hit_self = idx == n + 1
            done = hit_zero | hit_self
            absorbed_zero += int(hit_zero.sum())
            absorbed_self += int(hit_self.sum())
            n_done = int(done.sum())
            time_sum += step * n_done
            time_sq += step * step * n_done
            alive[live[done]] = False
            cont = ~done
            state[live[cont]] = idx[cont] - 1
        truncated += int(alive.sum())
    finished = absorbed_zero + absorbed_self
    if finished > 0:
        mean = time_sum / finished
        var = max(0.0, (time_sq - finished * mean * mean) / max(1, finished - 1))
        std = math.sqrt(var)
    else:
        mean = math.nan
        std = math.nan
    return WalkStats(
        walks=walks,
        absorbed_zero=absorbed_zero,
        absorbed_self=absorbed_self,
        truncated=truncated,
        mean_time=mean,
        std_time=std,
    )


def simulate_walk(chain: AugmentedChain, max_len: int, rng: np.random.Generator) -> WalkOutcome:
    """Run one walk from a uniformly random agent for at most max_len steps.

    Terminal state ids follow the transition-matrix layout (0 = influencer,
    n+i = agent i's own absorbing state); a walk still alive after max_len
    steps reports the sentinel "truncated".
    """
    if max_len < 1:
        raise ParameterDomainError("max_len must be at least 1")
    n = chain.n_transient
    state = int(rng.integers(n))
    for step in range(1, max_len + 1):
        u = float(rng.random())
        exit0 = chain.absorb_column0[state]
        if u < exit0:
            return WalkOutcome(True, step, 0)
        u -= exit0
        row = chain.transient_block[state]
        acc = 0.0
        nxt = -1
        for j in range(n):
            acc += row[j]
            if u < acc:
                nxt = j
                break
        if nxt < 0:
            return WalkOutcome(False, step, n + 1 + state)
        state = nxt
    return WalkOutcome(False, max_len, TRUNCATED)


def mc_estimate_sp0(chain: AugmentedChain, budget: SampleBudget, seed: int) -> float:
    """Fraction of budgeted walks absorbed by state 0.

    This estimates the 1/n-scaled influencer mass; (n * est + 1)/(n + 1)
    converts to the social-power scale. Walks may take up to ell + 1
    transitions so the estimate is unbiased for truncated_sp0(chain, ell):
    the depth-ell partial series covers absorption at transitions 1..ell+1.
    """
    stats = _run_walks(chain, budget.r, budget.ell + 1, seed)
    return stats.absorbed_zero / budget.r


def sp0_scale(estimate: float, n: int) -> float:
    """Convert a 1/n-scaled mass estimate to the (n+1)-agent power scale."""
    return (n * estimate + 1.0) / (n + 1)


def mc_absorption_stats(
    chain: AugmentedChain, walks: int, seed: int, max_steps: int | None = None
) -> WalkStats:
    """Seeded batch of walks run (almost surely) to absorption.

    The default step cap makes the per-walk survival probability below 1e-13,
    using the row-sum bound on the transient block.
    """
    if max_steps is None:
        bound = chain.continuation_bound()
        if bound >= 1.0:
            raise ParameterDomainError(
                "chain may never absorb from some state; pass max_steps explicitly"
            )
        max_steps = 1 if bound == 0.0 else int(math.ceil(math.log(1e-13) / math.log(bound)))
    return _run_walks(chain, walks, max_steps, seed)


def truncated_sp0(chain: AugmentedChain, ell: int) -> float:
    """Depth-ell partial sum of the influencer-mass series, 1/n scaled."""
    if ell < 0:
        raise ParameterDomainError("ell must be nonnegative")
    term = np.array(chain.absorb_column0, copy=True)
    total = term.sum()
    for _ in range(ell):
        term = chain.transient_block @ term
        total += term.sum()
    return float(total / chain.n_transient)


def sp0_lower_floor(theta: StubbornnessProfile, omega: float) -> float:
    """Conservative positive lower bound omega (1 - theta_max) / n.

    theta_max is the largest stubbornness strictly below 1, so the bound
    stays positive whenever someone is persuadable at all.
    """
    if omega <= 0.0:
        raise ParameterDomainError("the lower bound needs omega > 0")
    return omega * (1.0 - theta.max_below_one()) / theta.n


def sample_budget(
    epsilon: float,
    delta: float,
    sigma: float,
    theta_min: float,
    omega: float,
    sp_ell_lower: float,
) -> SampleBudget:
    """Walk count and depth meeting the requested error/confidence targets.

    r = ceil(3 log(2/delta) / (sigma^2 eps^2 spL)) and
    ell = ceil((log(theta (1-sigma) eps spL) - log omega) / log(1-theta) - 2),
    clamped to ell >= 1. spL must lower-bound the depth-ell partial sum; the
    depth-0 term or sp0_lower_floor both qualify.
    """
    for name, value in (
        ("epsilon", epsilon),
        ("delta", delta),
        ("sigma", sigma),
        ("theta_min", theta_min),
        ("omega", omega),
    ):
        if not (0.0 < value < 1.0):
            raise ParameterDomainError(f"{name} must lie in (0, 1), got {value!r}")
    if not (0.0 < sp_ell_lower <= 1.0):
        raise ParameterDomainError("sp_ell_lower must lie in (0, 1]")
    r = math.ceil(3.0 * math.log(2.0 / delta) / (sigma**2 * epsilon**2 * sp_ell_lower))
    raw_ell = (
        math.log(theta_min * (1.0 - sigma) * epsilon * sp_ell_lower) - math.log(omega)
    ) / math.log(1.0 - theta_min) - 2.0
    ell = max(1, math.ceil(raw_ell))
    return SampleBudget(
        r=int(r),
        ell=int(ell),
        epsilon=float(epsilon),
        delta=float(delta),
        sigma=float(sigma),
        theta_min=float(theta_min),
        sp_lower=float(sp_ell_lower),
    )


__all__ = [
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
]
