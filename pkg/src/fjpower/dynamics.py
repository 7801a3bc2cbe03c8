"""Opinion dynamics core: simulation, steady states, and social power.

The update rule is x(t+1) = (I - Theta) W x(t) + Theta x(0). An external
influencer (agent 0) may add links of weight omega in [0, 1) to a selected
set S of agents; the influenced agents rescale their own rows by (1 - omega)
to stay stochastic. Steady states are always computed by linear solves on
B(S) = I - H(S) with H(S) = (I - omega D_S)(I - Theta) W, never by forming
an explicit inverse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .errors import ParameterDomainError, SingularSystemError
from .graphs import StochasticGraph


@dataclass(frozen=True)
class StubbornnessProfile:
    """Per-agent anchoring weights theta_i in [0, 1]."""

    theta: np.ndarray

    def __post_init__(self):
        t = np.array(self.theta, dtype=float, copy=True).reshape(-1)
        if t.size < 1:
            raise ParameterDomainError("stubbornness profile must be nonempty")
        if not np.all(np.isfinite(t)):
            raise ParameterDomainError("stubbornness has non-finite entries")
        if np.any(t < 0) or np.any(t > 1):
            raise ParameterDomainError("stubbornness entries must lie in [0, 1]")
        t.setflags(write=False)
        object.__setattr__(self, "theta", t)

    @classmethod
    def uniform(cls, n: int, value: float) -> "StubbornnessProfile":
        return cls(np.full(n, float(value)))

    @property
    def n(self) -> int:
        return self.theta.size

    def is_uniform(self) -> bool:
        return bool(np.all(self.theta == self.theta[0]))

    def uniform_value(self) -> float:
        if not self.is_uniform():
            raise ParameterDomainError("profile is not uniform")
        return float(self.theta[0])

    def max_below_one(self) -> float:
        """Largest theta_i strictly below 1; needed by conservative bounds."""
        below = self.theta[self.theta < 1.0]
        if below.size == 0:
            raise ParameterDomainError("every agent is fully stubborn")
        return float(below.max())


@dataclass(frozen=True)
class InfluencerAction:
    """Selected agent set S, link weight omega, and cardinality budget K."""

    selected: frozenset[int]
    omega: float
    budget: int | None = None

    def __post_init__(self):
        sel = frozenset(int(i) for i in self.selected)
        if any(i < 0 for i in sel):
            raise ParameterDomainError("agent ids must be nonnegative")
        if not (0.0 <= self.omega < 1.0):
            raise ParameterDomainError(f"omega must lie in [0, 1), got {self.omega!r}")
        budget = self.budget if self.budget is not None else max(1, len(sel))
        if budget < 1:
            raise ParameterDomainError("budget must be at least 1")
        if len(sel) > budget:
            raise ParameterDomainError(f"|S| = {len(sel)} exceeds budget {budget}")
        object.__setattr__(self, "selected", sel)
        object.__setattr__(self, "omega", float(self.omega))
        object.__setattr__(self, "budget", int(budget))

    def ordered(self) -> tuple[int, ...]:
        return tuple(sorted(self.selected))


@dataclass(frozen=True)
class SteadyState:
    """Influencer column p0 and agent block P of the limit opinion map."""

    p0: np.ndarray
    P: np.ndarray

    def social_powers(self) -> np.ndarray:
        """(sp_0, sp_1, ..., sp_n) under the uniform 1/(n+1) weighting."""
        n = self.p0.size
        sp0 = (self.p0.sum() + 1.0) / (n + 1)
        return np.concatenate([[sp0], self.P.sum(axis=0) / (n + 1)])


def check_convergence_condition(graph: StochasticGraph, theta: StubbornnessProfile) -> bool:
    """True iff every agent is stubborn or is reached from a stubborn agent.

    Influence flows j -> i along W[i, j] > 0, so the closure walks columns.
    """
    _check_sizes(graph, theta)
    reached = theta.theta > 0
    if not reached.any():
        return False
    links = graph.weights > 0
    while True:
        grown = reached | links[:, reached].any(axis=1)
        if (grown == reached).all():
            break
        reached = grown
    return bool(reached.all())


def _check_sizes(graph: StochasticGraph, theta: StubbornnessProfile) -> None:
    if theta.n != graph.n:
        raise ParameterDomainError(f"profile size {theta.n} != graph size {graph.n}")


def _check_selection(graph: StochasticGraph, action: InfluencerAction) -> None:
    if action.selected and max(action.selected) >= graph.n:
        raise ParameterDomainError("selected agent id outside the graph")


def transient_block(
    graph: StochasticGraph, theta: StubbornnessProfile, selected, omega: float
) -> np.ndarray:
    """H(S) = (I - omega D_S)(I - Theta) W; rows in S are scaled by 1 - omega."""
    h = (1.0 - theta.theta)[:, None] * graph.weights
    idx = sorted(int(i) for i in selected)
    if idx:
        h[idx, :] *= 1.0 - omega
    return h


def exit_weights(theta: StubbornnessProfile, selected, omega: float) -> np.ndarray:
    """Per-agent weight omega (1 - theta_i) of the new link toward agent 0."""
    a = np.zeros(theta.n)
    idx = sorted(int(i) for i in selected)
    if idx:
        a[idx] = omega * (1.0 - theta.theta[idx])
    return a


def fj_simulate(
    graph: StochasticGraph,
    theta: StubbornnessProfile,
    x0,
    steps: int,
    stop_tol: float | None = None,
) -> np.ndarray:
    """Trajectory x(0..steps) of the update rule; optional early stop.

    With stop_tol set, iteration ends once successive opinion vectors differ
    by less than stop_tol in the sup norm.
    """
    _check_sizes(graph, theta)
    x0 = np.asarray(x0, dtype=float).reshape(-1)
    if x0.size != graph.n:
        raise ParameterDomainError("x0 size does not match the graph")
    if steps < 0:
        raise ParameterDomainError("steps must be nonnegative")
    a = (1.0 - theta.theta)[:, None] * graph.weights
    anchor = theta.theta * x0
    traj = [x0]
    x = x0
    for _ in range(steps):
        x_next = a @ x + anchor
        traj.append(x_next)
        if stop_tol is not None and np.max(np.abs(x_next - x)) < stop_tol:
            break
        x = x_next
    return np.array(traj)


def steady_state(graph: StochasticGraph, theta: StubbornnessProfile) -> np.ndarray:
    """Limit opinion map P solving (I - (I - Theta) W) P = Theta."""
    _check_sizes(graph, theta)
    if not check_convergence_condition(graph, theta):
        raise SingularSystemError("no agent anchors the dynamics; steady state undefined")
    b = np.eye(graph.n) - (1.0 - theta.theta)[:, None] * graph.weights
    try:
        return np.linalg.solve(b, np.diag(theta.theta))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - guarded above
        raise SingularSystemError(str(exc)) from exc


def augmented_steady_state(
    graph: StochasticGraph, theta: StubbornnessProfile, action: InfluencerAction
) -> SteadyState:
    """Solve the influenced system for p0 and P with one factorization."""
    _check_sizes(graph, theta)
    _check_selection(graph, action)
    b = np.eye(graph.n) - transient_block(graph, theta, action.selected, action.omega)
    try:
        lu = lu_factor(b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc
    p0 = lu_solve(lu, exit_weights(theta, action.selected, action.omega))
    p_mat = lu_solve(lu, np.diag(theta.theta))
    defect = np.max(np.abs(p0 + p_mat.sum(axis=1) - 1.0))
    if not np.isfinite(defect) or defect > 1e-6:
        raise SingularSystemError(f"solution is not stochastic (defect {defect!r})")
    return SteadyState(p0=p0, P=p_mat)


def social_power(P: np.ndarray, i: int, divisor: float | None = None) -> float:
    """Column-i sum of P divided by `divisor` (defaults to the row count)."""
    P = np.asarray(P, dtype=float)
    d = float(divisor) if divisor is not None else float(P.shape[0])
    return float(P[:, i].sum() / d)


def influencer_mass(
    graph: StochasticGraph, theta: StubbornnessProfile, selected, omega: float
) -> float:
    """Raw 1' p0 for the selected set; single linear solve."""
    _check_sizes(graph, theta)
    idx = sorted(int(i) for i in selected)
    if idx and idx[-1] >= graph.n:
        raise ParameterDomainError("selected agent id outside the graph")
    if not idx or omega == 0.0:
        return 0.0
    b = np.eye(graph.n) - transient_block(graph, theta, idx, omega)
    try:
        p0 = np.linalg.solve(b, exit_weights(theta, idx, omega))
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc
    return float(p0.sum())


def social_power_influencer(
    graph: StochasticGraph, theta: StubbornnessProfile, action: InfluencerAction
) -> float:
    """sp_0 = (1' p0 + 1) / (n + 1)."""
    mass = influencer_mass(graph, theta, action.selected, action.omega)
    return (mass + 1.0) / (graph.n + 1)


__all__ = [
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
]
