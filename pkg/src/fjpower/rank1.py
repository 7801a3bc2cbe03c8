"""Exact selection on rank-1 (shared-row) graphs.

When every agent weighs the others by the same centrality vector c (so
W = 1 c'), the influencer's social power has a closed form: an affine ratio
over the selected set. Maximizing it is a cardinality-constrained hyperbolic
0-1 program solved exactly by sorting b_i - t a_i at a finite set of
candidate slopes t and verifying a fixed point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import StubbornnessProfile
from .errors import (
    BudgetExceedsNError,
    NoFixedPointError,
    ParameterDomainError,
    PremiseNotMatchedError,
    SingularSystemError,
)
from .graphs import StochasticGraph

# Matches the selection-module convention for deterministic near-tie handling.
_TOL = 1e-12


@dataclass(frozen=True)
class Rank1Model:
    """Complete graph W = 1 c' with centralities c, plus theta and omega."""

    c: np.ndarray
    theta: StubbornnessProfile
    omega: float

    def __post_init__(self):
        c = np.array(self.c, dtype=float, copy=True).reshape(-1)
        if c.size == 0:
            raise ParameterDomainError("centrality vector is empty")
        if not np.all(np.isfinite(c)) or np.any(c < 0):
            raise ParameterDomainError("centralities must be finite and nonnegative")
        if abs(c.sum() - 1.0) > 1e-12:
            raise ParameterDomainError(f"centralities must sum to 1, got {c.sum()!r}")
        if self.theta.n != c.size:
            raise ParameterDomainError("centrality and stubbornness sizes differ")
        if not (0.0 <= self.omega < 1.0):
            raise ParameterDomainError("omega must lie in [0, 1)")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        return int(self.c.size)

    def graph(self) -> StochasticGraph:
        """Materialize the rank-1 weight matrix (every row equals c)."""
        return StochasticGraph(np.tile(self.c, (self.n, 1)))


@dataclass(frozen=True)
class HyperbolicInstance:
    """Maximize sum_S b / (a0 + sum_S a) over subsets S of size k."""

    a0: float
    a: np.ndarray
    b: np.ndarray
    k: int

    def __post_init__(self):
        a = np.array(self.a, dtype=float, copy=True).reshape(-1)
        b = np.array(self.b, dtype=float, copy=True).reshape(-1)
        if a.size != b.size or a.size == 0:
            raise ParameterDomainError("coefficient vectors must be nonempty and equal-sized")
        if self.a0 < 0 or np.any(a < 0) or np.any(b < 0):
            raise ParameterDomainError("a0, a, b must all be nonnegative")
        if not (1 <= self.k <= a.size):
            raise ParameterDomainError(f"k must lie in 1..{a.size}")
        # worst feasible denominator: a0 plus the k smallest a_i
        floor = self.a0 + float(np.sort(a)[: self.k].sum())
        if floor <= 0.0:
            raise ParameterDomainError("denominator can vanish on a feasible set")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return int(self.a.size)

    def value(self, subset) -> float:
        idx = list(subset)
        return float(self.b[idx].sum() / (self.a0 + self.a[idx].sum()))


def rank1_sp0(model: Rank1Model, subset) -> float:
    """Closed-form social power of the influencer linking to `subset`.

    No matrix solve: sp_0 = (1 + omega * sum_S b / (a0 + sum_S a)) / (n + 1)
    with the coefficients of rank1_parameters.
    """
    idx = sorted(int(i) for i in set(subset))
    if idx and not (0 <= idx[0] and idx[-1] < model.n):
        raise ParameterDomainError("subset contains an agent id outside the graph")
    n = model.n
    if not idx:
        return 1.0 / (n + 1)
    c = model.c
    t = model.theta.theta
    a0 = float(c @ t)
    slack = float((1.0 - t).sum())
    b = (a0 + c[idx] * slack) * (1.0 - t[idx])
    a = model.omega * c[idx] * (1.0 - t[idx])
    denom = a0 + a.sum()
    if denom <= 0.0:
        raise SingularSystemError("no stubborn mass anchors the rank-1 dynamics")
    return float((1.0 + model.omega * b.sum() / denom) / (n + 1))


def rank1_parameters(model: Rank1Model, k: int) -> HyperbolicInstance:
    """Hyperbolic-program coefficients for a budget-k selection.

    a0 = sum c_j theta_j, b_i = (a0 + c_i sum (1-theta_j)) (1-theta_i), and
    a_i = omega c_i (1-theta_i), so the program's objective is exactly the
    ratio inside rank1_sp0.
    """
    c = model.c
    t = model.theta.theta
    a0 = float(c @ t)
    slack = float((1.0 - t).sum())
    b = (a0 + c * slack) * (1.0 - t)
    a = model.omega * c * (1.0 - t)
    return HyperbolicInstance(a0=a0, a=a, b=b, k=int(k))


def _top_k(instance: HyperbolicInstance, slope: float) -> tuple[int, ...]:
    """Indices of the k largest b_i - slope * a_i, lowest id on ties."""
    keys = instance.b - slope * instance.a
    order = sorted(range(instance.n), key=lambda i: (-keys[i], i))
    return tuple(sorted(order[: instance.k]))


def hyperbolic_solve(instance: HyperbolicInstance) -> tuple[int, ...]:
    """Exact maximizer of the ratio objective at cardinality k.

    Candidate slopes are the pairwise swap points t = (b_i-b_j)/(a_i-a_j)
    with t >= 0; between consecutive swap points the ranking of b - t a is
    constant, so probing each interval and verifying the fixed point
    t* = value(top-k at t*) covers every achievable ranking.
    """
    a, b = instance.a, instance.b
    swaps: list[float] = []
    for i in range(instance.n):
        for j in range(i + 1, instance.n):
            da = a[i] - a[j]
            if da == 0.0:
                continue
            t = (b[i] - b[j]) / da
            if t >= 0.0 and math.isfinite(t):
                swaps.append(float(t))
    swaps.sort()
    deduped: list[float] = []
    for t in swaps:
        if not deduped or t - deduped[-1] > _TOL:
            deduped.append(t)
    if deduped:
        probes = [deduped[0] - 1.0]
        probes += [(lo + hi) / 2.0 for lo, hi in zip(deduped, deduped[1:])]
        probes.append(deduped[-1] + 1.0)
    else:
        probes = [0.0]
    for probe in probes:
        candidate = _top_k(instance, probe)
        t_star = instance.value(candidate)
        fixed = _top_k(instance, t_star)
        achieved = instance.value(fixed)
        if abs(achieved - t_star) <= 1e-12 * max(1.0, abs(t_star)):
            return fixed
    raise NoFixedPointError(
        "no probe produced a fixed point; the ratio program should always have one"
    )


def rank1_special_solve(model: Rank1Model, k: int) -> tuple[int, ...]:
    """Shortcut selections for three degenerate coefficient patterns.

    Uniform theta -> the k most central agents; uniform c, or constant
    c_i (1-theta_i) -> the k least stubborn agents. Anything else raises
    PremiseNotMatchedError so callers can fall back to hyperbolic_solve.
    """
    if not (1 <= k <= model.n):
        raise BudgetExceedsNError(k, model.n)
    c = model.c
    t = model.theta.theta
    if t.max() - t.min() <= _TOL:
        order = sorted(range(model.n), key=lambda i: (-c[i], i))
        return tuple(sorted(order[:k]))
    product = c * (1.0 - t)
    if c.max() - c.min() <= _TOL or product.max() - product.min() <= _TOL:
        order = sorted(range(model.n), key=lambda i: (t[i], i))
        return tuple(sorted(order[:k]))
    raise PremiseNotMatchedError(
        "needs uniform theta, uniform c, or constant c_i (1 - theta_i)"
    )


__all__ = [
    "Rank1Model",
    "HyperbolicInstance",
    "rank1_sp0",
    "rank1_parameters",
    "hyperbolic_solve",
    "rank1_special_solve",
]
