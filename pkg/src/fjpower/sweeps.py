"""Bulk social-power evaluation over many subsets at once.

All subsets share the base system M0 = I - (I-Theta)W; selecting S only
perturbs K rows, so each subset's solve reduces to a K x K system via the
Woodbury identity. Batches of subsets are solved as stacked small systems,
which makes full C(n, K) sweeps practical.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .dynamics import StubbornnessProfile
from .errors import CombinatorialExplosionError, ParameterDomainError
from .graphs import StochasticGraph
from .selection import EXHAUSTIVE_CAP

DEFAULT_BATCH = 4096


def _base_operators(graph: StochasticGraph, theta: StubbornnessProfile, omega: float):
    if theta.n != graph.n:
        raise ParameterDomainError(f"profile size {theta.n} != graph size {graph.n}")
    if not (0.0 <= omega < 1.0):
        raise ParameterDomainError("omega must lie in [0, 1)")
    tvec = theta.theta
    a_mat = (1.0 - tvec)[:, None] * graph.weights
    g0 = np.linalg.inv(np.eye(graph.n) - a_mat)
    f0 = a_mat @ g0
    y = g0.sum(axis=0)
    gamma = omega * (1.0 - tvec)
    return f0, y, gamma


def sp0_of_subsets(
    graph: StochasticGraph,
    theta: StubbornnessProfile,
    omega: float,
    subsets,
    batch_size: int = DEFAULT_BATCH,
) -> np.ndarray:
    """Social power sp_0 for each subset in `subsets` (all the same size).

    Equivalent to one augmented solve per subset, but evaluated through the
    shared base inverse: per subset only a |S| x |S| system is solved.
    """
    subs = [tuple(sorted(int(i) for i in s)) for s in subsets]
    if not subs:
        return np.zeros(0)
    k = len(subs[0])
    n = graph.n
    for s in subs:
        if len(s) != k:
            raise ParameterDomainError("all subsets must share one cardinality")
        if len(set(s)) != k or (k and (s[0] < 0 or s[-1] >= n)):
            raise ParameterDomainError(f"invalid subset {s!r}")
    if k == 0:
        return np.full(len(subs), 1.0 / (n + 1))
    f0, y, gamma = _base_operators(graph, theta, omega)
    out = np.empty(len(subs))
    eye_k = np.eye(k)
    for lo in range(0, len(subs), batch_size):
        idx = np.array(subs[lo : lo + batch_size], dtype=np.intp)
        f_ss = f0[idx[:, :, None], idx[:, None, :]]
        gam = gamma[idx]
        y_s = y[idx]
        rhs = np.einsum("mkl,ml->mk", f_ss, gam)
        small = eye_k[None, :, :] + omega * f_ss
        sol = np.linalg.solve(small, rhs[:, :, None])[:, :, 0]
        mass = (y_s * gam).sum(axis=1) - omega * (y_s * sol).sum(axis=1)
        out[lo : lo + idx.shape[0]] = (mass + 1.0) / (n + 1)
    return out


def sp0_all_subsets(
    graph: StochasticGraph,
    theta: StubbornnessProfile,
    omega: float,
    k: int,
    cap: int = EXHAUSTIVE_CAP,
    batch_size: int = DEFAULT_BATCH,
) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Every size-k subset with its social power, in lexicographic order."""
    if not (1 <= k <= graph.n):
        raise ParameterDomainError(f"k must lie in 1..{graph.n}")
    count = math.comb(graph.n, k)
    if count > cap:
        raise CombinatorialExplosionError(count, cap)
    subsets = list(itertools.combinations(range(graph.n), k))
    return subsets, sp0_of_subsets(graph, theta, omega, subsets, batch_size=batch_size)


__all__ = ["DEFAULT_BATCH", "sp0_of_subsets", "sp0_all_subsets"]
