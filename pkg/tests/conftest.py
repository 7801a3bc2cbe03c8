"""Shared fixtures: small hand-checked instances and seeded random instances."""

from __future__ import annotations

import numpy as np
import pytest

from fjpower import StochasticGraph, StubbornnessProfile


def swap_matrix() -> np.ndarray:
    return np.array([[0.0, 1.0], [1.0, 0.0]])


def hub_leaf_phase_matrix(leak: float = 0.002, ret: float = 0.1) -> np.ndarray:
    """10-node two-branch graph with one self-absorbed node and a weak hub.

    Node 1 (1-based) keeps 0.89 on itself; node 2 relays half its weight to
    node 1 and a quarter to each branch head (3 and 7). Branch tails split
    into both heads, mid-branch nodes return weight `ret` to node 2, and the
    tiny `leak` off tail 6 breaks the exact mirror symmetry of the branches.
    """
    w = np.zeros((10, 10))
    w[0, 0], w[0, 1] = 0.89, 0.11
    w[1, 0], w[1, 2], w[1, 6] = 0.5, 0.25, 0.25
    w[2, 3] = 1.0
    w[3, 4], w[3, 1] = 1.0 - ret, ret
    w[4, 5] = 1.0
    w[5, 2], w[5, 6], w[5, 1] = 0.5, 0.5 - leak, leak
    w[6, 7] = 1.0
    w[7, 8], w[7, 1] = 1.0 - ret, ret
    w[8, 9] = 1.0
    w[9, 6], w[9, 2] = 0.5, 0.5
    return w


def random_instance(rng: np.random.Generator, n: int, density: float = 0.5) -> StochasticGraph:
    """Random weighted strongly connected row-stochastic graph (cycle backbone)."""
    mask = rng.random((n, n)) < density
    idx = np.arange(n)
    mask[idx, (idx + 1) % n] = True
    weights = rng.random((n, n)) * mask
    return StochasticGraph(weights / weights.sum(axis=1, keepdims=True))


def random_theta(rng: np.random.Generator, n: int, lo: float = 0.1, hi: float = 1.0) -> StubbornnessProfile:
    return StubbornnessProfile(rng.uniform(lo, hi, n))


def random_subset(rng: np.random.Generator, n: int, k: int) -> tuple[int, ...]:
    return tuple(sorted(int(i) for i in rng.choice(n, size=k, replace=False)))


@pytest.fixture
def swap_graph() -> StochasticGraph:
    return StochasticGraph(swap_matrix())


@pytest.fixture
def phase_graph() -> StochasticGraph:
    return StochasticGraph(hub_leaf_phase_matrix())


@pytest.fixture
def phase_graph_symmetric() -> StochasticGraph:
    return StochasticGraph(hub_leaf_phase_matrix(leak=0.0))
