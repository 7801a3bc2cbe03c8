"""Exact K=2 selection on symmetric rings, plus dispersion analytics.

On a symmetric circulant graph with uniform stubbornness, the optimal pair
is (agent 0, argmin of the inverse generator): M = I - (1-theta) W has a
circulant inverse whose generator m orders all pairs by ring offset. The
module also provides the circular variance used to relate dispersion of a
selected set to its social power, and a product-monotonicity check on
palindromic generators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptySetError, ParameterDomainError, SingularSystemError
from .graphs import RingSpec, build_circulant

_TIE_TOL = 1e-12


@dataclass
class RingModel:
    """Symmetric ring with uniform stubbornness; caches the inverse generator."""

    spec: RingSpec
    theta: float
    omega: float
    _inverse: np.ndarray | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (0.0 < self.theta < 1.0):
            raise ParameterDomainError("ring model needs uniform theta in (0, 1)")
        if not (0.0 <= self.omega < 1.0):
            raise ParameterDomainError("omega must lie in [0, 1)")

    @property
    def n(self) -> int:
        return self.spec.n

    def inverse_generator(self) -> np.ndarray:
        if self._inverse is None:
            self._inverse = circulant_inverse(self.theta, self.spec)
        return self._inverse


def circulant_inverse(theta: float, spec: RingSpec) -> np.ndarray:
    """Generator (m_0, ..., m_{n-1}) of (I - (1-theta) W)^{-1}.

    The inverse of a circulant is circulant, so one solve against e_1
    recovers it: column 1 of a circulant with generator m reads
    (m_0, m_{n-1}, ..., m_1). Strict diagonal dominance for theta in (0, 1)
    makes the system nonsingular.
    """
    if not (0.0 < theta < 1.0):
        raise ParameterDomainError("theta must lie in (0, 1)")
    w = build_circulant(spec.circulant())
    n = spec.n
    m_mat = np.eye(n) - (1.0 - theta) * w
    rhs = np.zeros(n)
    rhs[0] = 1.0
    try:
        col = np.linalg.solve(m_mat, rhs)
    except np.linalg.LinAlgError as exc:  # unreachable for theta in (0,1)
        raise SingularSystemError(str(exc)) from exc
    return np.concatenate(([col[0]], col[1:][::-1]))


def ring_solve_k2(ring: RingModel) -> tuple[int, int]:
    """Optimal budget-2 pair on a ring, anchored at agent 0 by symmetry.

    Returns (0, a*) with a* = argmin over offsets a >= 1 of m_a; offsets
    within 1e-12 resolve to the smaller one (the inverse generator is
    palindromic, so mirror offsets tie up to roundoff).
    """
    m = ring.inverse_generator()
    best = 1
    best_val = float(m[1])
    for a in range(2, ring.n):
        if float(m[a]) < best_val - _TIE_TOL:
            best = a
            best_val = float(m[a])
    return (0, best)


def ring_distance(i: int, j: int, n: int) -> int:
    """Cyclic distance between agents i and j on an n-ring."""
    d = abs(int(i) - int(j)) % n
    return min(d, n - d)


def circular_variance(subset, n: int) -> float:
    """1 minus the normalized resultant length of the selected ring angles.

    0 when all selected agents coincide, 1 when their angle vectors cancel;
    clamped to [0, 1] against trigonometric roundoff.
    """
    ids = sorted(set(int(i) for i in subset))
    if not ids:
        raise EmptySetError("circular variance needs a nonempty set")
    if ids[0] < 0 or ids[-1] >= n:
        raise ParameterDomainError("subset contains an agent id outside the ring")
    angles = 2.0 * math.pi * np.asarray(ids, dtype=float) / n
    resultant = math.hypot(float(np.cos(angles).sum()), float(np.sin(angles).sum()))
    return min(1.0, max(0.0, 1.0 - resultant / len(ids)))


def orbit_representative(subset, n: int) -> tuple[int, ...]:
    """Lexicographically smallest rotation image of a subset on the n-ring.

    Rotations of a circulant graph relabel agents without changing sp_0, so
    subsets are aggregated by this canonical form.
    """
    ids = sorted(set(int(i) for i in subset))
    if ids and (ids[0] < 0 or ids[-1] >= n):
        raise ParameterDomainError("subset contains an agent id outside the ring")
    best: tuple[int, ...] | None = None
    for r in range(n):
        cand = tuple(sorted((i + r) % n for i in ids))
        if best is None or cand < best:
            best = cand
    assert best is not None or not ids
    return best if ids else ()


@dataclass(frozen=True)
class MonotoneCheck:
    """Result of a generator-monotonicity check; falsy when a violation exists."""

    ok: bool
    first_violation: int | None

    def __bool__(self) -> bool:
        return self.ok


def _expand_half(half: np.ndarray, parity: str) -> np.ndarray:
    if parity == "odd":
        # n = 2s-1 from (u_0..u_{s-1})
        return np.concatenate([half, half[:0:-1]])
    # n = 2s from (u_0..u_s)
    return np.concatenate([half, half[-2:0:-1]])


def circulant_monotone_product_check(
    u, v, parity: str, strict_at: tuple[int, int] | None = None
) -> MonotoneCheck:
    """Check that the product of two monotone palindromic circulants is monotone.

    u and v are nonincreasing nonnegative half-generators sharing a parity
    ("odd": n = 2s-1 from s weights; "even": n = 2s from s+1 weights). The
    product of the two circulants is circulant and palindromic; the check
    verifies its half-generator is nonincreasing. With strict_at=(i, j)
    where u drops strictly at i and v at j (i >= j after commuting), the
    run r_{i-j} > ... > r_{h*+1} must be strictly decreasing, with
    h* = min(i+j, 2s-3-i-j) for odd parity and min(i+j, 2s-1-i-j) for even.
    """
    if parity not in ("odd", "even"):
        raise ParameterDomainError(f"parity must be 'odd' or 'even', got {parity!r}")
    uh = np.array(u, dtype=float).reshape(-1)
    vh = np.array(v, dtype=float).reshape(-1)
    if uh.size != vh.size or uh.size < 2:
        raise ParameterDomainError("half-generators must share a length of at least 2")
    for name, half in (("u", uh), ("v", vh)):
        if np.any(half < 0):
            raise ParameterDomainError(f"{name} must be nonnegative")
        if np.any(np.diff(half) > 1e-15):
            raise ParameterDomainError(f"{name} must be nonincreasing")
    s = uh.size if parity == "odd" else uh.size - 1
    full_u = _expand_half(uh, parity)
    full_v = _expand_half(vh, parity)
    n = full_u.size
    # circular convolution: r_k = sum_j U_j V_{(k-j) mod n}
    offsets = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    r = full_u @ full_v[offsets]
    half_len = uh.size
    r_half = r[:half_len]

    diffs = np.diff(r_half)
    bad = np.flatnonzero(diffs > 1e-12)
    if bad.size:
        return MonotoneCheck(False, int(bad[0]))

    if strict_at is not None:
        i, j = (int(x) for x in strict_at)
        if i < j:
            i, j = j, i  # multiplication commutes, so order the drop indices
            uh, vh = vh, uh
        if not (0 <= j and i + 1 < half_len):
            raise ParameterDomainError("strict drop index outside the half-generator")
        if not (uh[i] > uh[i + 1] and vh[j] > vh[j + 1]):
            raise ParameterDomainError("claimed strict drops are not present in u, v")
        if parity == "odd":
            h_star = min(i + j, 2 * s - 3 - i - j)
        else:
            h_star = min(i + j, 2 * s - 1 - i - j)
        for k in range(i - j, h_star + 1):
            if not r_half[k] > r_half[k + 1]:
                return MonotoneCheck(False, int(k))
    return MonotoneCheck(True, None)


__all__ = [
    "RingModel",
    "MonotoneCheck",
    "circulant_inverse",
    "ring_solve_k2",
    "ring_distance",
    "circular_variance",
    "orbit_representative",
    "circulant_monotone_product_check",
]
