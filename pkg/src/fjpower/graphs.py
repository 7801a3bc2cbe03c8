"""Row-stochastic graph construction, validation, and file ingestion.

The weight convention is W[i, j] = weight agent i places on agent j, so
influence travels along positive entries of a COLUMN: agent j directly
influences agent i when W[i, j] > 0. Node ids are 0-based everywhere in the
library; the CLI translates to 1-based labels at its boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    EdgeListParseError,
    NegativeEntryError,
    NonStochasticError,
    NotNormalizedError,
    ZeroOutDegreeError,
)

# Rows must sum to 1 this tightly; worse inputs are rejected, never re-normalized,
# so experiment provenance stays honest.
STOCHASTIC_TOL = 1e-12


def _as_readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class StochasticGraph:
    """A directed weighted graph with a validated row-stochastic matrix."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise NonStochasticError(f"weight matrix must be square, got shape {w.shape}")
        if w.shape[0] < 1:
            raise NonStochasticError("graph needs at least one node")
        if not np.all(np.isfinite(w)):
            raise NonStochasticError("weight matrix has non-finite entries")
        neg = np.argwhere(w < 0)
        if neg.size:
            i, j = map(int, neg[0])
            raise NegativeEntryError(i, j, float(w[i, j]))
        sums = w.sum(axis=1)
        bad = np.argmax(np.abs(sums - 1.0))
        if abs(sums[bad] - 1.0) > STOCHASTIC_TOL:
            raise NonStochasticError(
                f"row {bad} sums to {sums[bad]!r}", row=int(bad), row_sum=float(sums[bad])
            )
        object.__setattr__(self, "weights", _as_readonly(w))

    @property
    def n(self) -> int:
        return self.weights.shape[0]


def validate_stochastic(weights) -> StochasticGraph:
    """Validate a square matrix as row-stochastic and wrap it."""
    return StochasticGraph(np.asarray(weights, dtype=float))


def is_strongly_connected(graph: StochasticGraph) -> bool:
    """True iff every node reaches every other along positive-weight links."""
    if graph.n == 1:
        return True
    sparse = csr_matrix(graph.weights > 0)
    n_comp, _ = connected_components(sparse, directed=True, connection="strong")
    return bool(n_comp == 1)


@dataclass(frozen=True)
class CirculantSpec:
    """Generator (m_0, ..., m_{n-1}) of a row-stochastic circulant matrix."""

    generator: tuple[float, ...]

    def __post_init__(self):
        gen = tuple(float(g) for g in self.generator)
        if not gen:
            raise NotNormalizedError("circulant generator must be nonempty")
        if any(g < 0 for g in gen):
            raise NegativeEntryError(0, gen.index(min(gen)), min(gen))
        if abs(sum(gen) - 1.0) > STOCHASTIC_TOL:
            raise NotNormalizedError(f"circulant generator sums to {sum(gen)!r}")
        object.__setattr__(self, "generator", gen)

    @property
    def n(self) -> int:
        return len(self.generator)


def build_circulant(spec: CirculantSpec) -> np.ndarray:
    """Matrix whose row r is the generator cyclically shifted right by r."""
    gen = np.asarray(spec.generator, dtype=float)
    n = gen.size
    return np.vstack([np.roll(gen, r) for r in range(n)])


@dataclass(frozen=True)
class RingSpec:
    """Symmetric ring weights: half-generator up to the antipodal node.

    Odd n = 2s-1 takes (w_0, ..., w_{s-1}); even n = 2s also takes the
    antipodal weight w_s, i.e. (w_0, ..., w_{s-1}, w_s).
    """

    n: int
    half_weights: tuple[float, ...] = field(default=())

    def __post_init__(self):
        half = tuple(float(w) for w in self.half_weights)
        object.__setattr__(self, "half_weights", half)
        if self.n < 3:
            raise NotNormalizedError("ring needs n >= 3")
        s = (self.n + 1) // 2
        expect = s if self.n % 2 == 1 else s + 1
        if len(half) != expect:
            raise NotNormalizedError(
                f"n={self.n} needs {expect} half weights, got {len(half)}"
            )
        if any(w < 0 for w in half):
            raise NegativeEntryError(0, half.index(min(half)), min(half))
        if half[0] <= 0 or half[1] <= 0:
            raise NotNormalizedError("ring requires w_0 > 0 and w_1 > 0")
        if abs(sum(self.generator()) - 1.0) > STOCHASTIC_TOL:
            raise NotNormalizedError(
                f"expanded ring generator sums to {sum(self.generator())!r}"
            )

    def generator(self) -> tuple[float, ...]:
        """Full palindromic circulant generator of length n."""
        half = self.half_weights
        if self.n % 2 == 1:
            # (w_0, w_1..w_{s-1}, w_{s-1}..w_1)
            return half + half[:0:-1]
        # (w_0, w_1..w_{s-1}, w_s, w_{s-1}..w_1)
        return half + half[-2:0:-1]

    def circulant(self) -> CirculantSpec:
        return CirculantSpec(self.generator())


def build_symmetric_ring(spec: RingSpec) -> StochasticGraph:
    """Expand a ring spec into its validated symmetric circulant graph."""
    return StochasticGraph(build_circulant(spec.circulant()))


def normalize_adjacency(adjacency) -> StochasticGraph:
    """Divide each row of a nonnegative adjacency matrix by its row sum."""
    a = np.asarray(adjacency, dtype=float)
    neg = np.argwhere(a < 0)
    if neg.size:
        i, j = map(int, neg[0])
        raise NegativeEntryError(i, j, float(a[i, j]))
    sums = a.sum(axis=1)
    zero = np.flatnonzero(sums <= 0)
    if zero.size:
        raise ZeroOutDegreeError(int(zero[0]))
    return StochasticGraph(a / sums[:, None])


def _tokenize(line: str) -> list[str]:
    return line.replace(",", " ").split()


def load_edge_list(path, directed: bool = False, header: bool = False) -> StochasticGraph:
    """Load "src dst [weight]" lines, assemble adjacency, and normalize.

    Lines are whitespace- or comma-separated; blank lines and '#' comments are
    skipped. With header=True the first data line declares the id base as
    "base=0" or "base=1"; without a header ids are 0-based. Undirected edges
    are mirrored, duplicate edges accumulate weight.
    """
    base = 0
    edges: list[tuple[int, int, float]] = []
    expect_header = header
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if expect_header:
                decl = line.lstrip("#").strip().lower()
                if decl not in ("base=0", "base=1"):
                    raise EdgeListParseError(line_no, raw.rstrip("\n"), "expected base=0 or base=1")
                base = int(decl[-1])
                expect_header = False
                continue
            if line.startswith("#"):
                continue
            tokens = _tokenize(line)
            if len(tokens) not in (2, 3):
                raise EdgeListParseError(line_no, raw.rstrip("\n"), "expected 2 or 3 fields")
            try:
                u, v = int(tokens[0]), int(tokens[1])
                w = float(tokens[2]) if len(tokens) == 3 else 1.0
            except ValueError:
                raise EdgeListParseError(line_no, raw.rstrip("\n"), "non-numeric field") from None
            u -= base
            v -= base
            if u < 0 or v < 0:
                raise EdgeListParseError(line_no, raw.rstrip("\n"), "id below declared base")
            if w < 0:
                raise EdgeListParseError(line_no, raw.rstrip("\n"), "negative weight")
            edges.append((u, v, w))
    if not edges:
        raise EdgeListParseError(0, "", "no edges in file")
    n = 1 + max(max(u, v) for u, v, _ in edges)
    adj = np.zeros((n, n))
    for u, v, w in edges:
        adj[u, v] += w
        if not directed:
            adj[v, u] += w
    return normalize_adjacency(adj)


def load_matrix(path) -> StochasticGraph:
    """Load "n" followed by n whitespace-separated rows and validate."""
    lines = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            lines.append((line_no, line))
    if not lines:
        raise EdgeListParseError(0, "", "empty matrix file")
    head_no, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise EdgeListParseError(head_no, head, "first line must be the size n") from None
    if n < 1 or len(lines) != n + 1:
        raise EdgeListParseError(head_no, head, f"expected {n} rows after the size line")
    rows = []
    for line_no, line in lines[1:]:
        tokens = _tokenize(line)
        if len(tokens) != n:
            raise EdgeListParseError(line_no, line, f"expected {n} entries")
        try:
            rows.append([float(t) for t in tokens])
        except ValueError:
            raise EdgeListParseError(line_no, line, "non-numeric entry") from None
    return validate_stochastic(np.array(rows))


def save_matrix(graph: StochasticGraph, path) -> None:
    """Write a graph in the load_matrix text format (17 significant digits)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{graph.n}\n")
        for row in graph.weights:
            fh.write(" ".join(format(x, ".17g") for x in row) + "\n")


__all__ = [
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
]
