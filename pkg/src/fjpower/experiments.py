"""Experiment configuration, seeded runners, and CSV report emission.

A single JSON config plus one master seed determines every number a command
prints. Randomness flows through named sub-streams (graph, theta, walks,
baseline) so each ingredient can be replayed independently of the others.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .chain import (
    SampleBudget,
    build_chain,
    mc_estimate_sp0,
    sample_budget,
    sp0_lower_floor,
    sp0_scale,
)
from .dynamics import InfluencerAction, StubbornnessProfile, influencer_mass
from .errors import (
    ConfigError,
    FJPowerError,
    SolverNotApplicableError,
)
from .graphs import (
    CirculantSpec,
    RingSpec,
    StochasticGraph,
    build_circulant,
    build_symmetric_ring,
    load_edge_list,
    load_matrix,
    normalize_adjacency,
)
from .rank1 import Rank1Model, hyperbolic_solve, rank1_parameters
from .rings import RingModel, circular_variance, orbit_representative, ring_solve_k2
from .selection import (
    EXHAUSTIVE_CAP,
    MonteCarlo,
    SelectionReport,
    big_theta_select,
    exhaustive_select,
    greedy_select,
    random_select,
    small_theta_select,
)
from .sweeps import sp0_all_subsets

# Named sub-streams of the master seed; keep ids stable across releases.
GRAPH_STREAM = 1
THETA_STREAM = 2
WALK_STREAM = 3
BASELINE_STREAM = 4

SOLVER_TAGS = ("exhaustive", "gScore", "greedy", "random", "rank1", "ring", "smallTheta")

NA = "NA"

REPORT_HEADER = (
    "solver",
    "K",
    "selected",
    "sp0",
    "sp0Mc",
    "rawMass",
    "wallTime",
    "evaluations",
    "seed",
)


def stream_rng(master_seed: int, stream: int, *extra: int) -> np.random.Generator:
    """Generator for one named sub-stream of the master seed."""
    return np.random.default_rng(np.random.SeedSequence([master_seed, stream, *extra]))


def stream_seed(master_seed: int, stream: int, *extra: int) -> int:
    """Single 64-bit seed drawn from a named sub-stream (for counter-based walks)."""
    seq = np.random.SeedSequence([master_seed, stream, *extra])
    return int(seq.generate_state(1, np.uint64)[0])


def _fmt(value: float | None) -> str:
    """12 significant digits, '.' decimal separator, NA for missing."""
    if value is None:
        return NA
    if isinstance(value, float) and math.isnan(value):
        return NA
    return "%.12g" % value


def _fmt_set(selected) -> str:
    """1-based, sorted, semicolon-delimited agent ids."""
    return ";".join(str(int(i) + 1) for i in sorted(selected))


def _parse_set(text: str) -> tuple[int, ...]:
    return tuple(int(tok) - 1 for tok in text.split(";") if tok)


@dataclass(frozen=True)
class McParams:
    """Accuracy knobs for the walk estimator."""

    epsilon: float
    delta: float
    sigma: float


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment description; exactly one graph source is set."""

    seed: int
    omega: float
    edge_list_path: str | None = None
    edge_list_directed: bool = False
    edge_list_header: bool = False
    matrix_path: str | None = None
    circulant: CirculantSpec | None = None
    ring: RingSpec | None = None
    rank1_columns: tuple[float, ...] | None = None
    theta_value: float | None = None
    theta_list: tuple[float, ...] | None = None
    theta_range: tuple[float, float] | None = None
    k_values: tuple[int, ...] = (1,)
    solvers: tuple[str, ...] = ("greedy",)
    mc: McParams | None = None
    selected: tuple[int, ...] | None = None
    theta_grid: tuple[float, ...] | None = None
    omega_grid: tuple[float, ...] | None = None
    sp_lower: float | None = None
    out: str | None = None

    def graph_source(self) -> str:
        if self.edge_list_path is not None:
            return "edge_list"
        if self.matrix_path is not None:
            return "matrix"
        if self.circulant is not None:
            return "circulant"
        if self.ring is not None:
            return "ring"
        return "rank1"


@dataclass(frozen=True)
class ResolvedInstance:
    """Concrete graph and stubbornness realized from a config."""

    graph: StochasticGraph
    theta: StubbornnessProfile
    ring: RingSpec | None
    rank1: Rank1Model | None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


def _float_in(mapping: dict, key: str, lo: float, hi: float, *, lo_open=True, hi_open=True) -> float:
    value = mapping.get(key)
    _require(isinstance(value, (int, float)) and not isinstance(value, bool), f"'{key}' must be a number")
    value = float(value)
    above = value > lo if lo_open else value >= lo
    below = value < hi if hi_open else value <= hi
    _require(above and below, f"'{key}'={value!r} outside its domain")
    return value


def parse_config(mapping: dict, base_dir: Path | None = None) -> ExperimentConfig:
    """Validate a raw JSON mapping into an ExperimentConfig."""
    _require(isinstance(mapping, dict), "config root must be an object")
    known = {
        "seed", "graph", "theta", "omega", "k", "solvers", "evaluator",
        "selected", "thetaGrid", "omegaGrid", "spLower", "out",
    }
    for key in mapping:
        _require(key in known, f"unknown config key {key!r}")

    seed = mapping.get("seed", 0)
    _require(isinstance(seed, int) and not isinstance(seed, bool) and seed >= 0, "'seed' must be a nonnegative integer")

    omega = _float_in(mapping, "omega", 0.0, 1.0, lo_open=False) if "omega" in mapping else 0.0
    _require("omega" in mapping, "'omega' is required")

    graph = mapping.get("graph")
    _require(isinstance(graph, dict), "'graph' must be an object with one source")
    sources = [k for k in ("edgeList", "matrix", "circulant", "ring", "rank1") if k in graph]
    _require(len(sources) == 1, f"exactly one graph source required, got {sources or 'none'}")
    kwargs: dict = {}
    source = sources[0]
    if source == "edgeList":
        spec = graph["edgeList"]
        _require(isinstance(spec, dict) and isinstance(spec.get("path"), str), "'edgeList' needs a 'path'")
        path = spec["path"]
        if base_dir is not None and not Path(path).is_absolute():
            path = str(base_dir / path)
        kwargs["edge_list_path"] = path
        kwargs["edge_list_directed"] = bool(spec.get("directed", False))
        kwargs["edge_list_header"] = bool(spec.get("header", False))
    elif source == "matrix":
        path = graph["matrix"]
        _require(isinstance(path, str), "'matrix' must be a path string")
        if base_dir is not None and not Path(path).is_absolute():
            path = str(base_dir / path)
        kwargs["matrix_path"] = path
    elif source == "circulant":
        spec = graph["circulant"]
        _require(isinstance(spec, dict) and isinstance(spec.get("generator"), list), "'circulant' needs a 'generator' list")
        try:
            kwargs["circulant"] = CirculantSpec(tuple(float(x) for x in spec["generator"]))
        except Exception as exc:
            raise ConfigError(f"bad circulant generator: {exc}") from exc
    elif source == "ring":
        spec = graph["ring"]
        _require(isinstance(spec, dict) and isinstance(spec.get("n"), int) and isinstance(spec.get("halfWeights"), list), "'ring' needs 'n' and 'halfWeights'")
        try:
            kwargs["ring"] = RingSpec(int(spec["n"]), tuple(float(x) for x in spec["halfWeights"]))
        except Exception as exc:
            raise ConfigError(f"bad ring spec: {exc}") from exc
    else:
        spec = graph["rank1"]
        _require(isinstance(spec, dict) and isinstance(spec.get("columns"), list), "'rank1' needs a 'columns' list")
        cols = tuple(float(x) for x in spec["columns"])
        _require(all(c >= 0 for c in cols) and abs(sum(cols) - 1.0) <= 1e-9, "'rank1' columns must be nonnegative and sum to 1")
        kwargs["rank1_columns"] = cols

    theta = mapping.get("theta")
    _require(theta is not None, "'theta' is required")
    if isinstance(theta, (int, float)) and not isinstance(theta, bool):
        _require(0.0 < float(theta) <= 1.0, f"uniform theta {theta!r} outside (0, 1]")
        kwargs["theta_value"] = float(theta)
    elif isinstance(theta, list):
        vals = tuple(float(x) for x in theta)
        _require(len(vals) > 0 and all(0.0 <= v <= 1.0 for v in vals), "per-agent theta values must lie in [0, 1]")
        kwargs["theta_list"] = vals
    elif isinstance(theta, dict) and "uniformRange" in theta:
        rng = theta["uniformRange"]
        _require(isinstance(rng, list) and len(rng) == 2, "'uniformRange' must be [lo, hi]")
        lo, hi = float(rng[0]), float(rng[1])
        _require(0.0 < lo <= hi <= 1.0, f"theta range [{lo}, {hi}] outside (0, 1]")
        kwargs["theta_range"] = (lo, hi)
    else:
        raise ConfigError("'theta' must be a number, a list, or {'uniformRange': [lo, hi]}")

    k = mapping.get("k", 1)
    if isinstance(k, int) and not isinstance(k, bool):
        _require(k >= 1, "'k' must be at least 1")
        kwargs["k_values"] = (k,)
    elif isinstance(k, list) and len(k) == 2 and all(isinstance(v, int) for v in k):
        lo, hi = k
        _require(1 <= lo <= hi, f"bad K range {k!r}")
        kwargs["k_values"] = tuple(range(lo, hi + 1))
    else:
        raise ConfigError("'k' must be an integer or an inclusive [lo, hi] range")

    solvers = mapping.get("solvers", ["greedy"])
    _require(isinstance(solvers, list) and len(solvers) > 0, "'solvers' must be a nonempty list")
    for tag in solvers:
        _require(tag in SOLVER_TAGS, f"unknown solver {tag!r}; valid tags: {', '.join(SOLVER_TAGS)}")
    kwargs["solvers"] = tuple(dict.fromkeys(solvers))

    evaluator = mapping.get("evaluator", "exact")
    if evaluator == "exact":
        pass
    elif isinstance(evaluator, dict) and set(evaluator) == {"mc"} and isinstance(evaluator["mc"], dict):
        params = evaluator["mc"]
        kwargs["mc"] = McParams(
            epsilon=_float_in(params, "epsilon", 0.0, 1.0),
            delta=_float_in(params, "delta", 0.0, 1.0),
            sigma=_float_in(params, "sigma", 0.0, 1.0),
        )
    else:
        raise ConfigError("'evaluator' must be 'exact' or {'mc': {'epsilon','delta','sigma'}}")

    if "selected" in mapping:
        sel = mapping["selected"]
        _require(isinstance(sel, list) and all(isinstance(i, int) and i >= 1 for i in sel), "'selected' must be a list of 1-based agent ids")
        _require(len(set(sel)) == len(sel), "'selected' has repeated agents")
        kwargs["selected"] = tuple(sorted(i - 1 for i in sel))

    for key, name in (("thetaGrid", "theta_grid"), ("omegaGrid", "omega_grid")):
        if key in mapping:
            grid = mapping[key]
            _require(isinstance(grid, list) and len(grid) > 0, f"'{key}' must be a nonempty list")
            vals = tuple(float(x) for x in grid)
            _require(all(0.0 < v < 1.0 for v in vals), f"'{key}' values must lie in (0, 1)")
            kwargs[name] = vals

    if "spLower" in mapping:
        kwargs["sp_lower"] = _float_in(mapping, "spLower", 0.0, 1.0, hi_open=False)
    if "out" in mapping:
        _require(isinstance(mapping["out"], str), "'out' must be a path string")
        kwargs["out"] = mapping["out"]

    return ExperimentConfig(seed=seed, omega=omega, **kwargs)


def load_config(path) -> ExperimentConfig:
    """Read and validate a JSON config file."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from exc
    try:
        mapping = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {p} is not valid JSON: {exc}") from exc
    return parse_config(mapping, base_dir=p.parent)


def random_normalized_graph(n: int, extra_edge_prob: float, rng: np.random.Generator) -> StochasticGraph:
    """Seeded strongly connected test graph: cycle backbone plus random extras."""
    if n < 2:
        raise ConfigError("random graph needs n >= 2")
    adjacency = (rng.random((n, n)) < extra_edge_prob).astype(float)
    np.fill_diagonal(adjacency, 0.0)
    idx = np.arange(n)
    adjacency[idx, (idx + 1) % n] = 1.0
    return normalize_adjacency(adjacency)


def resolve_instance(config: ExperimentConfig) -> ResolvedInstance:
    """Materialize the graph and stubbornness profile a config describes."""
    rank1 = None
    ring = None
    source = config.graph_source()
    try:
        if source == "edge_list":
            graph = load_edge_list(
                config.edge_list_path,
                directed=config.edge_list_directed,
                header=config.edge_list_header,
            )
        elif source == "matrix":
            graph = load_matrix(config.matrix_path)
        elif source == "circulant":
            graph = StochasticGraph(build_circulant(config.circulant))
        elif source == "ring":
            ring = config.ring
            graph = build_symmetric_ring(ring)
        else:
            graph = None  # built after theta below, the model owns it
    except ConfigError:
        raise
    except (FJPowerError, OSError) as exc:
        raise ConfigError(f"graph source failed to load: {exc}") from exc

    if source == "rank1":
        n = len(config.rank1_columns)
    else:
        n = graph.n

    if config.theta_value is not None:
        theta = StubbornnessProfile.uniform(n, config.theta_value)
    elif config.theta_list is not None:
        if len(config.theta_list) != n:
            raise ConfigError(f"theta list has {len(config.theta_list)} entries for {n} agents")
        theta = StubbornnessProfile(np.asarray(config.theta_list))
    else:
        lo, hi = config.theta_range
        theta = StubbornnessProfile(stream_rng(config.seed, THETA_STREAM).uniform(lo, hi, n))

    if source == "rank1":
        rank1 = Rank1Model(np.asarray(config.rank1_columns), theta, config.omega)
        graph = rank1.graph()

    return ResolvedInstance(graph=graph, theta=theta, ring=ring, rank1=rank1)


def _mc_budget(config: ExperimentConfig, theta: StubbornnessProfile) -> SampleBudget:
    params = config.mc
    theta_min = float(theta.theta.min())
    sp_lower = config.sp_lower if config.sp_lower is not None else sp0_lower_floor(theta, config.omega)
    return sample_budget(params.epsilon, params.delta, params.sigma, theta_min, config.omega, sp_lower)


@dataclass(frozen=True)
class ReportRow:
    """One (solver, K) result in the canonical report schema."""

    solver: str
    k: int
    selected: tuple[int, ...]
    sp0: float
    sp0_mc: float | None
    raw_mass: float
    wall_time: float
    evaluations: int
    seed: int

    def fields(self) -> tuple[str, ...]:
        return (
            self.solver,
            str(self.k),
            _fmt_set(self.selected),
            _fmt(self.sp0),
            _fmt(self.sp0_mc),
            _fmt(self.raw_mass),
            _fmt(self.wall_time),
            str(self.evaluations),
            str(self.seed),
        )


def write_csv(header: tuple[str, ...], records, out) -> None:
    """Emit one CSV table (header + records) to a file-like object."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(records)


def render_csv(header: tuple[str, ...], records) -> str:
    buf = io.StringIO()
    write_csv(header, records, buf)
    return buf.getvalue()


def parse_report(text: str) -> list[dict[str, str]]:
    """Re-parse an emitted CSV table into dict rows (round-trip checks)."""
    reader = csv.DictReader(io.StringIO(text))
    return list(reader)


@dataclass(frozen=True)
class SpEvaluation:
    """Exact (and optionally estimated) social power of one fixed set."""

    n: int
    selected: tuple[int, ...]
    sp0: float
    sp0_mc: float | None
    raw_mass: float
    seed: int

    HEADER = ("n", "K", "selected", "sp0", "sp0Mc", "rawMass", "seed")

    def records(self) -> list[tuple[str, ...]]:
        return [(
            str(self.n),
            str(len(self.selected)),
            _fmt_set(self.selected),
            _fmt(self.sp0),
            _fmt(self.sp0_mc),
            _fmt(self.raw_mass),
            str(self.seed),
        )]


def run_sp(config: ExperimentConfig) -> SpEvaluation:
    """Evaluate sp_0 for the config's explicit selected set."""
    if config.selected is None:
        raise ConfigError("'selected' is required for the sp command")
    inst = resolve_instance(config)
    if config.selected and config.selected[-1] >= inst.graph.n:
        raise ConfigError("'selected' references an agent beyond n")
    mass = influencer_mass(inst.graph, inst.theta, config.selected, config.omega)
    sp0 = (mass + 1.0) / (inst.graph.n + 1)
    sp0_mc = None
    if config.mc is not None:
        budget = _mc_budget(config, inst.theta)
        action = InfluencerAction(frozenset(config.selected), config.omega, max(1, len(config.selected)))
        chain = build_chain(inst.graph, inst.theta, action)
        est = mc_estimate_sp0(chain, budget, stream_seed(config.seed, WALK_STREAM))
        sp0_mc = sp0_scale(est, inst.graph.n)
    return SpEvaluation(
        n=inst.graph.n,
        selected=config.selected,
        sp0=sp0,
        sp0_mc=sp0_mc,
        raw_mass=mass,
        seed=config.seed,
    )


def _dispatch_solver(
    tag: str, inst: ResolvedInstance, config: ExperimentConfig, k: int
) -> SelectionReport:
    graph, theta, omega = inst.graph, inst.theta, config.omega
    if tag == "greedy":
        if config.mc is not None:
            walk_seed = stream_seed(config.seed, WALK_STREAM, SOLVER_TAGS.index(tag), k)
            evaluator = MonteCarlo(_mc_budget(config, theta), walk_seed)
            return greedy_select(graph, theta, omega, k, evaluator=evaluator)
        return greedy_select(graph, theta, omega, k)
    if tag == "exhaustive":
        return exhaustive_select(graph, theta, omega, k)
    if tag == "random":
        return random_select(graph.n, k, stream_rng(config.seed, BASELINE_STREAM, k))
    if tag == "gScore":
        if k != 1:
            raise SolverNotApplicableError("gScore identifies the K=1 optimum only")
        return big_theta_select(graph, omega)
    if tag == "smallTheta":
        if k != 1:
            raise SolverNotApplicableError("smallTheta identifies the K=1 optimum only")
        return small_theta_select(graph, omega)
    if tag == "rank1":
        if inst.rank1 is None:
            raise SolverNotApplicableError("rank1 solver needs a rank-1 graph source")
        subset = hyperbolic_solve(rank1_parameters(inst.rank1, k))
        return SelectionReport("rank1", subset, None, (), 0)
    if tag == "ring":
        if inst.ring is None:
            raise SolverNotApplicableError("ring solver needs a ring graph source")
        if k != 2:
            raise SolverNotApplicableError("ring solver places exactly K=2 links")
        if not inst.theta.is_uniform():
            raise SolverNotApplicableError("ring solver needs uniform theta")
        pair = ring_solve_k2(RingModel(inst.ring, inst.theta.uniform_value(), omega))
        return SelectionReport("ring", tuple(sorted(pair)), None, (), inst.graph.n - 2)
    raise SolverNotApplicableError(f"unknown solver {tag!r}")


def run_optimize(config: ExperimentConfig) -> list[ReportRow]:
    """Run every requested solver at every K; canonical (solver, K) order."""
    inst = resolve_instance(config)
    rows: list[ReportRow] = []
    for tag in config.solvers:
        for k in config.k_values:
            start = time.perf_counter()
            report = _dispatch_solver(tag, inst, config, k)
            wall = time.perf_counter() - start
            mass = influencer_mass(inst.graph, inst.theta, report.selected, config.omega)
            sp0 = (mass + 1.0) / (inst.graph.n + 1)
            sp0_mc = None
            if config.mc is not None:
                budget = _mc_budget(config, inst.theta)
                action = InfluencerAction(frozenset(report.selected), config.omega, k)
                chain = build_chain(inst.graph, inst.theta, action)
                walk_seed = stream_seed(config.seed, WALK_STREAM, SOLVER_TAGS.index(tag), k)
                est = mc_estimate_sp0(chain, budget, walk_seed)
                sp0_mc = sp0_scale(est, inst.graph.n)
            rows.append(
                ReportRow(
                    solver=tag,
                    k=k,
                    selected=report.selected,
                    sp0=sp0,
                    sp0_mc=sp0_mc,
                    raw_mass=mass,
                    wall_time=wall,
                    evaluations=report.evaluations,
                    seed=config.seed,
                )
            )
    rows.sort(key=lambda r: (r.solver, r.k))
    return rows


@dataclass(frozen=True)
class PhaseMap:
    """Exhaustive K=1 winner (1-based) at every (theta, omega) grid cell."""

    thetas: tuple[float, ...]
    omegas: tuple[float, ...]
    winners: np.ndarray

    HEADER = ("theta", "omega", "winner")

    def records(self) -> list[tuple[str, ...]]:
        out = []
        for i, th in enumerate(self.thetas):
            for j, om in enumerate(self.omegas):
                out.append((_fmt(th), _fmt(om), str(int(self.winners[i, j]))))
        return out


def run_phase_map(config: ExperimentConfig) -> PhaseMap:
    """Map the K=1 exhaustive winner over the configured theta/omega grids."""
    if config.theta_grid is None or config.omega_grid is None:
        raise ConfigError("phase-map needs 'thetaGrid' and 'omegaGrid'")
    if config.k_values != (1,):
        raise ConfigError("phase-map is defined for K=1 only")
    inst = resolve_instance(config)
    winners = np.zeros((len(config.theta_grid), len(config.omega_grid)), dtype=int)
    for i, th in enumerate(config.theta_grid):
        profile = StubbornnessProfile.uniform(inst.graph.n, th)
        for j, om in enumerate(config.omega_grid):
            report = exhaustive_select(inst.graph, profile, om, 1)
            winners[i, j] = report.selected[0] + 1
    return PhaseMap(config.theta_grid, config.omega_grid, winners)


@dataclass(frozen=True)
class OrbitRow:
    """One rotation class of selections on the ring."""

    representative: tuple[int, ...]
    size: int
    r_value: float
    sp0: float


@dataclass(frozen=True)
class DispersionSweep:
    """Full-sweep dispersion-vs-power table plus the Pearson summary."""

    orbits: tuple[OrbitRow, ...]
    pearson: float | None
    subsets: int

    HEADER = ("orbit", "size", "R", "sp0", "pearson")

    def records(self) -> list[tuple[str, ...]]:
        out = [
            (_fmt_set(o.representative), str(o.size), _fmt(o.r_value), _fmt(o.sp0), NA)
            for o in self.orbits
        ]
        out.append(("summary", str(self.subsets), NA, NA, _fmt(self.pearson)))
        return out


def run_dispersion(config: ExperimentConfig) -> DispersionSweep:
    """Sweep all C(n, K) selections of a circulant ring; correlate R with sp0."""
    if config.circulant is None and config.ring is None:
        raise ConfigError("dispersion needs a circulant or ring graph source")
    if len(config.k_values) != 1:
        raise ConfigError("dispersion runs at a single K")
    inst = resolve_instance(config)
    if not inst.theta.is_uniform():
        raise ConfigError("dispersion needs uniform theta (orbit grouping relies on rotation symmetry)")
    k = config.k_values[0]
    subsets, values = sp0_all_subsets(inst.graph, inst.theta, config.omega, k, cap=EXHAUSTIVE_CAP)
    n = inst.graph.n
    r_values = np.array([circular_variance(s, n) for s in subsets])
    orbits: dict[tuple[int, ...], list[int]] = {}
    for pos, subset in enumerate(subsets):
        orbits.setdefault(orbit_representative(subset, n), []).append(pos)
    rows = [
        OrbitRow(rep, len(members), float(r_values[members[0]]), float(values[members[0]]))
        for rep, members in sorted(orbits.items())
    ]
    if r_values.std() == 0.0 or values.std() == 0.0:
        pearson = None
    else:
        pearson = float(np.corrcoef(r_values, values)[0, 1])
    return DispersionSweep(tuple(rows), pearson, len(subsets))


@dataclass(frozen=True)
class BudgetResult:
    """Walk budget derived from the accuracy knobs and the instance floor."""

    budget: SampleBudget
    theta_min: float
    omega: float
    sp_lower: float

    HEADER = ("epsilon", "delta", "sigma", "thetaMin", "omega", "spLower", "r", "ell")

    def records(self) -> list[tuple[str, ...]]:
        b = self.budget
        return [(
            _fmt(b.epsilon),
            _fmt(b.delta),
            _fmt(b.sigma),
            _fmt(self.theta_min),
            _fmt(self.omega),
            _fmt(self.sp_lower),
            str(b.r),
            str(b.ell),
        )]


def run_budget(config: ExperimentConfig) -> BudgetResult:
    """Evaluate the estimator's (r, ell) budget for the configured instance."""
    if config.mc is None:
        raise ConfigError("budget needs the mc evaluator parameters")
    inst = resolve_instance(config)
    budget = _mc_budget(config, inst.theta)
    return BudgetResult(
        budget=budget,
        theta_min=float(inst.theta.theta.min()),
        omega=config.omega,
        sp_lower=budget.sp_lower,
    )


@dataclass(frozen=True)
class ValidationSummary:
    """What a config resolves to, for the validate command."""

    n: int
    source: str
    theta_description: str
    omega: float
    k_values: tuple[int, ...]
    solvers: tuple[str, ...]
    evaluator: str

    def lines(self) -> list[str]:
        return [
            "config OK",
            f"graph: {self.source}, n={self.n}",
            f"theta: {self.theta_description}",
            f"omega: {_fmt(self.omega)}",
            f"K: {';'.join(str(k) for k in self.k_values)}",
            f"solvers: {';'.join(self.solvers)}",
            f"evaluator: {self.evaluator}",
        ]


def run_validate(config: ExperimentConfig) -> ValidationSummary:
    """Resolve the config fully; any error is surfaced as a config error."""
    inst = resolve_instance(config)
    if config.theta_value is not None:
        desc = f"uniform {_fmt(config.theta_value)}"
    elif config.theta_list is not None:
        desc = f"per-agent ({len(config.theta_list)} values)"
    else:
        lo, hi = config.theta_range
        desc = f"uniform-random in [{_fmt(lo)}, {_fmt(hi)}]"
    evaluator = "exact" if config.mc is None else (
        f"mc eps={_fmt(config.mc.epsilon)} delta={_fmt(config.mc.delta)} sigma={_fmt(config.mc.sigma)}"
    )
    return ValidationSummary(
        n=inst.graph.n,
        source=config.graph_source(),
        theta_description=desc,
        omega=config.omega,
        k_values=config.k_values,
        solvers=config.solvers,
        evaluator=evaluator,
    )


__all__ = [
    "GRAPH_STREAM",
    "THETA_STREAM",
    "WALK_STREAM",
    "BASELINE_STREAM",
    "SOLVER_TAGS",
    "NA",
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
