"""Exception types shared across the package."""

from __future__ import annotations


class FJPowerError(Exception):
    """Base class for all errors raised by this package."""


class NonStochasticError(FJPowerError):
    """A weight matrix row does not sum to 1, or the matrix is malformed."""

    def __init__(self, message: str, row: int | None = None, row_sum: float | None = None):
        super().__init__(message)
        self.row = row
        self.row_sum = row_sum


class NegativeEntryError(FJPowerError):
    """A matrix that must be nonnegative has a negative entry."""

    def __init__(self, i: int, j: int, value: float):
        super().__init__(f"negative entry {value!r} at ({i}, {j})")
        self.i = i
        self.j = j
        self.value = value


class ZeroOutDegreeError(FJPowerError):
    """An adjacency row has no positive entry, so it cannot be normalized."""

    def __init__(self, node: int):
        super().__init__(f"node {node} has zero out-degree")
        self.node = node


class EdgeListParseError(FJPowerError):
    """An edge-list or matrix file line could not be parsed."""

    def __init__(self, line_no: int, text: str, reason: str = ""):
        detail = f": {reason}" if reason else ""
        super().__init__(f"line {line_no}: cannot parse {text!r}{detail}")
        self.line_no = line_no
        self.text = text


class NotNormalizedError(FJPowerError):
    """A generator or weight vector does not sum to 1 within tolerance."""


class SingularSystemError(FJPowerError):
    """A linear system that the model requires to be solvable is singular."""


class HeterogeneousStubbornnessError(FJPowerError):
    """An operation requiring uniform stubbornness got a non-uniform profile."""


class ZeroOmegaError(FJPowerError):
    """An operation requiring omega > 0 got omega = 0."""


class BudgetExceedsNError(FJPowerError):
    """Selection budget K exceeds the number of agents."""

    def __init__(self, k: int, n: int):
        super().__init__(f"budget K={k} exceeds agent count n={n}")
        self.k = k
        self.n = n


class CombinatorialExplosionError(FJPowerError):
    """A subset enumeration would exceed the configured cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"C(n,K) = {count} exceeds cap {cap}")
        self.count = count
        self.cap = cap


class AlreadySelectedError(FJPowerError):
    """Marginal gain requested for an agent already in the selected set."""

    def __init__(self, agent: int):
        super().__init__(f"agent {agent} is already selected")
        self.agent = agent


class TiedMaximumError(FJPowerError):
    """A selector requiring a unique maximizer found a tie."""

    def __init__(self, tied: tuple[int, ...]):
        super().__init__(f"maximum attained by several agents: {tied}")
        self.tied = tied


class PremiseNotMatchedError(FJPowerError):
    """Input does not match any premise pattern of a special-case solver."""


class CounterexampleFoundError(FJPowerError):
    """A structural property check failed; carries the replay payload."""

    def __init__(self, message: str, payload: dict):
        super().__init__(f"{message}; replay payload: {payload!r}")
        self.payload = payload


class NoFixedPointError(FJPowerError):
    """The hyperbolic solver exhausted all probes without a fixed point."""


class ParameterDomainError(FJPowerError):
    """A scalar parameter lies outside its documented domain."""


class EmptySetError(FJPowerError):
    """An operation requiring a nonempty selection got an empty one."""


class ConfigError(FJPowerError):
    """An experiment configuration file is missing, malformed, or invalid."""


class SolverNotApplicableError(FJPowerError):
    """A requested solver cannot run on the configured instance."""
