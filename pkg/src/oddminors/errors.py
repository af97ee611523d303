"""Exception types shared across the package."""


class OddMinorsError(Exception):
    """Base class for all package errors."""


class LoopEdge(OddMinorsError):
    """An edge joins a vertex to itself."""


class DuplicateEdge(OddMinorsError):
    """An edge appears twice and deduplication was disabled."""


class NegativeWeight(OddMinorsError):
    """A vertex or edge weight is negative."""


class WeightOverflow(OddMinorsError):
    """Weight arithmetic left the checked 64-bit range."""


class BadParameter(OddMinorsError):
    """A generator parameter is out of range."""


class Disconnected(OddMinorsError):
    """The operation requires a connected graph."""


class TooLarge(OddMinorsError):
    """Input exceeds the size bound of an exhaustive routine."""


class WidthTooLarge(OddMinorsError):
    """A decomposition is wider than the solver accepts."""


class NotBipartite(OddMinorsError):
    """The operation requires a bipartite graph."""


class BipartiteHost(OddMinorsError):
    """The operation requires a non-bipartite host."""


class NotClean(OddMinorsError):
    """The wall is not clean."""


class EarNotOnPerimeter(OddMinorsError):
    """An ear endpoint misses the wall perimeter."""


class OrderTooSmall(OddMinorsError):
    """Wall order is below the threshold for this construction."""


class BudgetExhausted(OddMinorsError):
    """Search stopped after spending its step budget (not a negative answer)."""


class PreconditionViolated(OddMinorsError):
    """A documented precondition does not hold for the given input."""


class BlindWidthExceeded(OddMinorsError):
    """A block falls outside every solvable class; carries the block's vertices."""

    def __init__(self, message, block=None):
        super().__init__(message)
        self.block = frozenset(block) if block is not None else None
