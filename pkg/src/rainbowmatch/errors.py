"""Exception hierarchy shared by the whole package.

Every error raised on a user-facing path derives from RainbowError so CLI
code can map "bad input" and "internal failure" to distinct exit codes.
"""


class RainbowError(Exception):
    """Base class for all package errors."""


class BadShape(RainbowError):
    """A grid of rows is not square or rows have unequal lengths."""


class NotLatin(RainbowError):
    """A square grid has a repeated symbol in some row or column."""


class SelfLoop(RainbowError):
    """A graph edge joins a vertex to itself."""


class DuplicateEdge(RainbowError):
    """The same vertex pair appears twice in an edge list."""


class ImproperColoring(RainbowError):
    """Two edges of equal color share an endpoint."""


class InfeasibleParameters(RainbowError):
    """Requested parameters admit no instance (e.g. degree >= order)."""


class PreconditionViolated(RainbowError):
    """An instance fails the stated hypothesis of a solver."""


class BudgetExceeded(RainbowError):
    """An exact search hit its node or size budget."""


class ColorsExhausted(RainbowError):
    """An expansion step found no usable color (all stalled or consumed)."""


class InternalInvariantBroken(RainbowError):
    """A step the construction guarantees to succeed failed anyway.

    Raising this is a bug report about the solver (or a disproof of the
    guarantee), never about the input.
    """
