"""
Error taxonomy for the antipath toolkit.

Validation failures subclass ValueError so callers that only care about
"bad input" can keep catching ValueError.
"""

from typing import Optional


class ToolkitError(Exception):
    """Base class for every error raised by the toolkit."""


class InvalidGraphError(ToolkitError, ValueError):
    """Malformed graph: loops, 2-cycles, out-of-range vertices, bad codes or text."""


class InvalidWitnessError(ToolkitError, ValueError):
    """An antipath or anticycle that does not hold in the host graph."""


class PreconditionError(ToolkitError, ValueError):
    """An operation was called outside its precondition (including unmet theorem hypotheses)."""


class ResourceGuardError(ToolkitError):
    """A request would run an unbounded search (exhaustive n, solver n, Stein k, shard range)."""


class TheoremCounterexampleError(ToolkitError):
    """A graph meets a theorem hypothesis but no witness exists. Always a research event."""

    def __init__(self, message: str, code: Optional[int] = None, n: Optional[int] = None):
        super().__init__(message)
        self.code = code
        self.n = n
