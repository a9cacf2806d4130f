"""Exception hierarchy.

Anything derived from :class:`InstanceError` is a problem with the caller's
input; the CLI maps those to exit status 2.  :class:`InternalInvariantViolation`
signals a bug in this package and is never expected on valid input.
"""

from __future__ import annotations


class InstanceError(ValueError):
    """Malformed tree, dipath, priority or solution input."""


class NotATree(InstanceError):
    pass


class DuplicateArc(InstanceError):
    pass


class SelfLoop(InstanceError):
    pass


class BadVertexId(InstanceError):
    pass


class NotADipath(InstanceError):
    pass


class EmptyDipath(NotADipath):
    """A dipath must contain at least one arc."""


class PathTreeMismatch(InstanceError):
    pass


class PathNotThroughCenter(InstanceError):
    pass


class IncompleteOrder(InstanceError):
    pass


class InconsistentOrder(InstanceError):
    pass


class FormatError(InstanceError):
    """Syntax error in an instance or solution file."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class BipartiteError(ValueError):
    """Precondition failure of a bipartite-graph primitive."""


class PaletteTooSmall(BipartiteError):
    pass


class PrecoloringNotStarShaped(BipartiteError):
    pass


class PrecoloringConflict(BipartiteError):
    pass


class EdgeNotInGraph(BipartiteError):
    pass


class EdgeNotIncident(BipartiteError):
    pass


class AnchorNotInEveryMaxMatching(BipartiteError):
    pass


class SizeLimit(ValueError):
    """Instance too large for an exhaustive oracle."""


class InternalInvariantViolation(AssertionError):
    pass
