"""Exception hierarchy shared across the package.

Every error that can escape the public API derives from DeltahullError so
callers (and the CLI) can map failures to exit codes in one place.
"""


class DeltahullError(Exception):
    """Base class for all package errors."""


class ParseError(DeltahullError):
    """Malformed instance, fan, or report document."""


class DimensionMismatch(ParseError):
    """Row/column counts in an input document do not line up."""


class DuplicateRow(ParseError):
    """Two constraint rows coincide after positive rescaling."""


class NotPointed(DeltahullError):
    """The constraint matrix has rank < n, so the polyhedron has no vertex."""


class Infeasible(DeltahullError):
    """The inequality system has no solution."""


class Unbounded(DeltahullError):
    """An operation that needs boundedness met an unbounded recession ray."""


class BudgetExceeded(DeltahullError):
    """A combinatorial scan would exceed its configured budget."""


class BoundViolated(DeltahullError):
    """A certified inequality check failed; carries the offending report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SingularMatrix(DeltahullError):
    """A square system that was expected to be invertible is singular."""


class SingularBasis(SingularMatrix):
    """A basis row set is linearly dependent."""


class NotAVertex(DeltahullError):
    """A claimed starting vertex does not have rank-n tight rows."""


class RankDeficient(DeltahullError):
    """A generator set expected to span the space does not."""


class PreconditionViolated(DeltahullError):
    """An input fails the stated domain restrictions of a check."""


class SingularUpdate(DeltahullError):
    """A rank-1 basis-inverse update hit a zero pivot."""


class InfeasiblePoint(DeltahullError):
    """A point claimed to lie in the polyhedron violates a constraint."""


class UnboundedLine(DeltahullError):
    """Internal inconsistency: a full-rank system admitted a free line."""


class EmptyAlphaInterval(DeltahullError):
    """Lifting found no admissible scale for a new vertex (construction bug)."""


class DisconnectedGraph(DeltahullError):
    """Diameter was requested for a graph that is not connected."""
