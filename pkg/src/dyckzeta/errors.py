"""Exception hierarchy. Every failure mode raised by the library lives here."""


class DyckZetaError(Exception):
    """Base class for all library errors."""


class InvalidGraph(DyckZetaError):
    """Graph description is malformed (bad endpoint, zero vertices, ...)."""


class InvalidVertex(DyckZetaError):
    """A vertex index is out of range for the graph at hand."""


class NotIrreducible(DyckZetaError):
    """Operation requires a strongly connected graph."""


class NoPerronRoot(DyckZetaError):
    """det(I - Az) has no root in (0, 1]; adjacency is nilpotent."""


class BudgetExceeded(DyckZetaError):
    """Enumeration exceeded its node budget."""


class NotInvertible(DyckZetaError):
    """Series division by a series with zero constant term."""


class DomainError(DyckZetaError):
    """Argument outside the domain of a series/numeric operation."""


class InvalidMatrix(DyckZetaError):
    """Series matrix is not square or dimensions do not match."""


class InternalInconsistency(DyckZetaError):
    """An exact-arithmetic integrality/positivity assertion failed.

    This signals a bug in the library, never a data condition.
    """


class SingularityBeforeRoot(DyckZetaError):
    """Numeric evaluation diverged before a sign change could be bracketed."""


class NoRoot(DyckZetaError):
    """No root found in the searched interval."""


class NoData(DyckZetaError):
    """No usable data points (e.g. all periodic counts are zero)."""


class DegenerateMinor(DyckZetaError):
    """A deleted-vertex characteristic polynomial vanished where evaluated."""


class BranchError(DyckZetaError):
    """Branch tracking of an algebraic function failed."""
