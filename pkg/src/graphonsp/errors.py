"""Exception types raised across the library."""


class GraphonError(Exception):
    """Base class for all library errors."""


class EmptyGraphError(GraphonError):
    """Operation requires a graph with at least one vertex."""


class IsolatedVertexError(GraphonError):
    """Operation requires every vertex to have positive degree."""


class ZeroGraphonError(GraphonError):
    """Operation requires a graphon with positive 1-norm."""


class SupportMismatchError(GraphonError):
    """Step objects live on incompatible supports or grids."""


class ResolutionTooLargeError(GraphonError):
    """Exact mode requested above its combinatorial size limit."""


class ProbabilityRangeError(GraphonError):
    """Graphon value used as an edge probability exceeds 1."""


class ScheduleError(GraphonError):
    """Invalid sampling or growth schedule."""


class StepRequiredError(GraphonError):
    """Operation needs a step (discretized) representation."""


class RankDeficientError(GraphonError):
    """Regression design is numerically rank deficient."""


class EigenConvergenceError(GraphonError):
    """Iterative eigensolver failed to reach the residual tolerance."""

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals
