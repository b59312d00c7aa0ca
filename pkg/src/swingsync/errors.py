"""Exception types shared across the toolkit."""


class SwingSyncError(Exception):
    """Base class for every error raised by this package."""


class DisconnectedNetwork(SwingSyncError):
    """The reactance graph does not connect every bus."""


class NonpositiveParameter(SwingSyncError):
    """A parameter violates its sign constraint (chi, M, E > 0; D >= 0)."""


class DuplicateLine(SwingSyncError):
    """Two lines share the same unordered bus pair."""


class BadBusIndex(SwingSyncError):
    """A line endpoint is outside 1..n+n_bar or joins a bus to itself."""


class BadIndex(SwingSyncError):
    """A generator index is outside 1..n, or i == j where a pair is required."""


class DimensionMismatch(SwingSyncError):
    """Vector or matrix sizes do not agree."""


class SingularSystem(SwingSyncError):
    """A linear solve failed to factor; the input data is numerically degenerate."""


class InvalidPartition(SwingSyncError):
    """Clusters are empty, overlap, or do not cover 1..n."""


class NonLaplacianResult(SwingSyncError):
    """An aggregated coupling matrix has a positive off-diagonal entry."""


class NonFiniteState(SwingSyncError):
    """Integration produced inf or nan; the step size is too large."""


class GridMismatch(SwingSyncError):
    """Two trajectories do not share the same time grid."""


class FileFormatError(SwingSyncError):
    """An input file does not match the expected schema."""
