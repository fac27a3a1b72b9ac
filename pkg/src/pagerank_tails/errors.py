"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "IsolatedVertexError",
    "OutOfRangeError",
    "DanglingVertexError",
    "NotConvergedError",
    "OddStubCountError",
    "BadParametersError",
    "UnreachableScheduleError",
    "EmptySampleError",
    "InsufficientSampleError",
    "InfiniteMeanError",
    "SampleSizeLimitError",
]


class IsolatedVertexError(ValueError):
    """A vertex has degree zero where every vertex must have at least one edge."""

    def __init__(self, vertex: int):
        self.vertex = int(vertex)
        super().__init__(f"vertex {vertex} is isolated (degree 0)")


class OutOfRangeError(ValueError):
    """An edge endpoint lies outside [0, n)."""


class DanglingVertexError(ValueError):
    """A vertex has out-degree zero, so its transition row is undefined."""

    def __init__(self, vertex: int):
        self.vertex = int(vertex)
        super().__init__(f"vertex {vertex} has out-degree 0")


class NotConvergedError(RuntimeError):
    """An iterative solver exhausted its iteration budget above tolerance."""

    def __init__(self, residual: float, tol: float, iterations: int):
        self.residual = float(residual)
        self.tol = float(tol)
        self.iterations = int(iterations)
        super().__init__(
            f"residual {residual:.3e} above tolerance {tol:.3e} "
            f"after {iterations} iterations"
        )


class OddStubCountError(ValueError):
    """A degree sequence with odd total cannot be paired into edges."""


class BadParametersError(ValueError):
    """Model parameters outside their admissible range."""


class UnreachableScheduleError(ValueError):
    """No component of the circulant-union construction is feasible at this size."""


class EmptySampleError(ValueError):
    """An empirical estimator received zero observations."""


class InsufficientSampleError(ValueError):
    """Too few (or degenerate) observations for the requested estimator."""


class InfiniteMeanError(ValueError):
    """A distribution whose mean must be finite is not."""


class SampleSizeLimitError(RuntimeError):
    """A random sample outgrew the configured (or built-in) size budget.

    Heavy-tailed offspring laws put trees in an infinite-mean regime where
    individual samples are finite but can be astronomically large; this error
    reports the blow-up instead of exhausting memory.
    """

    def __init__(self, requested: float, limit: float):
        self.requested = float(requested)
        self.limit = float(limit)
        super().__init__(
            f"sample would grow to ~{requested:.3g} vertices, over the limit {limit:.3g}"
        )
