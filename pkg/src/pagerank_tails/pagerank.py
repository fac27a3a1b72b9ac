"""Graph-normalized PageRank: R = c * R P + (1 - c) * 1.

The transition weight from i to j is the edge multiplicity a_ij divided by
the degree of i (out-degree when directed), so the fixed point satisfies
sum_i R_i = n instead of the probability normalization; every componentwise
value stays >= 1 - c.

Three undirected routes are provided -- plain fixed-point iteration, the
truncated geometric series, and iteration on the degree-scaled variable
v_i = R_i / d_i -- plus a directed fixed-point solver and a dense direct
solve reserved for small instances.  The degree-scaled route exposes why
v_i <= 1 holds on every undirected graph, which is exactly the componentwise
bound R_i <= d_i that ``check_degree_bound`` verifies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import DanglingVertexError, NotConvergedError
from .graphs import Digraph, Graph

__all__ = [
    "Damping",
    "PageRankVector",
    "DegreeBoundReport",
    "DirectedRatioReport",
    "solve_power_iteration",
    "solve_neumann",
    "solve_undirected_closed",
    "solve_directed",
    "solve_dense",
    "check_degree_bound",
    "check_directed_ratio_bound",
    "write_pagerank_csv",
    "write_directed_pagerank_csv",
    "read_pagerank_csv",
]


@dataclass(frozen=True)
class Damping:
    """Damping factor, constrained to the open interval (0, 1)."""

    c: float

    def __post_init__(self):
        if not 0.0 < self.c < 1.0:
            raise ValueError(f"damping must lie strictly inside (0, 1), got {self.c}")


def _damping_value(c) -> float:
    if isinstance(c, Damping):
        return c.c
    return Damping(float(c)).c


@dataclass(frozen=True)
class PageRankVector:
    """Solver output: the vector, the damping used, and convergence metadata."""

    values: np.ndarray
    c: float
    method: str
    residual: float

    @property
    def n(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class DegreeBoundReport:
    """Worst excess of PageRank over degree (negative means slack)."""

    max_violation: float
    argmax_vertex: int
    num_violations: int
    tol: float

    @property
    def holds(self) -> bool:
        return self.num_violations == 0


@dataclass(frozen=True)
class DirectedRatioReport:
    """Check of R_i <= (K/m) * in_degree_i for directed graphs.

    K is the largest in/out degree ratio, m the smallest in-degree.  The bound
    is only claimed when m >= 1 and K < m / c; otherwise ``hypothesis_met`` is
    False and no violation is reported.
    """

    degree_ratio: float
    min_in_degree: int
    c: float
    hypothesis_met: bool
    max_violation: float | None
    num_violations: int
    tol: float

    @property
    def holds(self) -> bool:
        return self.hypothesis_met and self.num_violations == 0


# ---------------------------------------------------------------------------
# Transition operators
# ---------------------------------------------------------------------------

def _adjacency(graph: Graph) -> sparse.csr_array:
    data = np.ones(graph.indices.size, dtype=np.float64)
    return sparse.csr_array((data, graph.indices, graph.indptr), shape=(graph.n, graph.n))


def _reverse_adjacency(digraph: Digraph) -> sparse.csr_array:
    # Row v lists the sources of edges into v, one slot per parallel edge.
    data = np.ones(digraph.in_indices.size, dtype=np.float64)
    return sparse.csr_array(
        (data, digraph.in_indices, digraph.in_indptr), shape=(digraph.n, digraph.n)
    )


def _default_max_iter(mass: float, c: float, tol: float) -> int:
    # Geometric contraction at rate c; the initial step is bounded by the
    # total edge mass (degree-weighted norms start larger than n).
    return max(16, math.ceil(math.log(tol / (4.0 * mass)) / math.log(c)) + 32)


def _iterate_to_fixed_point(apply_once, start: np.ndarray, c: float, tol: float,
                            max_iter: int, weights: np.ndarray | None = None):
    """Run x <- apply_once(x) until the (weighted) L1 step is below tol.

    The map is a c-contraction in the relevant norm, so a step below tol
    certifies a fixed-point residual below c * tol for the returned iterate.
    """
    x = start
    gap = math.inf
    for _ in range(max_iter):
        nxt = apply_once(x)
        step = np.abs(nxt - x)
        gap = float((step * weights).sum()) if weights is not None else float(step.sum())
        x = nxt
        if gap <= tol:
            return x
    raise NotConvergedError(gap, tol, max_iter)


def solve_power_iteration(graph: Graph, c, tol: float = 1e-10,
                          max_iter: int | None = None) -> PageRankVector:
    """Fixed-point iteration for R = c R P + (1 - c) 1 on an undirected graph.

    Parameters
    ----------
    graph : Graph
    c : float or Damping
        Damping factor in (0, 1).
    tol : float
        L1 bound on the final fixed-point residual.
    max_iter : int, optional
        Iteration budget; defaults to the geometric-contraction estimate.
        Raises ``NotConvergedError`` when exhausted.
    """
    c = _damping_value(c)
    adj = _adjacency(graph)
    inv_deg = 1.0 / graph.degrees.astype(np.float64)
    offset = 1.0 - c

    def apply_once(r):
        return c * (adj @ (r * inv_deg)) + offset

    limit = max_iter if max_iter is not None else \
        _default_max_iter(float(graph.degrees.sum()), c, tol)
    r = _iterate_to_fixed_point(apply_once, np.ones(graph.n), c, tol, limit)
    residual = float(np.abs(r - apply_once(r)).sum())
    return PageRankVector(values=r, c=c, method="power_iteration", residual=residual)


def solve_neumann(graph: Graph, c, series_depth: int) -> PageRankVector:
    """Truncated series R_S = (1-c) * sum_{s<=S} c^s (1^T P^s).

    Each term preserves total mass n, so the truncation satisfies the exact
    identity  ||R_S||_1 = n (1 - c^{S+1})  up to float rounding.
    """
    c = _damping_value(c)
    if series_depth < 0:
        raise ValueError(f"series depth must be >= 0, got {series_depth}")
    adj = _adjacency(graph)
    inv_deg = 1.0 / graph.degrees.astype(np.float64)
    walk_mass = np.ones(graph.n)
    acc = walk_mass.copy()
    weight = 1.0
    for _ in range(series_depth):
        walk_mass = adj @ (walk_mass * inv_deg)
        weight *= c
        acc += weight * walk_mass
    r = (1.0 - c) * acc
    applied = c * (adj @ (r * inv_deg)) + (1.0 - c)
    residual = float(np.abs(r - applied).sum())
    return PageRankVector(values=r, c=c, method=f"neumann({series_depth})", residual=residual)


def solve_undirected_closed(graph: Graph, c, tol: float = 1e-10,
                            max_iter: int | None = None) -> PageRankVector:
    """Solve via the degree-scaled variable v = R / d.

    v satisfies v = c P v + (1-c) Q 1 with Q = diag(1/d); the iteration is a
    c-contraction in the degree-weighted L1 norm, which equals the plain L1
    norm of the R-equation residual.  Every iterate keeps v <= 1, the
    componentwise form of the degree bound.
    """
    c = _damping_value(c)
    adj = _adjacency(graph)
    deg = graph.degrees.astype(np.float64)
    inv_deg = 1.0 / deg
    offset = (1.0 - c) * inv_deg

    def apply_once(v):
        return c * ((adj @ v) * inv_deg) + offset

    limit = max_iter if max_iter is not None else \
        _default_max_iter(float(deg.sum()), c, tol)
    v = _iterate_to_fixed_point(apply_once, inv_deg.copy(), c, tol, limit, weights=deg)
    r = deg * v
    applied = c * (adj @ (r * inv_deg)) + (1.0 - c)
    residual = float(np.abs(r - applied).sum())
    return PageRankVector(values=r, c=c, method="undirected_closed_form", residual=residual)


def solve_directed(digraph: Digraph, c, tol: float = 1e-10,
                   max_iter: int | None = None) -> PageRankVector:
    """Fixed-point iteration with out-degree-normalized transitions."""
    c = _damping_value(c)
    if (digraph.out_degrees == 0).any():
        raise DanglingVertexError(int(np.argmin(digraph.out_degrees > 0)))
    rev = _reverse_adjacency(digraph)
    inv_out = 1.0 / digraph.out_degrees.astype(np.float64)
    offset = 1.0 - c

    def apply_once(r):
        return c * (rev @ (r * inv_out)) + offset

    limit = max_iter if max_iter is not None else \
        _default_max_iter(float(digraph.out_degrees.sum()), c, tol)
    r = _iterate_to_fixed_point(apply_once, np.ones(digraph.n), c, tol, limit)
    residual = float(np.abs(r - apply_once(r)).sum())
    return PageRankVector(values=r, c=c, method="power_iteration", residual=residual)


_DENSE_LIMIT = 200


def solve_dense(graph: Graph | Digraph, c) -> PageRankVector:
    """Direct dense solve of (I - c P)^T R = (1-c) 1; test oracle for small n.

    Deliberately shares no code with the iterative paths: the transition
    matrix is densified and handed to a LAPACK solve.
    """
    c = _damping_value(c)
    n = graph.n
    if n > _DENSE_LIMIT:
        raise ValueError(f"dense solve is limited to n <= {_DENSE_LIMIT}, got {n}")
    a = np.zeros((n, n))
    if isinstance(graph, Digraph):
        src = np.repeat(np.arange(n), graph.out_degrees)
        np.add.at(a, (src, graph.out_indices), 1.0)
        out_deg = graph.out_degrees.astype(np.float64)
    else:
        src = np.repeat(np.arange(n), graph.degrees)
        np.add.at(a, (src, graph.indices), 1.0)
        out_deg = graph.degrees.astype(np.float64)
    p = a / out_deg[:, None]
    r = np.linalg.solve(np.eye(n) - c * p.T, (1.0 - c) * np.ones(n))
    return PageRankVector(values=r, c=c, method="dense_direct", residual=0.0)


# ---------------------------------------------------------------------------
# Bound checks
# ---------------------------------------------------------------------------

def check_degree_bound(pagerank: PageRankVector | np.ndarray, graph: Graph,
                       tol: float = 1e-8) -> DegreeBoundReport:
    """Verify R_i <= d_i componentwise, up to ``tol``."""
    values = pagerank.values if isinstance(pagerank, PageRankVector) else np.asarray(pagerank)
    excess = values - graph.degrees
    worst = int(np.argmax(excess))
    return DegreeBoundReport(
        max_violation=float(excess[worst]),
        argmax_vertex=worst,
        num_violations=int(np.count_nonzero(excess > tol)),
        tol=tol,
    )


def check_directed_ratio_bound(digraph: Digraph, pagerank: PageRankVector | np.ndarray,
                               c, tol: float = 1e-8) -> DirectedRatioReport:
    """Verify R_i <= (K/m) * in_degree_i when K < m / c.

    K = max_i in_degree_i / out_degree_i and m = min_i in_degree_i >= 1 are
    the quantities the bound is stated in; when the ratio hypothesis fails the
    report says so instead of claiming a violation.
    """
    c = _damping_value(c)
    values = pagerank.values if isinstance(pagerank, PageRankVector) else np.asarray(pagerank)
    in_deg = digraph.in_degrees.astype(np.float64)
    out_deg = digraph.out_degrees.astype(np.float64)
    ratio = float((in_deg / out_deg).max())
    min_in = int(digraph.in_degrees.min())
    met = min_in >= 1 and ratio < min_in / c
    if not met:
        return DirectedRatioReport(ratio, min_in, c, False, None, 0, tol)
    excess = values - (ratio / min_in) * in_deg
    return DirectedRatioReport(
        degree_ratio=ratio,
        min_in_degree=min_in,
        c=c,
        hypothesis_met=True,
        max_violation=float(excess.max()),
        num_violations=int(np.count_nonzero(excess > tol)),
        tol=tol,
    )


# ---------------------------------------------------------------------------
# CSV serialization
# ---------------------------------------------------------------------------

def write_pagerank_csv(path, graph: Graph, pagerank: PageRankVector) -> None:
    """Write rows ``vertex,degree,pagerank``; floats use shortest round-trip form."""
    with open(path, "w", newline="") as fh:
        fh.write("vertex,degree,pagerank\n")
        for v in range(graph.n):
            fh.write(f"{v},{graph.degrees[v]},{float(pagerank.values[v])!r}\n")


def write_directed_pagerank_csv(path, digraph: Digraph, pagerank: PageRankVector) -> None:
    """Directed variant with rows ``vertex,in_degree,out_degree,pagerank``."""
    with open(path, "w", newline="") as fh:
        fh.write("vertex,in_degree,out_degree,pagerank\n")
        for v in range(digraph.n):
            fh.write(
                f"{v},{digraph.in_degrees[v]},{digraph.out_degrees[v]},"
                f"{float(pagerank.values[v])!r}\n"
            )


def read_pagerank_csv(path) -> dict[str, np.ndarray]:
    """Read a PageRank CSV back into column arrays keyed by header name."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        raw = np.loadtxt(fh, delimiter=",", ndmin=2)
    out: dict[str, np.ndarray] = {}
    for j, name in enumerate(header):
        col = raw[:, j] if raw.size else np.empty(0)
        out[name] = col.astype(np.int64) if name != "pagerank" else col
    return out
