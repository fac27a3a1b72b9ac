"""Finite multigraphs in compressed sparse adjacency form.

Undirected graphs store every edge in both endpoint rows, so a row lists one
slot per incident edge end.  A self-loop occupies two slots of its own row and
contributes 2 to the degree, which makes the loop's adjacency weight 2 and
keeps the handshake identity sum(degrees) == 2 * num_edges exact even for
multigraphs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DanglingVertexError, IsolatedVertexError, OutOfRangeError
from .rng import as_generator

__all__ = [
    "Graph",
    "Digraph",
    "RootSample",
    "from_edge_list",
    "digraph_from_edge_list",
    "degree_at_least",
    "high_degree_neighbor_counts",
    "uniform_root",
    "uniform_roots",
    "read_edge_list",
    "write_edge_list",
    "read_directed_edge_list",
    "write_directed_edge_list",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Graph:
    """Immutable undirected multigraph.

    Attributes
    ----------
    n : int
        Vertex count; vertices are 0..n-1.
    indptr, indices : ndarray
        CSR adjacency.  ``indices[indptr[v]:indptr[v+1]]`` lists the
        neighbors of ``v``, one entry per parallel edge, self-loops twice.
    degrees : ndarray
        Row lengths; every vertex has degree >= 1.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    degrees: np.ndarray

    @property
    def num_edges(self) -> int:
        return self.indices.size // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]


@dataclass(frozen=True)
class Digraph:
    """Immutable directed multigraph with both adjacency orientations.

    Every vertex has out-degree >= 1 (no dangling rows); in-degree 0 is
    allowed.  A directed self-loop counts once toward each of the two degrees.
    """

    n: int
    out_indptr: np.ndarray
    out_indices: np.ndarray
    in_indptr: np.ndarray
    in_indices: np.ndarray
    out_degrees: np.ndarray
    in_degrees: np.ndarray

    @property
    def num_edges(self) -> int:
        return self.out_indices.size

    def successors(self, v: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[v]:self.out_indptr[v + 1]]

    def predecessors(self, v: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[v]:self.in_indptr[v + 1]]


@dataclass(frozen=True)
class RootSample:
    """A uniformly chosen vertex together with the seed that produced it."""

    vertex: int
    seed: int


def _check_edges(n: int, edges) -> np.ndarray:
    if n <= 0:
        raise OutOfRangeError(f"vertex count must be positive, got {n}")
    e = np.asarray(edges, dtype=np.int64)
    if e.size == 0:
        e = e.reshape(0, 2)
    if e.ndim != 2 or e.shape[1] != 2:
        raise ValueError(f"edge list must have shape (m, 2), got {e.shape}")
    if e.size and (e.min() < 0 or e.max() >= n):
        bad = e[(e < 0).any(axis=1) | (e >= n).any(axis=1)][0]
        raise OutOfRangeError(f"edge {tuple(bad)} has an endpoint outside [0, {n})")
    return e


def _csr_from_arcs(n: int, src: np.ndarray, dst: np.ndarray):
    """Sort arcs by (source, target) and return (indptr, indices, row_lengths)."""
    order = np.lexsort((dst, src))
    counts = np.bincount(src, minlength=n).astype(np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return _frozen(indptr), _frozen(dst[order].copy()), counts


def from_edge_list(n: int, edges) -> Graph:
    """Build an undirected multigraph from an iterable of (u, v) pairs.

    Parallel edges may repeat in the list; a pair (i, i) is a self-loop and
    adds 2 to the degree of ``i``.  Raises ``OutOfRangeError`` for endpoints
    outside [0, n) and ``IsolatedVertexError`` if any vertex ends up with
    degree 0.
    """
    e = _check_edges(n, edges)
    src = np.concatenate([e[:, 0], e[:, 1]])
    dst = np.concatenate([e[:, 1], e[:, 0]])
    indptr, indices, degrees = _csr_from_arcs(n, src, dst)
    if (degrees == 0).any():
        raise IsolatedVertexError(int(np.argmin(degrees > 0)))
    return Graph(n=n, indptr=indptr, indices=indices, degrees=_frozen(degrees))


def digraph_from_edge_list(n: int, edges) -> Digraph:
    """Build a directed multigraph from (source, target) pairs.

    Raises ``DanglingVertexError`` if any vertex has out-degree 0.
    """
    e = _check_edges(n, edges)
    out_indptr, out_indices, out_deg = _csr_from_arcs(n, e[:, 0].copy(), e[:, 1].copy())
    in_indptr, in_indices, in_deg = _csr_from_arcs(n, e[:, 1].copy(), e[:, 0].copy())
    if (out_deg == 0).any():
        raise DanglingVertexError(int(np.argmin(out_deg > 0)))
    return Digraph(
        n=n,
        out_indptr=out_indptr,
        out_indices=out_indices,
        in_indptr=in_indptr,
        in_indices=in_indices,
        out_degrees=_frozen(out_deg),
        in_degrees=_frozen(in_deg),
    )


def degree_at_least(graph: Graph, v: int, alpha: float) -> int:
    """Number of adjacency slots of ``v`` whose neighbor has degree >= alpha.

    Parallel edges to the same high-degree neighbor count once per edge, and a
    self-loop counts twice, mirroring how the adjacency row is stored.
    """
    if not 0 <= v < graph.n:
        raise OutOfRangeError(f"vertex {v} outside [0, {graph.n})")
    return int(np.count_nonzero(graph.degrees[graph.neighbors(v)] >= alpha))


def high_degree_neighbor_counts(graph: Graph, alpha: float) -> np.ndarray:
    """Vectorized ``degree_at_least`` for every vertex at once."""
    hits = (graph.degrees[graph.indices] >= alpha).astype(np.int64)
    return np.add.reduceat(hits, graph.indptr[:-1])


def uniform_root(graph: Graph, seed: int) -> RootSample:
    """Draw one uniform vertex; equal seeds give equal vertices."""
    rng = as_generator(seed)
    return RootSample(vertex=int(rng.integers(graph.n)), seed=int(seed))


def uniform_roots(graph: Graph, count: int, seed: int | np.random.Generator) -> np.ndarray:
    """Draw ``count`` i.i.d. uniform vertices as an int array."""
    rng = as_generator(seed)
    return rng.integers(graph.n, size=count)


# ---------------------------------------------------------------------------
# Edge-list text format: first line "n m", then one "u v" line per edge.
# ---------------------------------------------------------------------------

def _undirected_edge_array(graph: Graph) -> np.ndarray:
    """Recover one row per edge from the doubled CSR adjacency."""
    src = np.repeat(np.arange(graph.n, dtype=np.int64), graph.degrees)
    upper = graph.indices > src
    u, v = src[upper], graph.indices[upper]
    # Self-loop slots appear twice per loop in their own row.
    eq = (graph.indices == src).astype(np.int64)
    loop_counts = np.add.reduceat(eq, graph.indptr[:-1]) // 2 if eq.any() else np.zeros(graph.n, np.int64)
    loops = np.repeat(np.arange(graph.n, dtype=np.int64), loop_counts)
    edges = np.concatenate(
        [np.stack([u, v], axis=1), np.stack([loops, loops], axis=1)], axis=0
    )
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return edges[order]


def _write_edges(path, n: int, edges: np.ndarray) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(f"{n} {len(edges)}\n")
        for a, b in edges:
            fh.write(f"{a} {b}\n")


def _read_edges(path):
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"{path}: header must be 'n m'")
        n, m = int(header[0]), int(header[1])
        edges = np.loadtxt(fh, dtype=np.int64, ndmin=2) if m else np.empty((0, 2), np.int64)
    if len(edges) != m:
        raise ValueError(f"{path}: header promises {m} edges, found {len(edges)}")
    return n, edges


def write_edge_list(path, graph: Graph) -> None:
    """Write ``graph`` in the text format (header "n m", then "u v" lines)."""
    _write_edges(path, graph.n, _undirected_edge_array(graph))


def read_edge_list(path) -> Graph:
    n, edges = _read_edges(path)
    return from_edge_list(n, edges)


def write_directed_edge_list(path, digraph: Digraph) -> None:
    src = np.repeat(np.arange(digraph.n, dtype=np.int64), digraph.out_degrees)
    edges = np.stack([src, digraph.out_indices], axis=1)
    _write_edges(path, digraph.n, edges)


def read_directed_edge_list(path) -> Digraph:
    n, edges = _read_edges(path)
    return digraph_from_edge_list(n, edges)
