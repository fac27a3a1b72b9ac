"""Random graph families with heavy-tailed degrees, plus the circulant union.

The three families mirror the structures the bound experiments run on:

* configuration model -- a uniform perfect matching of degree stubs, kept as
  a multigraph so the prescribed degrees are exact (self-loops count 2);
* preferential attachment -- vertices arrive one at a time and place their
  ``m`` edges in sub-steps, each target drawn with probability proportional
  to current degree plus ``delta``; self-loops are excluded, parallel edges
  are not;
* a deterministic union of circulants bridged into one connected graph,
  whose PageRank concentrates at 1 while the degree law stays heavy-tailed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadParametersError,
    IsolatedVertexError,
    OddStubCountError,
    UnreachableScheduleError,
)
from .graphs import Digraph, Graph, digraph_from_edge_list, from_edge_list
from .rng import as_generator

__all__ = [
    "DegreeDistribution",
    "sample_degrees",
    "configuration_model",
    "preferential_attachment",
    "circulant",
    "counterexample_graph",
    "CounterexampleInfo",
    "eulerian_digraph",
    "random_out_digraph",
]


@dataclass(frozen=True)
class DegreeDistribution:
    """A pmf on positive integer degrees.

    ``kind`` records how the pmf was built ("explicit" or "power_law"); the
    circulant-union schedule treats the two differently when capping its
    largest component degree.
    """

    support: np.ndarray
    probs: np.ndarray
    kind: str = "explicit"

    def __post_init__(self):
        support = np.array(self.support, dtype=np.int64, copy=True)
        probs = np.array(self.probs, dtype=np.float64, copy=True)
        if support.size == 0:
            raise BadParametersError("degree support is empty")
        if (support < 1).any():
            raise BadParametersError("degrees must be positive integers")
        if np.diff(support).min(initial=1) <= 0:
            raise BadParametersError("degree support must be strictly increasing")
        if (probs < 0).any():
            raise BadParametersError("probabilities must be non-negative")
        total = probs.sum()
        if abs(total - 1.0) > 1e-9:
            raise BadParametersError(f"probabilities sum to {total}, expected 1")
        probs = probs / total
        support.setflags(write=False)
        probs.setflags(write=False)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_pmf(cls, pmf: dict[int, float]) -> "DegreeDistribution":
        ks = sorted(pmf)
        return cls(
            support=np.array(ks, dtype=np.int64),
            probs=np.array([pmf[k] for k in ks], dtype=np.float64),
            kind="explicit",
        )

    @classmethod
    def power_law(cls, exponent: float, k_min: int = 1, k_max: int = 1000,
                  even_only: bool = False) -> "DegreeDistribution":
        """Discrete pmf proportional to k**(-exponent) on [k_min, k_max].

        ``k_max`` is the finite-size cutoff; callers building an n-vertex
        graph typically pass k_max = n.  With ``even_only`` the support is
        restricted to even degrees before normalizing.
        """
        if exponent <= 1.0:
            raise BadParametersError(f"power-law exponent must exceed 1, got {exponent}")
        if k_min < 1 or k_max < k_min:
            raise BadParametersError(f"need 1 <= k_min <= k_max, got [{k_min}, {k_max}]")
        support = np.arange(k_min, k_max + 1, dtype=np.int64)
        if even_only:
            support = support[support % 2 == 0]
            if support.size == 0:
                raise BadParametersError(f"no even degrees in [{k_min}, {k_max}]")
        weights = support.astype(np.float64) ** (-exponent)
        return cls(support=support, probs=weights / weights.sum(), kind="power_law")

    def pmf(self, k) -> np.ndarray:
        """Probability of each degree in ``k`` (0 off the support)."""
        k = np.asarray(k, dtype=np.int64)
        pos = np.searchsorted(self.support, k)
        pos = np.clip(pos, 0, self.support.size - 1)
        hit = self.support[pos] == k
        return np.where(hit, self.probs[pos], 0.0)

    def mean(self) -> float:
        return float(self.support @ self.probs)

    @property
    def even_support(self) -> bool:
        return bool((self.support % 2 == 0).all())


def sample_degrees(dist: DegreeDistribution, n: int,
                   seed: int | np.random.Generator | None = None) -> np.ndarray:
    """Draw n i.i.d. degrees; if the total is odd, bump the last one by 1.

    The parity repair keeps the stub count even so the configuration model is
    always applicable; it changes a single entry by one.
    """
    if n < 1:
        raise BadParametersError(f"need at least one vertex, got n={n}")
    rng = as_generator(seed)
    degrees = rng.choice(dist.support, size=n, p=dist.probs)
    if degrees.sum() % 2:
        degrees[-1] += 1
    return degrees


def configuration_model(degrees, seed: int | np.random.Generator | None = None) -> Graph:
    """Uniform multigraph with the given degree sequence.

    Each vertex contributes ``degrees[i]`` stubs; a uniformly random perfect
    matching of the stubs becomes the edge set.  Self-loops and parallel
    edges are kept, so the realized degrees (loops counted twice) equal the
    input exactly.
    """
    degrees = np.asarray(degrees, dtype=np.int64)
    if degrees.size and degrees.min() < 1:
        raise IsolatedVertexError(int(np.argmin(degrees)))
    total = int(degrees.sum())
    if total % 2:
        raise OddStubCountError(f"degree sum {total} is odd; cannot pair stubs")
    rng = as_generator(seed)
    stubs = np.repeat(np.arange(degrees.size, dtype=np.int64), degrees)
    stubs = stubs[rng.permutation(total)]
    edges = np.stack([stubs[0::2], stubs[1::2]], axis=1)
    return from_edge_list(degrees.size, edges)


class _UniformSupply:
    """Buffered uniforms: one numpy draw per block, cheap scalar access."""

    __slots__ = ("rng", "block", "buf", "pos")

    def __init__(self, rng: np.random.Generator, block: int = 1 << 14):
        self.rng = rng
        self.block = block
        self.buf = rng.random(block)
        self.pos = 0

    def __call__(self) -> float:
        if self.pos == self.block:
            self.buf = self.rng.random(self.block)
            self.pos = 0
        u = self.buf[self.pos]
        self.pos += 1
        return u


def preferential_attachment(n: int, m: int, delta: float = 0.0,
                            seed: int | np.random.Generator | None = None) -> Graph:
    """Grow a preferential-attachment multigraph with n vertices.

    Starts from two vertices joined by m parallel edges.  Each later vertex v
    places its m edges one sub-step at a time; with j of them already placed
    and t existing vertices, the target i is drawn with probability

        (deg(i) + delta) / (2 m (t - 1) + j + delta * t),

    where deg counts all edges placed so far.  The new vertex is never its
    own target (no self-loops) but may hit the same target repeatedly.
    Requires integer m >= 1 and delta > -m; the final graph has exactly
    m * (n - 1) edges and minimum degree m.
    """
    if n < 2:
        raise BadParametersError(f"need n >= 2, got {n}")
    if m < 1 or int(m) != m:
        raise BadParametersError(f"edges per vertex must be a positive integer, got {m}")
    m = int(m)
    delta = float(delta)
    if delta <= -m:
        raise BadParametersError(f"offset must exceed -m = {-m}, got {delta}")

    rng = as_generator(seed)
    uniform = _UniformSupply(rng)
    total_edges = m * (n - 1)
    targets = np.empty(total_edges - m, dtype=np.int64)
    endpoints = np.empty(2 * total_edges, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    endpoints[0:2 * m:2] = 0
    endpoints[1:2 * m:2] = 1
    deg[0] = deg[1] = m
    slots = 2 * m  # endpoints currently eligible as targets
    cursor = 0
    for v in range(2, n):
        delta_mass = delta * v
        for _ in range(m):
            if delta == 0.0:
                i = endpoints[int(uniform() * slots)]
            elif delta > 0.0:
                u = uniform() * (slots + delta_mass)
                if u < slots:
                    i = endpoints[int(u)]
                else:
                    i = int((u - slots) / delta_mass * v)
            else:
                # Degree-proportional proposal, thinned down to degree+delta.
                while True:
                    i = endpoints[int(uniform() * slots)]
                    if uniform() * deg[i] < deg[i] + delta:
                        break
            targets[cursor] = i
            cursor += 1
            endpoints[slots] = i
            slots += 1
            deg[i] += 1
        deg[v] = m
        endpoints[slots:slots + m] = v
        slots += m

    src = np.concatenate([
        np.zeros(m, dtype=np.int64),
        np.repeat(np.arange(2, n, dtype=np.int64), m),
    ])
    dst = np.concatenate([np.ones(m, dtype=np.int64), targets])
    return from_edge_list(n, np.stack([src, dst], axis=1))


def circulant(k: int, n: int) -> Graph:
    """k-regular circulant: vertex i joins i +- 1, ..., i +- k/2 modulo n.

    Requires even k with 2 <= k < n.  The transition matrix is doubly
    stochastic, so PageRank is identically 1 at every damping.
    """
    if k < 2 or k % 2 or k >= n:
        raise BadParametersError(f"need even k with 2 <= k < n, got k={k}, n={n}")
    half = k // 2
    u = np.repeat(np.arange(n, dtype=np.int64), half)
    shift = np.tile(np.arange(1, half + 1, dtype=np.int64), n)
    return from_edge_list(n, np.stack([u, (u + shift) % n], axis=1))


@dataclass(frozen=True)
class CounterexampleInfo:
    """Layout of a circulant-union instance."""

    threshold: int                      # largest admitted component degree
    component_degrees: list[int]
    component_sizes: list[int]
    offsets: list[int]                  # first vertex id of each component
    bridges: list[tuple[int, int]]
    n_built: int = field(default=0)


def counterexample_graph(dist: DegreeDistribution, n: int,
                         seed=None) -> tuple[Graph, CounterexampleInfo]:
    """Connected union of circulants whose PageRank concentrates at 1.

    For each even degree k in the support of ``dist`` with k below a size
    cap, build a circulant component on floor(n * p_k) vertices, keeping
    degrees in increasing order; components only appear while floor(n * p_k)
    >= k + 1 holds along the support.  For power-law pmfs the cap is
    floor(log2 n) so the largest degree grows slowly with n; explicit finite
    pmfs are admitted whole.  Consecutive components are then bridged by one
    edge each (from a mid-cycle vertex of the smaller-degree component to
    vertex 0 of the next), so exactly 2 * (num_components - 1) vertices end
    up one above their component degree.

    The construction is deterministic; ``seed`` is accepted for interface
    uniformity and ignored.
    """
    del seed
    if not dist.even_support:
        odd = int(dist.support[dist.support % 2 == 1][0])
        raise BadParametersError(f"support contains odd degree {odd}")
    if dist.kind == "power_law":
        cap = int(np.log2(n))
    else:
        cap = int(dist.support.max())

    degrees_used: list[int] = []
    sizes: list[int] = []
    for k, p_k in zip(dist.support, dist.probs):
        k = int(k)
        if k > cap:
            break
        size = int(n * p_k)
        if size < k + 1:
            break  # feasibility must hold along the whole admitted prefix
        degrees_used.append(k)
        sizes.append(size)
    if not degrees_used:
        raise UnreachableScheduleError(
            f"no circulant component fits at n={n}: need floor(n*p_k) >= k+1"
        )

    offsets = [0]
    for size in sizes[:-1]:
        offsets.append(offsets[-1] + size)
    total = offsets[-1] + sizes[-1]

    chunks = []
    for k, size, off in zip(degrees_used, sizes, offsets):
        half = k // 2
        u = np.repeat(np.arange(size, dtype=np.int64), half)
        shift = np.tile(np.arange(1, half + 1, dtype=np.int64), size)
        chunks.append(np.stack([u + off, (u + shift) % size + off], axis=1))
    # One bridge between consecutive components; endpoints are distinct
    # vertices (mid-cycle out, vertex 0 in) so no vertex carries two bridges.
    bridges = [
        (offsets[j] + sizes[j] // 2, offsets[j + 1])
        for j in range(len(sizes) - 1)
    ]
    if bridges:
        chunks.append(np.array(bridges, dtype=np.int64))
    graph = from_edge_list(total, np.concatenate(chunks, axis=0))
    info = CounterexampleInfo(
        threshold=int(degrees_used[-1]),
        component_degrees=degrees_used,
        component_sizes=sizes,
        offsets=offsets,
        bridges=bridges,
        n_built=total,
    )
    return graph, info


def eulerian_digraph(degrees, seed: int | np.random.Generator | None = None) -> Digraph:
    """Random directed multigraph with in-degree == out-degree == degrees.

    Pairs each out-stub with a uniformly chosen in-stub, the directed
    analogue of the configuration model.  Directed self-loops may occur and
    count toward both degrees.
    """
    degrees = np.asarray(degrees, dtype=np.int64)
    if degrees.size and degrees.min() < 1:
        raise IsolatedVertexError(int(np.argmin(degrees)))
    rng = as_generator(seed)
    owners = np.repeat(np.arange(degrees.size, dtype=np.int64), degrees)
    heads = owners[rng.permutation(owners.size)]
    return digraph_from_edge_list(degrees.size, np.stack([owners, heads], axis=1))


def random_out_digraph(n: int, out_degree: int = 2,
                       seed: int | np.random.Generator | None = None) -> Digraph:
    """Digraph where every vertex has the same out-degree, min in-degree >= 1.

    The first out-edge of each vertex follows a uniform random permutation
    (so every vertex receives at least one edge); the remaining out-edges hit
    uniform targets other than the source.
    """
    if n < 2 or out_degree < 1:
        raise BadParametersError(f"need n >= 2 and out_degree >= 1, got {n}, {out_degree}")
    rng = as_generator(seed)
    base = np.arange(n, dtype=np.int64)
    parts = [np.stack([base, rng.permutation(n).astype(np.int64)], axis=1)]
    for _ in range(out_degree - 1):
        raw = rng.integers(0, n - 1, size=n)
        extra = raw + (raw >= base)  # skip the source itself
        parts.append(np.stack([base, extra], axis=1))
    return digraph_from_edge_list(n, np.concatenate(parts, axis=0))
