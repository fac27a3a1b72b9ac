"""Random rooted trees arising as local limits, truncated at a fixed depth.

Two samplers are provided:

* ``sample_unimodular_tree`` -- the branching process matching sparse graphs
  with i.i.d. degrees: the root draws its child count from the degree pmf p,
  every other vertex draws from the size-biased offspring law
  p*_k = (k+1) p_{k+1} / mean(p).
* ``sample_polya_point_tree`` -- the preferential-attachment limit.  Vertices
  carry an age in (0, 1]; a vertex of age a spawns a fixed batch of older
  children (age CDF (x/a)**chi, i.e. ages u**(1/chi) * a) and a Poisson
  number of younger children whose ages follow an explicit density on
  [a, 1], with intensity weighted by a Gamma variable whose shape depends
  on the child label.

Vertices at the truncation depth draw their child counts (so their degrees
are known) without materializing the children.  Because those boundary
degrees are available, the depth-S partial sum of the root's PageRank series
is computed exactly, and the discarded tail is at most
root_degree * c**(S+1): in the degree-scaled form the s-th series term is a
sub-probability mass bounded by 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadParametersError, InfiniteMeanError, OutOfRangeError, \
    SampleSizeLimitError
from .generators import DegreeDistribution
from .pagerank import Damping
from .rng import as_generator

__all__ = [
    "LABEL_NONE",
    "LABEL_YOUNG",
    "LABEL_OLD",
    "TruncatedRootedTree",
    "PolyaParams",
    "size_biased_offspring",
    "sample_unimodular_tree",
    "sample_polya_point_tree",
    "root_pagerank_on_tree",
    "truncation_tail_bound",
    "tilde_degree_pmf",
    "tilde_degree_tail",
    "younger_age_cdf",
    "older_age_cdf",
    "root_children",
    "root_high_degree_count",
    "write_root_statistics_csv",
]

LABEL_NONE = 0   # the root carries no label
LABEL_YOUNG = 1
LABEL_OLD = 2


@dataclass(frozen=True)
class TruncatedRootedTree:
    """A rooted tree cut at ``max_depth``, vertices in breadth-first order.

    ``degree`` is the full degree including children that were counted but
    not materialized at the boundary; interior vertices have all children
    present as ids ``child_start[v] .. child_start[v] + child_count[v] - 1``.
    ``age``/``label`` are None for trees without vertex marks.
    """

    max_depth: int
    parent: np.ndarray       # -1 at the root
    depth: np.ndarray
    degree: np.ndarray
    child_start: np.ndarray
    child_count: np.ndarray
    age: np.ndarray | None = None
    label: np.ndarray | None = None

    @property
    def num_vertices(self) -> int:
        return self.parent.size

    @property
    def root_degree(self) -> int:
        return int(self.degree[0])

    def children(self, v: int) -> np.ndarray:
        s = int(self.child_start[v])
        return np.arange(s, s + int(self.child_count[v]))


@dataclass(frozen=True)
class PolyaParams:
    """Parameters of the preferential-attachment limit tree.

    ``m`` is the per-vertex edge budget of the finite model, ``delta`` the
    attachment offset; admissible when m >= 1 is an integer and delta > -m.
    """

    m: int
    delta: float = 0.0

    def __post_init__(self):
        if self.m < 1 or int(self.m) != self.m:
            raise BadParametersError(f"m must be a positive integer, got {self.m}")
        if self.delta <= -self.m:
            raise BadParametersError(f"delta must exceed -m = {-self.m}, got {self.delta}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "delta", float(self.delta))

    @property
    def age_exponent(self) -> float:
        """Exponent chi = (m + delta) / (2m + delta) of the older-child age law.

        Given a parent of age a, each older child's age has CDF (x / a)**chi
        on (0, a); equivalently it is sampled as u**(1/chi) * a.  This is the
        age law under which the tree is unimodular: the mass-transport check
        E[sum over root's children of 1/degree] = 1 holds (sampling with
        exponent chi instead provably inflates that mean above 1).
        """
        return (self.m + self.delta) / (2 * self.m + self.delta)

    @property
    def power_law_exponent(self) -> float:
        """Degree-tail exponent 3 + delta / m of the matching finite model."""
        return 3.0 + self.delta / self.m


def size_biased_offspring(dist: DegreeDistribution) -> tuple[np.ndarray, np.ndarray]:
    """Offspring law seen along an edge: p*_k = (k+1) p_{k+1} / mean.

    Returns (support, probs); the support is shifted down by one relative to
    the degree support because the edge used to reach the vertex is excluded.
    """
    mean = dist.mean()
    if not np.isfinite(mean) or mean <= 0:
        raise InfiniteMeanError(f"degree mean {mean} is not finite and positive")
    support = dist.support - 1
    probs = dist.support * dist.probs / mean
    return support, probs / probs.sum()


def sample_unimodular_tree(dist: DegreeDistribution, depth: int,
                           seed: int | np.random.Generator | None = None) -> TruncatedRootedTree:
    """Sample the branching-process tree truncated at ``depth``.

    The draw order is level by level, so truncating deeper with the same seed
    reproduces the shallower tree exactly on the shared levels (including the
    boundary child counts).
    """
    if depth < 0:
        raise BadParametersError(f"depth must be >= 0, got {depth}")
    rng = as_generator(seed)
    off_support, off_probs = size_biased_offspring(dist)

    parent = [-1]
    depths = [0]
    degree = [0]
    child_start = [0]
    child_count = [0]
    level = np.array([0])
    for s in range(depth + 1):
        if s == 0:
            counts = rng.choice(dist.support, size=1, p=dist.probs)
        else:
            counts = rng.choice(off_support, size=level.size, p=off_probs)
        boundary = s == depth
        for v, k in zip(level, counts):
            k = int(k)
            degree[v] = k if s == 0 else k + 1
            if not boundary:
                child_start[v] = len(parent)
                child_count[v] = k
                for _ in range(k):
                    parent.append(v)
                    depths.append(s + 1)
                    degree.append(0)
                    child_start.append(len(parent))
                    child_count.append(0)
        if boundary:
            break
        level = np.arange(level[-1] + 1 if s else 1, len(parent))
        if level.size == 0:
            break
    return TruncatedRootedTree(
        max_depth=depth,
        parent=np.asarray(parent, dtype=np.int64),
        depth=np.asarray(depths, dtype=np.int64),
        degree=np.asarray(degree, dtype=np.int64),
        child_start=np.asarray(child_start, dtype=np.int64),
        child_count=np.asarray(child_count, dtype=np.int64),
    )


def _positive_uniforms(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniforms in (0, 1): redraw the (measure-zero) exact zeros."""
    u = rng.random(size)
    while (u == 0.0).any():
        zeros = u == 0.0
        u[zeros] = rng.random(int(zeros.sum()))
    return u


# A Poisson mean above this is unrealizable (the draw itself would exceed any
# memory), so the sampler reports a size blow-up instead of letting numpy fail.
_POISSON_MEAN_CEIL = 1e15

# Discarded boundary-level age draws are consumed in blocks of this size.
_CONSUME_BLOCK = 1 << 22


def _ragged_offsets(counts: np.ndarray) -> np.ndarray:
    """Position of each flat element within its own segment.

    For counts (2, 0, 3) returns (0, 1, 0, 1, 2).
    """
    total = int(counts.sum())
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    return np.arange(total) - np.repeat(starts, counts)


def sample_polya_point_tree(params: PolyaParams, depth: int,
                            seed: int | np.random.Generator | None = None,
                            root_age: float | None = None,
                            max_vertices: int | None = None) -> TruncatedRootedTree:
    """Sample the preferential-attachment limit tree truncated at ``depth``.

    The tree is generated level by level; processing one level draws, in a
    fixed order (each batch in vertex order):

    1. uniforms u for the older children -- m_- per vertex, where m_- is m
       for the root and old-labeled vertices and m - 1 for young ones; the
       child ages are u**(1/chi) * a (age CDF (x/a)**chi);
    2. one Gamma weight per vertex, shape m + delta + 1 (old label) or
       m + delta (root, young);
    3. one Poisson younger-child count per vertex, mean
       weight * (1 - a**q) / a**q with q = 1 / (power_law_exponent - 1);
    4. uniforms for the younger ages, mapped through the inverse CDF
       (a**q + u (1 - a**q))**(1/q) and sorted within each family.

    The boundary level performs the same draws -- so deeper truncations of
    the same seed extend shallower ones bit-exactly -- but materializes no
    children; its step-4 uniforms are consumed blockwise and discarded,
    which keeps memory bounded even when a boundary family is huge.

    ``root_age`` forces the root's age instead of drawing it uniformly,
    which is how the age law is examined conditionally on the root's age.

    For power_law_exponent < 3 (delta < 0) the expected truncated size is
    infinite: every sample is finite, but sizes have a tail so heavy that
    occasional samples are astronomically large.  ``max_vertices`` bounds
    the total child budget (materialized plus boundary-counted) and raises
    ``SampleSizeLimitError`` beyond it.
    """
    if depth < 0:
        raise BadParametersError(f"depth must be >= 0, got {depth}")
    rng = as_generator(seed)
    m, delta = params.m, params.delta
    inv_chi = 1.0 / params.age_exponent
    q = 1.0 / (params.power_law_exponent - 1.0)
    inv_q = params.power_law_exponent - 1.0

    if root_age is None:
        root_age = float(_positive_uniforms(rng, 1)[0])
    elif not 0.0 < root_age <= 1.0:
        raise BadParametersError(f"root age must lie in (0, 1], got {root_age}")

    # per-level blocks, concatenated at the end
    parent_blocks = [np.array([-1], dtype=np.int64)]
    depth_blocks = [np.zeros(1, dtype=np.int64)]
    degree_blocks: list[np.ndarray] = []
    child_start_blocks: list[np.ndarray] = []
    child_count_blocks: list[np.ndarray] = []
    age_blocks = [np.array([root_age])]
    label_blocks = [np.array([LABEL_NONE], dtype=np.int8)]

    level_ids = np.zeros(1, dtype=np.int64)
    ages = age_blocks[0]
    labels = label_blocks[0]
    built = 1

    for s in range(depth + 1):
        k = level_ids.size
        m_minus = np.where(labels == LABEL_YOUNG, m - 1, m).astype(np.int64)
        total_old = int(m_minus.sum())
        u_old = _positive_uniforms(rng, total_old)
        older_ages = u_old ** inv_chi * np.repeat(ages, m_minus)

        shapes = np.where(labels == LABEL_OLD, m + delta + 1.0, m + delta)
        weights = rng.gamma(shapes)

        a_pow = ages ** q
        lam = weights * (1.0 - a_pow) / a_pow
        if lam.max(initial=0.0) > _POISSON_MEAN_CEIL:
            raise SampleSizeLimitError(float(lam.max()), _POISSON_MEAN_CEIL)
        n_young = rng.poisson(lam).astype(np.int64)
        total_young = int(n_young.sum())

        degree_blocks.append((0 if s == 0 else 1) + m_minus + n_young)
        boundary = s == depth
        total_children = total_old + total_young
        if max_vertices is not None and built + total_children > max_vertices:
            raise SampleSizeLimitError(built + total_children, max_vertices)

        if boundary:
            child_start_blocks.append(np.zeros(k, dtype=np.int64))
            child_count_blocks.append(np.zeros(k, dtype=np.int64))
            remaining = total_young
            while remaining > 0:
                block = min(remaining, _CONSUME_BLOCK)
                rng.random(block)
                remaining -= block
            break

        counts = m_minus + n_young
        starts = built + np.concatenate([[0], np.cumsum(counts)[:-1]])
        child_start_blocks.append(starts)
        child_count_blocks.append(counts)

        u_young = rng.random(total_young)
        seg = np.repeat(np.arange(k), n_young)
        u_young = u_young[np.lexsort((u_young, seg))]
        a_pow_rep = a_pow[seg]
        young_ages = (a_pow_rep + u_young * (1.0 - a_pow_rep)) ** inv_q

        # interleave: each vertex's older block precedes its younger block
        next_ages = np.empty(total_children)
        next_labels = np.empty(total_children, dtype=np.int8)
        next_parent = np.empty(total_children, dtype=np.int64)
        rel_starts = starts - built
        old_dest = np.repeat(rel_starts, m_minus) + _ragged_offsets(m_minus)
        young_dest = np.repeat(rel_starts + m_minus, n_young) + _ragged_offsets(n_young)
        next_ages[old_dest] = older_ages
        next_ages[young_dest] = young_ages
        next_labels[old_dest] = LABEL_OLD
        next_labels[young_dest] = LABEL_YOUNG
        next_parent[old_dest] = np.repeat(level_ids, m_minus)
        next_parent[young_dest] = np.repeat(level_ids, n_young)

        parent_blocks.append(next_parent)
        depth_blocks.append(np.full(total_children, s + 1, dtype=np.int64))
        age_blocks.append(next_ages)
        label_blocks.append(next_labels)

        level_ids = built + np.arange(total_children)
        ages = next_ages
        labels = next_labels
        built += total_children
        if total_children == 0:
            # no vertices below: remaining degrees/child arrays are complete
            break

    return TruncatedRootedTree(
        max_depth=depth,
        parent=np.concatenate(parent_blocks),
        depth=np.concatenate(depth_blocks),
        degree=np.concatenate(degree_blocks).astype(np.int64),
        child_start=np.concatenate(child_start_blocks),
        child_count=np.concatenate(child_count_blocks),
        age=np.concatenate(age_blocks),
        label=np.concatenate(label_blocks),
    )


def root_pagerank_on_tree(tree: TruncatedRootedTree, c, depth: int | None = None) -> float:
    """Exact depth-S partial sum of the root's PageRank series.

    Works in the degree-scaled form: the s-th term is
    root_degree * (1-c) * c^s * sum_j w_s(j) / degree(j), where w_s is the
    s-step random-walk mass started at the root.  Walks of length <= S never
    step out of a depth-S vertex, so boundary degrees make the sum exact.
    The result underestimates the untruncated value by at most
    ``truncation_tail_bound``.
    """
    c = c.c if isinstance(c, Damping) else Damping(float(c)).c
    S = tree.max_depth if depth is None else depth
    if not 0 <= S <= tree.max_depth:
        raise BadParametersError(f"evaluation depth {S} outside [0, {tree.max_depth}]")
    # Restrict to vertices at depth <= S so the result is bit-identical to
    # evaluating a tree that was truncated at S in the first place.
    n = int(np.searchsorted(tree.depth, S, side="right"))
    parent = tree.parent[:n]
    inv_deg = 1.0 / tree.degree[:n].astype(np.float64)
    walk = np.zeros(n)
    walk[0] = 1.0
    acc = 0.0
    factor = 1.0
    for s in range(S + 1):
        scaled = walk * inv_deg
        acc += factor * float(scaled.sum())
        if s < S:
            nxt = np.zeros(n)
            nxt[1:] = scaled[parent[1:]]  # parent passes mass down each child edge
            nxt += np.bincount(parent[1:], weights=scaled[1:], minlength=n)
            walk = nxt
            factor *= c
    return float(tree.degree[0]) * (1.0 - c) * acc


def truncation_tail_bound(tree: TruncatedRootedTree, c, depth: int | None = None) -> float:
    """Rigorous bound on the series mass discarded at truncation depth S."""
    c = c.c if isinstance(c, Damping) else Damping(float(c)).c
    S = tree.max_depth if depth is None else depth
    return float(tree.degree[0]) * c ** (S + 1)


def tilde_degree_pmf(params: PolyaParams, t) -> np.ndarray | float:
    """pmf of the degree law dominating a younger child's degree.

    P(d = t) = (m + delta) / ((t + delta) (t + delta + 1)) for t >= m.
    """
    t = np.asarray(t, dtype=np.float64)
    if (t < params.m).any():
        raise BadParametersError(f"degree below minimum m={params.m}")
    out = (params.m + params.delta) / ((t + params.delta) * (t + params.delta + 1.0))
    return float(out) if out.ndim == 0 else out


def tilde_degree_tail(params: PolyaParams, t) -> np.ndarray | float:
    """Tail P(d >= t) = (m + delta) / (t + delta) of the dominating law."""
    t = np.asarray(t, dtype=np.float64)
    if (t < params.m).any():
        raise BadParametersError(f"degree below minimum m={params.m}")
    out = (params.m + params.delta) / (t + params.delta)
    return float(out) if out.ndim == 0 else out


def younger_age_cdf(params: PolyaParams, parent_age: float, ages) -> np.ndarray | float:
    """CDF of a younger child's age given the parent's age.

    With q = 1 - chi, a younger child of a parent aged a has age CDF
    (y**q - a**q) / (1 - a**q) on [a, 1]; this is the law inverted by the
    sampler, so the pooled younger ages across samples with a common parent
    age follow it exactly.
    """
    if not 0.0 < parent_age < 1.0:
        raise OutOfRangeError(f"parent age must lie in (0, 1), got {parent_age}")
    q = 1.0 - params.age_exponent
    y = np.asarray(ages, dtype=np.float64)
    out = np.clip((y ** q - parent_age ** q) / (1.0 - parent_age ** q), 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def older_age_cdf(params: PolyaParams, parent_age: float, ages) -> np.ndarray | float:
    """CDF (x / a)**chi of an older child's age given the parent's age a."""
    if not 0.0 < parent_age < 1.0:
        raise OutOfRangeError(f"parent age must lie in (0, 1), got {parent_age}")
    x = np.asarray(ages, dtype=np.float64)
    out = np.clip((x / parent_age) ** params.age_exponent, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def root_children(tree: TruncatedRootedTree) -> np.ndarray:
    """Vertex ids of the root's children."""
    return tree.children(0)


def root_high_degree_count(tree: TruncatedRootedTree, alpha: float) -> int:
    """How many neighbors of the root have degree >= alpha."""
    kids = root_children(tree)
    return int(np.count_nonzero(tree.degree[kids] >= alpha))


def write_root_statistics_csv(path, rows) -> None:
    """Write rows ``sample_id,root_degree,root_pagerank_lower,tail_bound``."""
    with open(path, "w", newline="") as fh:
        fh.write("sample_id,root_degree,root_pagerank_lower,tail_bound\n")
        for sample_id, root_degree, lower, bound in rows:
            fh.write(f"{sample_id},{root_degree},{float(lower)!r},{float(bound)!r}\n")
