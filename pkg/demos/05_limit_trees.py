# Root PageRank on the two limiting trees.
#
# Large sparse random graphs look locally like rooted trees: from a uniform
# root, the configuration model converges to a branching-process tree whose
# non-root offspring law is the size-biased degree law shifted by one, and
# preferential attachment converges to a tree whose vertices carry ages in
# (0, 1] and spawn "older" and "younger" children from age-dependent laws.
#
# PageRank restricted to deeper and deeper neighborhoods becomes a function
# of the tree alone, so Monte Carlo on the tree predicts finite-graph root
# averages.  Two checks below:
#
#   1. unimodular branching tree: the truncated root mean should approach
#      1 - c^{S+1} (and the total mean is exactly 1 in the n-normalized scale);
#   2. attachment limit tree: the root degree at m=1, delta=0 has the exact
#      law P(d = k) = 4 / (k (k+1) (k+2)).

import math

import numpy as np

from pagerank_tails import (
    LABEL_OLD,
    LABEL_YOUNG,
    DegreeDistribution,
    PolyaParams,
    rng,
    root_pagerank_on_tree,
    sample_polya_point_tree,
    sample_unimodular_tree,
    truncation_tail_bound,
)

C = 0.5
DEPTH = 4
REPS = 20_000

# ---- branching-process tree ----------------------------------------------
dist = DegreeDistribution.power_law(2.5, k_min=1, k_max=50)
vals = np.empty(REPS)
tail_budget = np.empty(REPS)
for i in range(REPS):
    tree = sample_unimodular_tree(dist, DEPTH, seed=rng.stream(99, "uni", i))
    vals[i] = root_pagerank_on_tree(tree, C)
    tail_budget[i] = truncation_tail_bound(tree, C)

target = 1.0 - C ** (DEPTH + 1)
se = vals.std(ddof=1) / math.sqrt(REPS)
print("branching-process tree, depth", DEPTH)
print(f"  mean truncated root PageRank = {vals.mean():.4f} +- {se:.4f}")
print(f"  series target 1 - c^(S+1)    = {target:.4f}")
print(f"  mean truncation tail bound   = {tail_budget.mean():.4f}")

# ---- attachment limit tree -----------------------------------------------
params = PolyaParams(m=1, delta=0.0)
counts: dict[int, int] = {}
for i in range(REPS):
    tree = sample_polya_point_tree(params, depth=1, seed=rng.stream(99, "polya", i))
    d = int(tree.degree[0])
    counts[d] = counts.get(d, 0) + 1

print("\nattachment limit tree, m=1 delta=0: root degree law")
print("   k   observed   exact 4/(k(k+1)(k+2))")
for k in range(1, 7):
    exact = 4.0 / (k * (k + 1) * (k + 2))
    print(f"  {k:>2}   {counts.get(k, 0) / REPS:8.4f}   {exact:8.4f}")

# the root's children split into at most m older vertices and a random
# number of younger ones; forcing an early root age makes the younger
# block visible (young children arrive at ages above the parent's)
tree = sample_polya_point_tree(params, depth=2, seed=rng.stream(99, "polya", 0),
                               root_age=0.2)
root_kids = np.flatnonzero(tree.parent == 0)
kinds = {LABEL_OLD: "old", LABEL_YOUNG: "young"}
print(f"\none sampled tree with forced root age {tree.age[0]}: "
      f"{len(root_kids)} children:")
for v in root_kids:
    print(f"  {kinds[tree.label[v]]:<6} age {tree.age[v]:.3f}")
