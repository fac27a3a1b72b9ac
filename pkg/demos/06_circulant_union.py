# A graph with heavy-tailed degrees but light-tailed PageRank.
#
# Take one circulant (ring with chords) per even degree k, sized so the
# degree histogram follows a prescribed heavy-tailed law, and string the
# components together with single bridge edges.  Inside a circulant every
# vertex looks the same, so PageRank is pinned near 1 by regularity --
# the degree tail is as heavy as you like, but P(R > k) dies immediately.
#
# This separates the two tail directions: the upper bound P(R>k) <= P(D>k)
# is structural and still holds, while the lower-bound ratio
# P(R > k) / P(D > beta k) collapses to zero past the concentration point.
# The diagnostic that fails is the high-degree-neighbors condition: a
# degree-k vertex here has *no* neighbors of degree much larger than k.

import numpy as np

from pagerank_tails import (
    DegreeDistribution,
    condition_probe,
    counterexample_graph,
    high_degree_neighbor_counts,
    preferential_attachment,
    ratio_bound_report,
    solve_undirected_closed,
)

N = 100_000
C = 0.85

dist = DegreeDistribution.power_law(2.5, k_min=1, k_max=1000, even_only=True)
g, info = counterexample_graph(dist, N)
print(f"n={g.n} across {len(info.component_sizes)} circulant components")
print(f"component degrees: {list(info.component_degrees)}")
print(f"component sizes:   {list(info.component_sizes)}")

pr = solve_undirected_closed(g, C, tol=1e-10)
print(f"\nPageRank range: [{pr.values.min():.4f}, {pr.values.max():.4f}]  "
      f"(concentration near 1)")
frac_near_one = float((np.abs(pr.values - 1.0) < 0.05).mean())
print(f"fraction of vertices with |R - 1| < 0.05: {frac_near_one:.4f}")

# degree tail is heavy, PageRank tail is empty past ~1
k_big = int(g.degrees.max() // 2)
print(f"\nP(D > {k_big}) = {float((g.degrees > k_big).mean()):.2e}"
      f"   but   P(R > 2) = {float((pr.values > 2).mean()):.1e}")

beta = 1.05 * 4.0 * g.degrees.mean() / (C * (1 - C))
rep = ratio_bound_report(pr.values, g.degrees, beta=beta, min_count=50)
usable = np.flatnonzero(rep.in_window)
print(f"\nratio report at beta={beta:.1f}: upper bound holds = {rep.upper_bound_holds}")
print(f"thresholds where the lower-bound ratio could even be measured: "
      f"{rep.thresholds[usable] if usable.size else 'none at all'}")

# The probe: for each vertex, count neighbor slots whose endpoint has
# degree >= alpha, and ask how often a degree-t vertex keeps at least a
# (1 - eps) fraction of such slots.  Here every neighbor of a degree-k
# vertex has degree k (same circulant), so for t >= alpha the joint and
# marginal frequencies coincide: ratio pinned at 1.  Hubs surrounded by
# equals receive only ~1/k of each neighbor's unit mass, which is exactly
# why R stays near 1.  On attachment graphs the same probe decays -- hubs
# sit among low-degree vertices that each donate a constant, so R ~ D.
alpha = float(np.median(info.component_degrees))
eps = 0.1
thresholds = np.arange(alpha, g.degrees.max(), 2.0)


def probe_range(graph, label):
    counts = high_degree_neighbor_counts(graph, alpha)
    probe = condition_probe(graph.degrees, counts, alpha=alpha, epsilon=eps,
                            thresholds=thresholds)
    ratios = probe.ratios[probe.populated(min_count=10)]
    print(f"  {label:<28} ratio range [{ratios.min():.3f}, {ratios.max():.3f}] "
          f"over {ratios.size} populated thresholds")


print(f"\nneighbor probe, alpha={alpha:.0f}, eps={eps} "
      f"(joint/marginal frequency of keeping >={1 - eps:.0%} alpha-plus neighbors):")
probe_range(g, "circulant union")
probe_range(preferential_attachment(N, 2, 0.0, seed=8), "preferential attachment m=2")
