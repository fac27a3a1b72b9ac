# Tail comparison on a heavy-tailed configuration model.
#
# Upper direction: on any undirected graph P(R > k) <= P(D > k) pointwise,
# because R_i <= d_i vertex by vertex.  Lower direction: on graphs where
# high-degree vertices keep a decent fraction of high-degree neighbors,
# the PageRank tail also *dominates* a rescaled degree tail,
#
#     P(R > k) >= (1 - o(1)) P(D > beta k)   for beta past a threshold
#                                            ~ 4 E[D] / (c (1-c)) .
#
# Together the two directions say R and D have the same tail exponent.
# This script measures both on one large graph and draws the log-log CCDFs.

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from pagerank_tails import (
    DegreeDistribution,
    configuration_model,
    empirical_ccdf,
    ratio_bound_report,
    sample_degrees,
    solve_undirected_closed,
)

N = 300_000
TAU = 2.5
C = 0.85

deg = sample_degrees(DegreeDistribution.power_law(TAU, 1, 2000), N, seed=33)
if deg.sum() % 2:
    deg[0] += 1
g = configuration_model(deg, seed=34)
pr = solve_undirected_closed(g, C, tol=1e-10)
print(f"n={N}  mean degree={g.degrees.mean():.3f}  max degree={g.degrees.max()}")

# --- upper bound: CCDF of R sits below CCDF of D at every integer k -------
r_tail = empirical_ccdf(pr.values, thresholds=np.arange(0, g.degrees.max() + 1))
d_tail = empirical_ccdf(g.degrees, thresholds=np.arange(0, g.degrees.max() + 1))
violations = int((r_tail.counts > d_tail.counts).sum())
print(f"upper bound P(R>k) <= P(D>k): {violations} violated thresholds")

# --- lower bound: ratio table against the rescaled degree tail ------------
beta = 1.05 * 4.0 * g.degrees.mean() / (C * (1 - C))
rep = ratio_bound_report(pr.values, g.degrees, beta=beta, min_count=100)
window = rep.passing_window()
print(f"beta = {beta:.2f}")
print(f"usable thresholds (both counts >= {rep.min_count}): {int(rep.in_window.sum())}")
print(f"min ratio inside the window: {rep.min_window_ratio:.3f}")
print(f"passing window (ratio >= {1 - rep.tolerance}): {window}")

# the interesting regime is k in the window: show a few rows
print("\n    k    #R>k    #D>beta*k   ratio")
for i in np.flatnonzero(rep.in_window)[:8]:
    print(f"  {rep.thresholds[i]:5.1f}  {rep.numer_counts[i]:6d}   "
          f"{rep.denom_counts[i]:8d}   {rep.ratios[i]:.3f}")

# --- picture --------------------------------------------------------------
fig, ax = plt.subplots(figsize=(6, 4.5))
mask = r_tail.ccdf > 0
ax.loglog(r_tail.thresholds[mask], r_tail.ccdf[mask], label="P(R > k)")
mask = d_tail.ccdf > 0
ax.loglog(d_tail.thresholds[mask], d_tail.ccdf[mask], "--", label="P(D > k)")
# reference slope k^{-(tau-1)}
ks = np.array([3.0, g.degrees.max() / 3])
ax.loglog(ks, 0.5 * ks ** -(TAU - 1), ":", color="gray",
          label=f"slope -(tau-1) = {-(TAU - 1)}")
ax.set_xlabel("k")
ax.set_ylabel("tail probability")
ax.set_title(f"configuration model, tau={TAU}, n={N}")
ax.legend()
fig.tight_layout()
out = pathlib.Path(__file__).with_name("heavy_tail_ratio.png")
fig.savefig(out, dpi=150)
print(f"\nwrote {out}")
