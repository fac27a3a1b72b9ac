# Compare the four PageRank solvers on the same graph.
#
# power      - damped power iteration, the reference iterative method
# neumann    - truncated series sum_{s<=S} c^s (1-c) 1 P^s; its total mass
#              is exactly n (1 - c^{S+1}), which makes truncation error
#              easy to reason about
# closed     - fixed point in the degree-scaled variable v = R/d, which
#              keeps v <= 1 (the degree bound) at every iterate
# dense      - LAPACK solve on the dense matrix, only for tiny graphs;
#              kept as an independent cross-check

import time

import numpy as np

from pagerank_tails import (
    DegreeDistribution,
    configuration_model,
    sample_degrees,
    solve_dense,
    solve_neumann,
    solve_power_iteration,
    solve_undirected_closed,
)


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


C = 0.85

# small graph first: all four solvers, including dense
dist = DegreeDistribution.power_law(2.5, k_min=2, k_max=40)
deg = sample_degrees(dist, 150, seed=11)
if deg.sum() % 2:
    deg[0] += 1
small = configuration_model(deg, seed=12)

ref, _ = timed(solve_dense, small, C)
print(f"n={small.n} (dense reference)")
rows = [
    ("power", *timed(solve_power_iteration, small, C, tol=1e-12)),
    ("closed", *timed(solve_undirected_closed, small, C, tol=1e-12)),
    ("neumann S=300", *timed(solve_neumann, small, C, series_depth=300)),
]
for name, pr, dt in rows:
    diff = np.abs(pr.values - ref.values).max()
    print(f"  {name:<14} {dt * 1e3:7.2f} ms   max |R - R_dense| = {diff:.2e}")

# larger graph: dense is out, compare the scalable three against each other
deg = sample_degrees(DegreeDistribution.power_law(2.5, 1, 1000), 200_000, seed=21)
if deg.sum() % 2:
    deg[0] += 1
big = configuration_model(deg, seed=22)
print(f"\nn={big.n}  edges={big.num_edges}")

power, t_pow = timed(solve_power_iteration, big, C, tol=1e-10)
closed, t_clo = timed(solve_undirected_closed, big, C, tol=1e-10)
print(f"  power   {t_pow:6.2f} s   (residual {power.residual:.1e})")
print(f"  closed  {t_clo:6.2f} s")
print(f"  max |power - closed| = {np.abs(power.values - closed.values).max():.2e}")

# the neumann truncation error is geometric in the depth: the missing
# total mass is exactly n c^{S+1}, and pointwise the tail of the series
# is at most c^{S+1} d_i (each term obeys the degree bound)
d_max = big.degrees.max()
for S in (25, 50, 100):
    part = solve_neumann(big, C, series_depth=S)
    gap = np.abs(part.values - closed.values).max()
    print(f"  neumann S={S:>3}: max gap {gap:.2e}   "
          f"(pointwise budget c^(S+1) d_max = {C ** (S + 1) * d_max:.2e})")
