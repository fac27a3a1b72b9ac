# Tail index of PageRank on preferential-attachment graphs.
#
# In the attachment model with m edges per new vertex and fitness offset
# delta > -m, the degree distribution has P(D = k) ~ k^(-tau) with
# tau = 3 + delta/m.  Since the PageRank tail tracks the degree tail from
# both sides, the Hill estimator applied to the PageRank values should
# recover the same exponent.  (Hill estimates the CCDF exponent tau - 1;
# we report tau = 1 + estimate.)

from pagerank_tails import hill_estimator, preferential_attachment, solve_undirected_closed

N = 200_000
C = 0.85
K_TOP = 2_000  # order statistics used by Hill

print(f"n={N}, {K_TOP} top order statistics per estimate")
print("    m  delta   predicted tau   tau from R (Hill)   tau from D (Hill)")
for m, delta in [(1, 0.0), (2, 0.0), (2, 1.0), (2, -0.5), (3, 1.5)]:
    g = preferential_attachment(N, m, delta, seed=1000 + round(10 * delta) + m)
    pr = solve_undirected_closed(g, C, tol=1e-9)

    est_r = hill_estimator(pr.values, k_top=K_TOP)
    est_d = hill_estimator(g.degrees.astype(float), k_top=K_TOP)
    predicted = 3.0 + delta / m
    print(f"   {m:>2}  {delta:5.2f}   {predicted:13.3f}   "
          f"{1.0 + est_r.estimate:8.3f} +- {est_r.std_error:4.2f}"
          f"      {1.0 + est_d.estimate:8.3f}")
