"""End-to-end acceptance checks, one test per numbered criterion.

Each test prints a single summary line with the measured quantity so the
verbose run reads as a scorecard.  Monte Carlo checks use fixed seeds; the
stated tolerances are calibrated to ~5 standard errors of the estimator, so
they are stable under reruns yet still falsify real regressions.
"""

import json
import math
from pathlib import Path

import numpy as np
import pytest
from scipy import stats

from pagerank_tails import (
    DegreeDistribution,
    ExperimentConfig,
    PolyaParams,
    check_degree_bound,
    check_directed_ratio_bound,
    circulant,
    condition_probe,
    configuration_model,
    counterexample_graph,
    digraph_from_edge_list,
    empirical_ccdf,
    eulerian_digraph,
    from_edge_list,
    hill_estimator,
    preferential_attachment,
    random_out_digraph,
    ratio_bound_report,
    root_children,
    root_high_degree_count,
    root_pagerank_on_tree,
    run_experiment,
    sample_degrees,
    sample_polya_point_tree,
    solve_dense,
    solve_directed,
    solve_neumann,
    solve_power_iteration,
    solve_undirected_closed,
    tilde_degree_tail,
    younger_age_cdf,
)
from pagerank_tails.graphs import Graph
from pagerank_tails.limit_trees import LABEL_YOUNG

C = 0.85


def even_power_law(k_max=1000):
    return DegreeDistribution.power_law(2.5, k_min=1, k_max=k_max, even_only=True)


def cm_graph(tau, n, seed) -> Graph:
    dist = DegreeDistribution.power_law(tau, 1, 1000)
    degrees = sample_degrees(dist, n, seed=seed)
    if degrees.sum() % 2:
        degrees[0] += 1
    return configuration_model(degrees, seed=seed + 1)


# ---------------------------------------------------------------------------
# Shared instances
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def cm_100k():
    """One configuration-model draw, n = 1e5, tau = 2.5, solved at c = 0.85."""
    graph = cm_graph(2.5, 100_000, seed=606)
    pr = solve_undirected_closed(graph, C, tol=1e-10)
    return graph, graph.degrees.astype(np.float64), pr.values


@pytest.fixture(scope="module")
def polya_population():
    """120k depth-1 trees at m=1, delta=0: per-root degree, qualifying-slot
    count at alpha=2, and the pooled degrees of younger children."""
    params = PolyaParams(1, 0.0)
    root_degrees = np.empty(120_000, dtype=np.int64)
    high_counts = np.empty(120_000, dtype=np.int64)
    young_degrees = []
    for s in range(root_degrees.size):
        tree = sample_polya_point_tree(params, 1, seed=s)
        root_degrees[s] = tree.degree[0]
        high_counts[s] = root_high_degree_count(tree, 2.0)
        kids = root_children(tree)
        young = kids[tree.label[kids] == LABEL_YOUNG]
        young_degrees.extend(tree.degree[young].tolist())
    return root_degrees, high_counts, np.asarray(young_degrees, dtype=np.int64)


@pytest.fixture(scope="module")
def circulant_unions():
    """The deterministic circulant-union instance at n = 1e4 and 1e5."""
    out = {}
    for n in (10_000, 100_000):
        graph, info = counterexample_graph(even_power_law(), n)
        pr = solve_undirected_closed(graph, C, tol=1e-10)
        out[n] = (graph, info, pr.values)
    return out


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------

def test_criterion_01_pagerank_below_degree_across_families():
    """1000 mixed graphs: max_i (R_i - d_i) <= 1e-8 at solver tol 1e-10."""
    worst = -math.inf
    count = 0
    for tau in (2.2, 2.5, 3.5):
        for n in (1000, 10_000):
            for rep in range(60):
                graph = cm_graph(tau, n, seed=1000 * count + rep)
                report = check_degree_bound(
                    solve_undirected_closed(graph, C, tol=1e-10), graph)
                worst = max(worst, report.max_violation)
                count += 1
    for m in (1, 2, 4):
        for delta in (-0.5, 0.0, 1.0):
            for rep in range(40):
                graph = preferential_attachment(2000, m, delta, seed=count + rep)
                report = check_degree_bound(
                    solve_undirected_closed(graph, C, tol=1e-10), graph)
                worst = max(worst, report.max_violation)
                count += 1
    dist = even_power_law()
    for i in range(280):
        graph, _ = counterexample_graph(dist, 600 + 69 * i)
        report = check_degree_bound(
            solve_undirected_closed(graph, C, tol=1e-10), graph)
        worst = max(worst, report.max_violation)
        count += 1
    print(f"criterion 1: {count} graphs, max(R - d) = {worst:.3e}")
    assert count == 1000
    assert worst <= 1e-8


def test_criterion_02_circulant_pagerank_identically_one():
    """Circulants (even k <= 12, n <= 1000): |R - 1| <= 1e-10 everywhere."""
    worst = 0.0
    for k in (2, 4, 6, 8, 10, 12):
        for n in (13, 100, 500, 1000):
            graph = circulant(k, n)
            for c in (0.5, 0.85, 0.99):
                pr = solve_undirected_closed(graph, c, tol=1e-13)
                worst = max(worst, float(np.abs(pr.values - 1.0).max()))
    print(f"criterion 2: max |R - 1| = {worst:.3e}")
    assert worst <= 1e-10


def test_criterion_03_solver_agreement_and_series_mass():
    """100 instances: three solvers within 1e-8; series mass exact to 1e-12."""
    worst_gap = 0.0
    worst_mass = 0.0
    cs = (0.3, 0.5, 0.85, 0.95)
    for i in range(100):
        c = cs[i % 4]
        n = 50 + 39 * i
        if i % 2:
            graph = cm_graph(2.5, n, seed=5000 + i)
        else:
            graph = preferential_attachment(n, 1 + i % 3, 0.5, seed=i)
        depth = math.ceil(math.log(1e-12 / graph.n) / math.log(c))
        # tol 1e-10 certifies max-norm error below tol/(1-c) ~= 2e-9 even at
        # c = 0.95; tighter tolerances sit under the weighted-L1 rounding
        # floor (~2E * eps) for the larger instances here.
        power = solve_power_iteration(graph, c, tol=1e-10).values
        closed = solve_undirected_closed(graph, c, tol=1e-10).values
        series = solve_neumann(graph, c, series_depth=depth)
        worst_gap = max(worst_gap,
                        float(np.abs(power - closed).max()),
                        float(np.abs(series.values - closed).max()))
        target = graph.n * (1.0 - c ** (depth + 1))
        worst_mass = max(worst_mass, abs(math.fsum(series.values) - target) / target)
    print(f"criterion 3: max solver gap = {worst_gap:.3e}, "
          f"max relative mass error = {worst_mass:.3e}")
    assert worst_gap <= 1e-8
    assert worst_mass <= 1e-12


def test_criterion_04_small_graphs_match_dense_solve():
    """Every solver agrees with a dense direct solve on all n <= 50 graphs."""
    undirected = [
        from_edge_list(5, [(0, 1), (0, 2), (0, 3), (0, 4)]),
        from_edge_list(3, [(0, 1), (1, 2)]),
        from_edge_list(2, [(0, 0), (0, 1)]),
        from_edge_list(3, [(0, 1), (1, 2), (2, 0)]),
        circulant(4, 20),
        counterexample_graph(DegreeDistribution.from_pmf({2: 0.6, 4: 0.4}), 20)[0],
    ]
    for seed in range(6):
        degrees = sample_degrees(DegreeDistribution.from_pmf(
            {1: 0.4, 2: 0.3, 3: 0.2, 4: 0.1}), 30, seed=seed)
        if degrees.sum() % 2:
            degrees[0] += 1
        undirected.append(configuration_model(degrees, seed=seed))
    for m, delta in ((1, 0.0), (2, -0.5), (3, 1.0)):
        undirected.append(preferential_attachment(40, m, delta, seed=m))
    directed = [
        digraph_from_edge_list(2, [(0, 1), (1, 0)]),
        digraph_from_edge_list(3, [(1, 0), (2, 0), (0, 1), (1, 2), (2, 1)]),
        eulerian_digraph(sample_degrees(DegreeDistribution.from_pmf(
            {1: 0.5, 2: 0.5}), 20, seed=8), seed=8),
        random_out_digraph(30, 2, seed=9),
    ]
    worst = 0.0
    for graph in undirected:
        assert graph.n <= 50
        dense = solve_dense(graph, C).values
        for values in (
            solve_power_iteration(graph, C, tol=1e-13).values,
            solve_undirected_closed(graph, C, tol=1e-13).values,
            solve_neumann(graph, C, series_depth=200).values,
        ):
            worst = max(worst, float(np.abs(values - dense).max()))
    for digraph in directed:
        dense = solve_dense(digraph, C).values
        itr = solve_directed(digraph, C, tol=1e-13).values
        worst = max(worst, float(np.abs(itr - dense).max()))
    print(f"criterion 4: {len(undirected)} undirected + {len(directed)} directed "
          f"graphs, max deviation from dense solve = {worst:.3e}")
    assert worst <= 1e-9


def test_criterion_05_pagerank_ccdf_below_degree_ccdf(cm_100k):
    """n = 1e5 draw: P(R > k) <= P(D > k) at every integer threshold."""
    _, degrees, values = cm_100k
    ks = np.arange(0.0, degrees.max() + 1)
    r_counts = empirical_ccdf(values, thresholds=ks).counts
    d_counts = empirical_ccdf(degrees, thresholds=ks).counts
    violations = int(np.count_nonzero(r_counts > d_counts))
    print(f"criterion 5: {violations} CCDF violations over {ks.size} thresholds")
    assert violations == 0


def test_criterion_06_lower_bound_ratio_window(cm_100k):
    """Same draw: P(R > k) / P(D > beta k) >= 0.9 on the populated window."""
    _, degrees, values = cm_100k
    beta = 1.05 * 4.0 * float(degrees.mean()) / (C * (1.0 - C))
    report = ratio_bound_report(values, degrees, beta, min_count=100)
    assert report.in_window.any()
    window = int(report.in_window.sum())
    print(f"criterion 6: beta = {beta:.2f}, window size = {window}, "
          f"min ratio = {report.min_window_ratio:.4f}")
    assert report.min_window_ratio >= 0.9


def test_criterion_07_pa_degree_tail_index():
    """PA(m=2, delta=0) at n = 1e5: Hill index near 2, majority of 5 seeds."""
    hits = 0
    estimates = []
    for seed in range(5):
        graph = preferential_attachment(100_000, 2, 0.0, seed=seed)
        est = hill_estimator(graph.degrees.astype(np.float64), k_top=1000)
        estimates.append(round(est.estimate, 3))
        hits += 1.7 <= est.estimate <= 2.3
    print(f"criterion 7: Hill estimates {estimates}, {hits}/5 inside [1.7, 2.3]")
    assert hits >= 3


def test_criterion_08_younger_child_degree_domination(polya_population):
    """Younger-child degrees are tail-dominated by (m+delta)/(t+delta)."""
    _, _, young_degrees = polya_population
    n = young_degrees.size
    assert n >= 100_000
    params = PolyaParams(1, 0.0)
    worst_excess = -math.inf
    for t in range(1, 51):
        bound = tilde_degree_tail(params, t)
        slack = 2.326 * math.sqrt(bound * (1.0 - bound) / n)
        observed = float(np.mean(young_degrees >= t))
        worst_excess = max(worst_excess, observed - bound - slack)
    # Analytic pmf total: telescoping partial sum plus closed-form remainder.
    ts = np.arange(1, 10_000_001, dtype=np.float64)
    total = float((1.0 / (ts * (ts + 1.0))).sum()) + tilde_degree_tail(params, 10_000_001)
    print(f"criterion 8: {n} younger children, worst tail excess over bound+99% "
          f"slack = {worst_excess:.3e}, pmf total = {total:.12f}")
    assert worst_excess <= 0.0
    assert abs(total - 1.0) <= 1e-8


def test_criterion_09_younger_age_law_ks():
    """Younger ages given fixed root age follow the analytic CDF (99% KS)."""
    params = PolyaParams(1, 0.0)
    worst = []
    for bucket, age in enumerate((0.2, 0.5, 0.8)):
        ages = []
        for s in range(10_000):
            tree = sample_polya_point_tree(params, 1, seed=900_000 + 10_000 * bucket + s,
                                           root_age=age)
            kids = root_children(tree)
            ages.extend(tree.age[kids[tree.label[kids] == LABEL_YOUNG]].tolist())
        points = np.asarray(ages)
        dist = stats.kstest(points, lambda y: younger_age_cdf(params, age, y))
        threshold = 1.6276 / math.sqrt(points.size)
        worst.append((age, points.size, dist.statistic, threshold))
        assert dist.statistic < threshold, worst[-1]
    line = ", ".join(f"t={a}: D={d:.4f} < {thr:.4f} (N={n})"
                     for a, n, d, thr in worst)
    print(f"criterion 9: {line}")


def test_criterion_10_mean_truncated_root_pagerank():
    """Mean truncated root value over 1e5 trees stays <= 1 + 3 SE.

    Sampled at m=1, delta=1, depth 4, c=0.5: the offset keeps the truncated
    tree size integrable so the estimator has finite variance.
    """
    params = PolyaParams(1, 1.0)
    c, depth, trials = 0.5, 4, 100_000
    values = np.empty(trials)
    for s in range(trials):
        tree = sample_polya_point_tree(params, depth, seed=300_000 + s)
        values[s] = root_pagerank_on_tree(tree, c)
    mean = float(values.mean())
    se = float(values.std()) / math.sqrt(trials)
    print(f"criterion 10: mean = {mean:.5f} (SE {se:.5f}), "
          f"series target = {1 - c ** (depth + 1):.5f}, bound = {1 + 3 * se:.5f}")
    assert mean <= 1.0 + 3.0 * se


def test_criterion_11_circulant_union_concentration(circulant_unions):
    """Union-of-circulants: vertices off |R - 1| <= 0.1 are rare and shrink."""
    fractions = {}
    for n, (graph, info, values) in circulant_unions.items():
        fractions[n] = float(np.mean(np.abs(values - 1.0) > 0.1))
        # Degree histogram: component sizes are exactly floor(n p_k); only
        # the two endpoints of each bridge move up one degree.
        pmf = dict(zip(even_power_law().support.tolist(),
                       even_power_law().probs.tolist()))
        displaced = 0
        for k, size in zip(info.component_degrees, info.component_sizes):
            assert size == int(n * pmf[k])
            observed = int(np.count_nonzero(graph.degrees == k))
            assert size - 2 <= observed <= size
            displaced += size - observed
        assert displaced == 2 * len(info.bridges)
    print(f"criterion 11: off-one fraction {fractions[10_000]:.4f} at n=1e4, "
          f"{fractions[100_000]:.4f} at n=1e5")
    assert fractions[10_000] <= 0.02
    assert fractions[100_000] < fractions[10_000]


def test_criterion_12_condition_probe_contrast(polya_population, circulant_unions):
    """Qualifying-neighbor ratio decays on limit trees, sticks at 1 on the
    circulant union."""
    root_degrees, high_counts, _ = polya_population
    thresholds = 2.0 ** np.arange(0, 9)
    probe = condition_probe(root_degrees, high_counts, alpha=2.0, epsilon=0.4,
                            thresholds=thresholds)
    # An infinite factor means the joint count reached exactly zero while the
    # marginal bucket was still populated -- the strongest possible decay.
    decay = probe.decay_factor(min_count=25)
    assert not math.isnan(decay)

    graph, info, _ = circulant_unions[10_000]
    alpha = float(np.median(info.component_degrees))
    counts = np.zeros(graph.n)
    for v in range(graph.n):
        counts[v] = np.count_nonzero(graph.degrees[graph.neighbors(v)] >= alpha)
    ks = np.arange(alpha, max(info.component_degrees))
    cprobe = condition_probe(graph.degrees, counts, alpha=alpha, epsilon=0.4,
                             thresholds=ks)
    populated = cprobe.populated(min_count=25)
    assert populated.any()
    min_ratio = float(np.nanmin(cprobe.ratios[populated]))
    print(f"criterion 12: tree-probe decay factor = {decay:.1f}, "
          f"circulant-union min ratio = {min_ratio:.4f} at alpha = {alpha:.0f}")
    assert decay >= 5.0
    assert min_ratio >= 0.99


def test_criterion_13_directed_ratio_bounds():
    """Balanced digraphs obey R <= in-degree; a 2-out digraph obeys the
    in/out-ratio bound whenever its hypothesis holds."""
    worst = -math.inf
    dist = DegreeDistribution.power_law(2.5, 1, 100)
    for seed in range(100):
        digraph = eulerian_digraph(sample_degrees(dist, 1000, seed=seed), seed=seed)
        assert float((digraph.in_degrees / digraph.out_degrees).max()) == 1.0
        pr = solve_directed(digraph, C, tol=1e-10)
        worst = max(worst, float((pr.values - digraph.in_degrees).max()))
    assert worst <= 1e-8

    digraph = random_out_digraph(1000, 2, seed=5)
    c = 0.2
    report = check_directed_ratio_bound(digraph, solve_directed(digraph, c, tol=1e-10), c)
    print(f"criterion 13: balanced max(R - in-degree) = {worst:.3e}; 2-out "
          f"ratio K = {report.degree_ratio}, max bound violation = "
          f"{report.max_violation:.3e}")
    assert report.hypothesis_met            # K < min-in-degree / c
    assert report.degree_ratio < 1.0 / c
    assert report.max_violation <= 1e-8


def test_criterion_14_reruns_byte_identical(tmp_path):
    """Any experiment config run twice yields byte-identical CSV artifacts."""
    configs = [
        ExperimentConfig(kind="cm", n=2000, tau=2.5, seed=17, replications=2),
        ExperimentConfig(kind="polya_tree", m=2, delta=0.5, depth=2,
                         num_samples=500, c=0.5, seed=23),
    ]
    compared = 0
    for idx, config in enumerate(configs):
        a, b = tmp_path / f"a{idx}", tmp_path / f"b{idx}"
        run_experiment(config, a)
        run_experiment(config, b)
        csvs = sorted(p.relative_to(a) for p in a.rglob("*.csv"))
        assert csvs
        for rel in csvs:
            assert (a / rel).read_bytes() == (b / rel).read_bytes(), rel
            compared += 1
    print(f"criterion 14: {compared} CSV artifacts byte-identical across reruns")
