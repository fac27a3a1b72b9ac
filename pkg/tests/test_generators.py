"""Random-graph generators: structural invariants and exact small-case laws."""

import numpy as np
import pytest

from pagerank_tails import (
    BadParametersError,
    DegreeDistribution,
    OddStubCountError,
    UnreachableScheduleError,
    circulant,
    configuration_model,
    counterexample_graph,
    eulerian_digraph,
    preferential_attachment,
    random_out_digraph,
    sample_degrees,
    solve_undirected_closed,
)


# ---------------------------------------------------------------------------
# Degree distributions
# ---------------------------------------------------------------------------

def test_power_law_pmf_shape():
    dist = DegreeDistribution.power_law(2.5, k_min=1, k_max=1000)
    assert dist.support[0] == 1 and dist.support[-1] == 1000
    assert np.isclose(dist.probs.sum(), 1.0)
    # Unnormalized ratios pin the exponent: p_1 / p_2 = 2^2.5.
    assert np.isclose(dist.probs[0] / dist.probs[1], 2 ** 2.5)


def test_power_law_even_only():
    dist = DegreeDistribution.power_law(2.5, k_min=1, k_max=100, even_only=True)
    assert dist.even_support
    assert (dist.support % 2 == 0).all()
    assert dist.support[0] == 2


def test_from_pmf_mean():
    dist = DegreeDistribution.from_pmf({1: 0.5, 3: 0.5})
    assert np.isclose(dist.mean(), 2.0)
    with pytest.raises(ValueError):
        DegreeDistribution.from_pmf({1: -0.5, 3: 1.5})


def test_sample_degrees_law_and_determinism():
    dist = DegreeDistribution.from_pmf({1: 0.25, 4: 0.75})
    a = sample_degrees(dist, 20000, seed=5)
    b = sample_degrees(dist, 20000, seed=5)
    assert np.array_equal(a, b)
    frac = np.mean(a == 4)
    assert abs(frac - 0.75) < 0.02  # 5 sd ~= 0.015


# ---------------------------------------------------------------------------
# Configuration model
# ---------------------------------------------------------------------------

def test_configuration_model_preserves_degrees():
    degrees = np.array([3, 1, 2, 2, 4, 2])
    g = configuration_model(degrees, seed=0)
    assert np.array_equal(g.degrees, degrees)
    assert g.num_edges == degrees.sum() // 2


def test_configuration_model_rejects_odd_total():
    with pytest.raises(OddStubCountError):
        configuration_model(np.array([1, 2]), seed=0)


def test_configuration_model_uniform_matching():
    # Degrees [1, 1, 2] admit 3 stub matchings; 1 of them pairs the two
    # stubs of vertex 2 into a self-loop, so P(loop) = 1/3 exactly.
    loops = 0
    trials = 3000
    for s in range(trials):
        g = configuration_model(np.array([1, 1, 2]), seed=s)
        if (g.neighbors(2) == 2).any():
            loops += 1
    assert abs(loops - trials / 3) < 130  # 5 sd ~= 129


# ---------------------------------------------------------------------------
# Preferential attachment
# ---------------------------------------------------------------------------

def test_preferential_attachment_structure():
    for m, delta in ((1, 0.0), (2, 1.0), (3, -0.5)):
        g = preferential_attachment(50, m, delta, seed=1)
        assert g.num_edges == m * 49
        assert g.degrees.min() >= m
        assert g.degrees.sum() == 2 * m * 49
        for v in range(g.n):
            assert not (g.neighbors(v) == v).any()  # no self-loops


def test_preferential_attachment_rejects_bad_parameters():
    with pytest.raises(BadParametersError):
        preferential_attachment(1, 1)
    with pytest.raises(BadParametersError):
        preferential_attachment(10, 0)
    with pytest.raises(BadParametersError):
        preferential_attachment(10, 2, delta=-2.0)


@pytest.mark.parametrize("delta", [0.0, 0.7, -0.5])
def test_preferential_attachment_exact_law(delta):
    """Empirical frequencies of each n=4, m=1 outcome match the exact law.

    The two random choices are vertex 2's target t2 in {0,1} and vertex 3's
    target t3 in {0,1,2}; with one edge placed per vertex the law is
    P(t2)=1/2 and P(t3=i | t2) = (deg(i)+delta)/(4+3*delta).  The three
    parametrizations exercise the three sampling branches (slot lookup,
    extra uniform mass, rejection thinning).
    """
    exact = {}
    for t2 in (0, 1):
        deg = {0: 1, 1: 1, 2: 1}
        deg[t2] += 1
        for t3 in (0, 1, 2):
            exact[(t2, t3)] = 0.5 * (deg[t3] + delta) / (4 + 3 * delta)
    assert abs(sum(exact.values()) - 1.0) < 1e-12

    trials = 8000
    counts = {key: 0 for key in exact}
    for s in range(trials):
        g = preferential_attachment(4, 1, delta, seed=s)
        t3 = int(g.neighbors(3)[0])
        t2 = next(int(x) for x in g.neighbors(2) if x < 2)
        counts[(t2, t3)] += 1
    for key, p in exact.items():
        assert abs(counts[key] / trials - p) < 0.03, (key, counts[key] / trials, p)


# ---------------------------------------------------------------------------
# Circulants and the circulant-union instance
# ---------------------------------------------------------------------------

def test_circulant_structure():
    g = circulant(4, 10)
    assert (g.degrees == 4).all()
    assert sorted(g.neighbors(0).tolist()) == [1, 2, 8, 9]
    assert g.num_edges == 20
    with pytest.raises(BadParametersError):
        circulant(3, 10)
    with pytest.raises(BadParametersError):
        circulant(4, 4)


def test_counterexample_explicit_pmf_layout():
    dist = DegreeDistribution.from_pmf({2: 0.6, 4: 0.4})
    g, info = counterexample_graph(dist, 20)
    assert info.component_degrees == [2, 4]
    assert info.component_sizes == [12, 8]     # floor(20 * p_k)
    assert info.offsets == [0, 12]
    assert info.bridges == [(6, 12)]
    assert info.n_built == 20 == g.n
    hist = dict(zip(*map(list, np.unique(g.degrees, return_counts=True))))
    assert hist == {2: 11, 3: 1, 4: 7, 5: 1}   # two bridge endpoints shifted


def test_counterexample_three_component_instance():
    # 25 vertices split (10, 8, 7) across degrees (2, 4, 6); the middle
    # component carries both bridges, so its class loses two vertices to
    # degree 5 while the outer classes lose one each.
    dist = DegreeDistribution.from_pmf({2: 0.40, 4: 0.32, 6: 0.28})
    g, info = counterexample_graph(dist, 25)
    assert info.component_sizes == [10, 8, 7]
    hist = dict(zip(*map(list, np.unique(g.degrees, return_counts=True))))
    assert hist == {2: 9, 3: 1, 4: 6, 5: 2, 6: 6, 7: 1}
    # At c = 1/2 every value sits well inside (0.9, 1.2): the union is
    # near-regular in the sense that matters for PageRank flatness.
    pr = solve_undirected_closed(g, 0.5, tol=1e-12)
    assert pr.values.min() > 0.9
    assert pr.values.max() < 1.2


def test_counterexample_rejects_odd_support_and_infeasible_n():
    with pytest.raises(BadParametersError):
        counterexample_graph(DegreeDistribution.from_pmf({3: 1.0}), 100)
    with pytest.raises(UnreachableScheduleError):
        counterexample_graph(DegreeDistribution.from_pmf({2: 1.0}), 2)


def test_counterexample_power_law_cap_and_floors():
    n = 300
    dist = DegreeDistribution.power_law(2.5, k_min=1, k_max=1000, even_only=True)
    g, info = counterexample_graph(dist, n)
    assert max(info.component_degrees) <= int(np.log2(n))
    pmf = dict(zip(dist.support.tolist(), dist.probs.tolist()))
    for k, size in zip(info.component_degrees, info.component_sizes):
        assert size == int(n * pmf[k])
        assert size >= k + 1
    assert info.n_built == sum(info.component_sizes) == g.n
    assert len(info.bridges) == len(info.component_sizes) - 1


# ---------------------------------------------------------------------------
# Directed generators
# ---------------------------------------------------------------------------

def test_eulerian_digraph_balances_degrees():
    half = np.array([1, 2, 3, 1, 1])
    d = eulerian_digraph(half, seed=4)
    assert np.array_equal(d.out_degrees, half)
    assert np.array_equal(d.in_degrees, half)


def test_random_out_digraph_shape():
    d = random_out_digraph(200, out_degree=2, seed=9)
    assert (d.out_degrees == 2).all()
    assert d.in_degrees.min() >= 1
    assert d.in_degrees.sum() == 400
    e = random_out_digraph(200, out_degree=2, seed=9)
    assert np.array_equal(e.in_degrees, d.in_degrees)
