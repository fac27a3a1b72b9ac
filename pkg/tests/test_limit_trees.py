"""Limit-tree samplers: exact small laws, invariances, and conservation checks.

The two Monte Carlo conservation checks (mean inverse child degree 1, mean
truncated root value 1 - c^(S+1)) are the load-bearing ones: both fail
decisively if the age laws, gamma shapes, or offspring intensities drift.
"""

import math

import numpy as np
import pytest

from pagerank_tails import (
    BadParametersError,
    DegreeDistribution,
    LABEL_NONE,
    LABEL_OLD,
    LABEL_YOUNG,
    PolyaParams,
    SampleSizeLimitError,
    root_children,
    root_pagerank_on_tree,
    sample_polya_point_tree,
    sample_unimodular_tree,
    size_biased_offspring,
    tilde_degree_pmf,
    tilde_degree_tail,
    truncation_tail_bound,
    younger_age_cdf,
    older_age_cdf,
)


# ---------------------------------------------------------------------------
# Branching-process tree (undirected-model limit)
# ---------------------------------------------------------------------------

def test_size_biased_offspring_exact():
    support, probs = size_biased_offspring(DegreeDistribution.from_pmf({1: 0.5, 3: 0.5}))
    assert support.tolist() == [0, 2]
    np.testing.assert_allclose(probs, [0.25, 0.75])


def test_two_regular_tree_is_a_path():
    dist = DegreeDistribution.from_pmf({2: 1.0})
    for depth in (0, 1, 3, 6):
        tree = sample_unimodular_tree(dist, depth, seed=1)
        assert tree.parent.size == 2 * depth + 1
        assert (tree.degree == 2).all()
        # On a 2-regular tree every series term is exactly (1-c) c^s.
        for c in (0.3, 0.85):
            value = root_pagerank_on_tree(tree, c)
            assert math.isclose(value, 1.0 - c ** (depth + 1), abs_tol=1e-12)
            assert math.isclose(truncation_tail_bound(tree, c), 2 * c ** (depth + 1))


def test_unimodular_root_and_offspring_laws():
    dist = DegreeDistribution.from_pmf({1: 0.5, 3: 0.5})
    root_deg = []
    offspring = []
    for s in range(4000):
        tree = sample_unimodular_tree(dist, 2, seed=s)
        root_deg.append(tree.degree[0])
        interior = (tree.depth == 1)
        offspring.extend(tree.child_count[interior].tolist())
    root_deg = np.asarray(root_deg)
    assert abs(np.mean(root_deg == 3) - 0.5) < 0.03
    offspring = np.asarray(offspring)
    assert set(np.unique(offspring)) <= {0, 2}
    assert abs(np.mean(offspring == 2) - 0.75) < 0.03  # size-biased law


def test_unimodular_prefix_stability():
    dist = DegreeDistribution.from_pmf({1: 0.4, 2: 0.3, 3: 0.3})
    shallow = sample_unimodular_tree(dist, 2, seed=77)
    deep = sample_unimodular_tree(dist, 5, seed=77)
    k = shallow.parent.size
    keep = deep.depth <= 2
    assert keep.sum() == k
    assert np.array_equal(deep.parent[:k], shallow.parent)
    assert np.array_equal(deep.degree[:k], shallow.degree)
    for c in (0.5, 0.85):
        assert root_pagerank_on_tree(deep, c, depth=2) == root_pagerank_on_tree(shallow, c)


def test_truncated_mean_matches_series_unimodular():
    dist = DegreeDistribution.from_pmf({1: 0.5, 3: 0.5})
    c, depth, trials = 0.85, 3, 4000
    values = [root_pagerank_on_tree(sample_unimodular_tree(dist, depth, seed=s), c)
              for s in range(trials)]
    mean = float(np.mean(values))
    se = float(np.std(values)) / math.sqrt(trials)
    assert abs(mean - (1.0 - c ** (depth + 1))) < 4 * se + 1e-3


# ---------------------------------------------------------------------------
# Preferential-attachment limit tree
# ---------------------------------------------------------------------------

def test_polya_params_validation():
    with pytest.raises(BadParametersError):
        PolyaParams(0)
    with pytest.raises(BadParametersError):
        PolyaParams(2, -2.0)
    p = PolyaParams(1, 0.0)
    assert math.isclose(p.age_exponent, 0.5)
    assert math.isclose(p.power_law_exponent, 3.0)


def test_polya_structure_invariants():
    params = PolyaParams(2, 0.5)
    tree = sample_polya_point_tree(params, 3, seed=12)
    n = tree.parent.size
    assert tree.label[0] == LABEL_NONE
    assert 0.0 < tree.age[0] < 1.0
    interior = tree.depth < tree.max_depth
    for v in range(1, n):
        p = tree.parent[v]
        if tree.label[v] == LABEL_OLD:
            assert tree.age[v] < tree.age[p]
        else:
            assert tree.label[v] == LABEL_YOUNG
            assert tree.age[v] >= tree.age[p]
        if interior[v]:
            assert tree.degree[v] == tree.child_count[v] + 1
    # Children are laid out older block first, younger block sorted by age.
    for v in np.nonzero(interior)[0]:
        kids = tree.children(v)
        labels = tree.label[kids]
        first_young = np.argmax(labels == LABEL_YOUNG) if (labels == LABEL_YOUNG).any() else labels.size
        assert (labels[:first_young] == LABEL_OLD).all()
        young_ages = tree.age[kids[first_young:]]
        assert (np.diff(young_ages) >= 0).all()
    # Older blocks hold m slots per vertex, m-1 for younger-labeled vertices.
    for v in np.nonzero(interior)[0]:
        kids = tree.children(v)
        expect_old = params.m - 1 if tree.label[v] == LABEL_YOUNG else params.m
        assert int((tree.label[kids] == LABEL_OLD).sum()) == expect_old


def test_polya_root_degree_pmf():
    # Limiting root degree law at m=1, delta=0: P(k) = 4 / (k (k+1) (k+2)).
    trials = 20000
    degs = np.array([sample_polya_point_tree(PolyaParams(1), 1, seed=s).degree[0]
                     for s in range(trials)])
    assert degs.min() >= 1
    assert abs(np.mean(degs == 1) - 2 / 3) < 0.02
    assert abs(np.mean(degs == 2) - 1 / 6) < 0.015
    assert abs(np.mean(degs == 3) - 1 / 15) < 0.01


def test_polya_mass_transport_identity():
    """E[sum over root children of 1/child degree] = 1 (unimodularity).

    Boundary vertices carry their true degree, so depth 1 suffices.  At
    delta=0 the summand has an infinite-variance tail, hence the loose
    tolerance; delta=1 is better behaved.
    """
    for delta, trials, tol in ((0.0, 20000, 0.08), (1.0, 15000, 0.05)):
        params = PolyaParams(1, delta)
        total = 0.0
        for s in range(trials):
            tree = sample_polya_point_tree(params, 1, seed=s)
            kids = root_children(tree)
            total += float((1.0 / tree.degree[kids]).sum())
        assert abs(total / trials - 1.0) < tol, delta


def test_truncated_mean_matches_series_polya():
    params = PolyaParams(1, 1.0)
    c, depth, trials = 0.5, 2, 8000
    values = np.array([root_pagerank_on_tree(sample_polya_point_tree(params, depth, seed=s), c)
                       for s in range(trials)])
    se = float(values.std()) / math.sqrt(trials)
    assert abs(float(values.mean()) - (1.0 - c ** (depth + 1))) < 4 * se + 2e-3


def test_tilde_degree_law_values():
    params = PolyaParams(1, 0.0)
    assert math.isclose(tilde_degree_pmf(params, 1), 0.5)
    assert math.isclose(tilde_degree_pmf(params, 2), 1 / 6)
    assert math.isclose(tilde_degree_tail(params, 2), 0.5)
    assert math.isclose(tilde_degree_tail(params, 4), 0.25)
    # pmf sums to the telescoping tail exactly
    t = np.arange(1, 2000)
    assert math.isclose(tilde_degree_pmf(params, t).sum() + tilde_degree_tail(params, 2000),
                        1.0, abs_tol=1e-12)
    with pytest.raises(BadParametersError):
        tilde_degree_pmf(PolyaParams(2), 1)


def test_age_cdfs_are_proper():
    params = PolyaParams(2, 0.5)
    a = 0.37
    ys = np.linspace(a, 1.0, 50)
    younger = younger_age_cdf(params, a, ys)
    assert younger[0] == 0.0 and younger[-1] == 1.0
    assert (np.diff(younger) >= 0).all()
    xs = np.linspace(0.0, a, 50)
    older = older_age_cdf(params, a, xs)
    assert older[0] == 0.0 and older[-1] == 1.0
    assert (np.diff(older) >= 0).all()
    # Median of the older law inverts the sampling map u ** (1/chi) * a.
    med = a * 0.5 ** (1.0 / params.age_exponent)
    assert math.isclose(older_age_cdf(params, a, med), 0.5)


def test_polya_prefix_stability_bit_exact():
    params = PolyaParams(2, -0.5)
    shallow = sample_polya_point_tree(params, 2, seed=99)
    deep = sample_polya_point_tree(params, 4, seed=99)
    k = shallow.parent.size
    assert np.array_equal(deep.parent[:k], shallow.parent)
    assert np.array_equal(deep.degree[:k], shallow.degree)
    assert np.array_equal(deep.age[:k], shallow.age)
    assert np.array_equal(deep.label[:k], shallow.label)
    assert root_pagerank_on_tree(deep, 0.85, depth=2) == root_pagerank_on_tree(shallow, 0.85)


def test_polya_depth_zero_and_forced_root_age():
    params = PolyaParams(1, 0.0)
    tree = sample_polya_point_tree(params, 0, seed=3, root_age=0.25)
    assert tree.parent.size == 1
    assert tree.age[0] == 0.25
    assert tree.degree[0] >= 1
    assert math.isclose(root_pagerank_on_tree(tree, 0.85), 0.15)


def test_polya_sample_size_limit():
    params = PolyaParams(3, 0.0)
    with pytest.raises(SampleSizeLimitError) as err:
        # Tiny budget: a young root age makes the first level overflow it.
        sample_polya_point_tree(params, 4, seed=0, root_age=1e-8, max_vertices=50)
    assert err.value.requested > err.value.limit == 50
