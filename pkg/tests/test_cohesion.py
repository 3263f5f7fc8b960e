import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from friendly_partitions.cohesion import (
    MU,
    BoundedSubgraph,
    StageError,
    augment_to_min_degree,
    bounded_degree_dense_subgraph,
    check_bounded_subgraph,
    exact_bounded_subgraph,
    f_lower_bound,
    intersection_bound,
    min_intersection_pair,
    mu_root,
    optimized_k,
)
from friendly_partitions.engine import verify_cohesive
from friendly_partitions.generators import complete, gen_circulant, gen_random_regular
from friendly_partitions.graph import ContractError, Graph, k_core
from oracles import max_bounded_edges_brute, mu_numpy


def test_mu_matches_numpy_root():
    assert abs(MU - mu_numpy()) < 1e-10
    assert abs(mu_root() - 0.8808208191107951) < 1e-12
    assert abs(36 * MU**5 - 45 * MU**4 + 8) < 1e-9


def test_f_values():
    n = 1000
    assert f_lower_bound(n / 2, n) == pytest.approx(0.533875 * n)
    assert f_lower_bound(n, n) == pytest.approx(1.125 * n)
    with pytest.raises(ValueError):
        f_lower_bound(1, 0)


def test_f_continuous_at_mu():
    n = 1.0
    below = f_lower_bound(MU * n - 1e-9, n)
    above = f_lower_bound(MU * n + 1e-9, n)
    assert abs(below - above) < 1e-3


def test_optimized_k_ratio():
    assert optimized_k(100) / 100 == pytest.approx(0.27, abs=0.005)
    for n in (100, 1000, 10000):
        k = optimized_k(n)
        assert k <= MU * n
        assert 3 * k - f_lower_bound(k, n) == pytest.approx(n / 2 + 3)


@st.composite
def hosts(draw):
    n = draw(st.integers(4, 7))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=2 * n - 2))
    g = Graph(n, edges)
    degs = g.degrees()
    assume(min(degs) >= 3 and max(degs) <= 5)
    return g


@settings(max_examples=40, deadline=None)
@given(hosts(), st.data())
def test_exact_matches_brute_force(h, data):
    k = data.draw(st.integers(1, h.n))
    sub = exact_bounded_subgraph(h, k)
    assert check_bounded_subgraph(sub, h) == []
    assert len(sub.vertices) == k
    assert len(sub.edges) == max_bounded_edges_brute(h, k)
    assert len(sub.edges) >= k - 1


def test_checker_reports_problems():
    h = complete(6)
    assert check_bounded_subgraph(BoundedSubgraph(frozenset({0, 1}), ((0, 1),)), h) == []
    star = BoundedSubgraph(frozenset(range(6)), tuple((0, v) for v in range(1, 6)))
    assert check_bounded_subgraph(star, h) == ["vertex 0 has degree 5"]
    outside = BoundedSubgraph(frozenset({0, 1}), ((0, 1), (1, 2)))
    assert "edge (1, 2) leaves the vertex set" in check_bounded_subgraph(outside, h)
    c = gen_circulant(8, [1, 2])
    fake = BoundedSubgraph(frozenset({0, 4}), ((0, 4),))
    assert check_bounded_subgraph(fake, c) == ["edge (0, 4) is not a host edge"]


def test_heuristic_on_larger_hosts():
    for seed in range(6):
        g = gen_random_regular(40, 5, seed=seed)
        for k in (5, 12, 25, 40):
            sub = bounded_degree_dense_subgraph(g, k, seed=seed)
            assert check_bounded_subgraph(sub, g) == []
            assert len(sub.vertices) == k
            assert len(sub.edges) >= k - 1


def test_heuristic_contracts():
    with pytest.raises(ContractError):
        bounded_degree_dense_subgraph(gen_circulant(10, [1]), 3)
    with pytest.raises(ContractError):
        bounded_degree_dense_subgraph(gen_circulant(14, [1, 2, 3]), 3)
    with pytest.raises(ValueError):
        bounded_degree_dense_subgraph(complete(6), 7)


def test_augment_four_cycle_in_k6():
    sub = BoundedSubgraph(frozenset(range(4)), ((0, 1), (1, 2), (2, 3), (0, 3)))
    estar = augment_to_min_degree(sub, complete(6))
    assert estar == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_augment_reaches_min_degree_three():
    g = gen_random_regular(30, 5, seed=9)
    sub = bounded_degree_dense_subgraph(g, 10, seed=0)
    estar = augment_to_min_degree(sub, g)
    assert set(sub.edges) <= set(estar)
    deg = {}
    for u, v in estar:
        assert g.has_edge(u, v)
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    assert all(deg[v] >= 3 for v in sub.vertices)


def test_pipeline_examples():
    for seed in range(4):
        g = gen_random_regular(60, 5, seed=seed)
        r = min_intersection_pair(g, seed=seed)
        assert verify_cohesive(g, r.set1, 3) and verify_cohesive(g, r.set2, 3)
        assert r.intersection_size == len(r.set1 & r.set2) <= intersection_bound(60)
        assert len(r.set1) <= 31
        assert r.csv_row().count(",") == r.CSV_HEADER.count(",")


def test_pipeline_contracts():
    with pytest.raises(ContractError):
        min_intersection_pair(gen_circulant(10, [1, 2, 5]))
    with pytest.raises(ContractError):
        min_intersection_pair(gen_random_regular(20, 4, seed=0))


def test_stage_error_names_stage():
    err = StageError("2", "x")
    assert err.stage == "2" and "stage 2" in str(err)


def test_rotated_windows_on_c125():
    g = gen_circulant(10, [1, 2, 5])
    for r in range(10):
        a = {(r + i) % 10 for i in range(6)}
        b = {(r + 3 + i) % 10 for i in range(6)}
        assert verify_cohesive(g, a, 3) and verify_cohesive(g, b, 3)
        assert len(a & b) == 3 <= intersection_bound(10)


def test_core_of_dense_remainder_is_nonempty():
    g = gen_random_regular(40, 5, seed=1)
    assert g.m >= 2 * g.n - 2 and k_core(g, 3)
    assert math.isclose(intersection_bound(100), 26)
