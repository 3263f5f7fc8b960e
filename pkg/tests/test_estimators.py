import numpy as np
import pytest
import scipy.sparse as sp
from sklearn.base import clone

from friendly_partitions.engine import verify_cohesive, verify_internal
from friendly_partitions.estimators import (
    CohesiveSetFinder,
    InternalPartition,
    KMBisection,
    MinIntersectionPair,
    check_graph,
)
from friendly_partitions.generators import complete, gen_circulant, gen_random_regular
from friendly_partitions.graph import Graph
from oracles import adjacency


def test_check_graph_inputs():
    g = gen_circulant(8, [1, 2])
    A = adjacency(g)
    assert check_graph(g) is g
    assert check_graph(A) == g
    assert check_graph(sp.csr_matrix(A)) == g
    assert check_graph(np.array(g.edges())) == g
    assert check_graph(np.array([[0, 1], [1, 0]])) == Graph(2, [(0, 1)])


@pytest.mark.parametrize(
    "bad",
    [
        np.array([[0, 1], [0, 0]]),
        np.array([[0, 2], [2, 0]]),
        np.array([[1, 0], [0, 0]]),
        sp.csr_matrix(np.array([[0, 1], [0, 0]])),
        sp.csr_matrix(np.ones((2, 3))),
        np.zeros((3, 4)),
    ],
)
def test_check_graph_rejects(bad):
    with pytest.raises(ValueError):
        check_graph(bad)


def test_params_and_clone():
    est = InternalPartition(method="switch", seed=3)
    assert est.get_params()["seed"] == 3
    twin = clone(est)
    assert twin.get_params() == est.get_params() and twin is not est
    for cls in (KMBisection, CohesiveSetFinder, MinIntersectionPair):
        clone(cls())


def test_internal_partition_estimator():
    g = gen_random_regular(30, 5, seed=0)
    labels = InternalPartition(seed=1).fit_predict(adjacency(g))
    a = [v for v in range(30) if labels[v] == 0]
    from friendly_partitions.graph import Bipartition

    assert verify_internal(g, Bipartition.from_class(30, a))
    est = InternalPartition().fit(complete(6))
    assert not est.exists_ and est.certificate_.kind == "nonexistence"
    assert list(est.labels_) == [0] * 6


def test_km_estimator():
    est = KMBisection(rounds=8).fit(gen_circulant(20, [1]))
    assert est.cut_ == 2 and est.labels_.sum() == 10


def test_cohesive_finder():
    g = gen_random_regular(40, 5, seed=2)
    est = CohesiveSetFinder(seed=0).fit(g)
    assert est.k_ == 3 and verify_cohesive(g, est.set_, 3)
    mask = est.get_support()
    assert mask.sum() == len(est.set_)
    assert list(est.get_support(indices=True)) == sorted(est.set_)
    sub = est.transform(g)
    assert sub.n == len(est.set_) and min(sub.degrees()) >= 3
    core = CohesiveSetFinder(k=3, method="core").fit(g)
    assert core.set_ == frozenset(range(40))
    with pytest.raises(ValueError):
        CohesiveSetFinder(method="core").fit(g)
    with pytest.raises(ValueError):
        est.transform(gen_random_regular(20, 5, seed=0))


def test_min_intersection_estimator():
    g = gen_random_regular(40, 5, seed=3)
    est = MinIntersectionPair().fit(g)
    assert est.intersection_size_ == len(est.set1_ & est.set2_) <= 11
