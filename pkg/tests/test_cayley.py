import itertools

import networkx as nx
import pytest

from friendly_partitions.cayley import (
    TABLE1,
    CyclicSpec5,
    abelian_groups,
    abelian_internal_partition,
    classify_near_complete,
    cyclic5_internal,
    enumerate_abelian_cayley,
    exceptional_reference,
    explicit_sets,
    gcd_partition,
    near_complete_circulant,
    paley_internal,
    paley_scan,
    power_of_two_scan,
    reduce_rel_prime,
    table1_sets,
    z2_x_z2p_partition,
    z2t_partition,
)
from friendly_partitions.engine import verify_cohesive, verify_internal
from friendly_partitions.generators import (
    CayleySpec,
    InvalidSpecError,
    gen_abelian_cayley,
    gen_circulant,
    gen_paley,
)
from friendly_partitions.graph import ContractError
from oracles import has_internal_partition, to_nx


def all_cyclic_specs(max_n):
    for n in range(6, max_n + 1, 2):
        for r, t in itertools.combinations(range(1, n // 2), 2):
            yield CyclicSpec5(n, r, t)


def test_spec_validation():
    assert str(CyclicSpec5(10, 1, 2)) == "<1,2,5>_10"
    for args in [(9, 1, 2), (4, 1, 2), (10, 1, 1), (10, 0, 2), (10, 1, 5)]:
        with pytest.raises(InvalidSpecError):
            CyclicSpec5(*args)


def test_reduce_rel_prime():
    t_star, mapping = reduce_rel_prime(CyclicSpec5(10, 3, 4))
    assert t_star == 2 and mapping[1] == 3
    assert reduce_rel_prime(CyclicSpec5(16, 7, 2))[0] == 2
    with pytest.raises(ContractError):
        reduce_rel_prime(CyclicSpec5(12, 2, 3))


def test_gcd_classes_are_cohesive():
    g = gen_circulant(12, [1, 3, 6])
    classes = gcd_partition(12, (1, 3, 6))
    assert len(classes) == 3
    for c in classes:
        assert verify_cohesive(g, c, 3)
    with pytest.raises(ContractError):
        gcd_partition(14, (2, 3, 7))


@pytest.mark.parametrize("key, sets", TABLE1)
def test_table1_rows(key, sets):
    n, t = key
    a, b = table1_sets(n, t)
    g = gen_circulant(n, (1, t, n // 2))
    assert not a & b
    assert verify_cohesive(g, a, 3) and verify_cohesive(g, b, 3)


def test_shifted_window_verifies():
    for k in range(8, 30):
        for t_star in {2, 3, k - 3, k - 2, k - 1}:
            g = gen_circulant(2 * k, (1, t_star, k))
            shifted = [(a, b) for m, a, b in explicit_sets(k, t_star) if m == "shifted-window"]
            (a, b), = shifted
            assert verify_cohesive(g, a, 3) and verify_cohesive(g, b, 3)


def test_cyclic_matches_oracle_small():
    for spec in all_cyclic_specs(16):
        out = cyclic5_internal(spec)
        assert out.verified
        assert out.has_partition == has_internal_partition(spec.graph()), str(spec)


def test_cyclic_exceptionals():
    names = {str(s): cyclic5_internal(s).name for s in all_cyclic_specs(12) if not cyclic5_internal(s).has_partition}
    assert names == {"<1,2,3>_6": "K6", "<1,2,5>_10": "C125_10", "<3,4,5>_10": "C125_10", "<1,3,5>_10": "K55"}
    g = CyclicSpec5(10, 3, 4).graph()
    assert nx.is_isomorphic(to_nx(g), to_nx(exceptional_reference("C125_10")))


def test_cyclic_larger_without_search():
    for spec in all_cyclic_specs(60):
        if spec.n <= 10:
            continue
        out = cyclic5_internal(spec)
        assert out.has_partition and out.verified
        assert "search" not in out.method and "fallback" not in out.method, (str(spec), out.method)


def test_z2t():
    gens3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 1, 1)]
    g = gen_abelian_cayley(CayleySpec((2, 2, 2), gens3))
    assert verify_internal(g, z2t_partition(3, gens3))
    gens4 = [(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    g = gen_abelian_cayley(CayleySpec((2, 2, 2, 2), gens4))
    assert verify_internal(g, z2t_partition(4, gens4))
    with pytest.raises(ContractError):
        z2t_partition(3, gens3[:4])


def test_z2p_constructions():
    # three involutions: K4 tiles
    S = [(1, 0), (0, 4), (1, 4), (0, 1), (0, 7)]
    p, method = z2_x_z2p_partition(4, S)
    assert method == "k4-tiles"
    assert verify_internal(gen_abelian_cayley(CayleySpec((2, 8), S)), p)
    # (1, 0) plus two cyclic pairs lifts <1, 2, ...> on Z_2p
    S = [(1, 0), (0, 1), (0, 13), (0, 2), (0, 12)]
    p, method = z2_x_z2p_partition(7, S)
    assert method == "lift"
    assert verify_internal(gen_abelian_cayley(CayleySpec((2, 14), S)), p)
    with pytest.raises(ContractError):
        z2_x_z2p_partition(1, S)


def test_abelian_dispatch_and_contracts():
    spec = CayleySpec((2, 6), [(1, 0), (0, 1), (0, 5), (0, 2), (0, 4)])
    out = abelian_internal_partition(spec)
    assert out.has_partition and out.verified
    disconnected = CayleySpec((2, 12), [(1, 0), (0, 2), (0, 10), (0, 4), (0, 8)])
    with pytest.raises(ContractError, match="disconnected"):
        abelian_internal_partition(disconnected)


def test_abelian_groups():
    assert abelian_groups(8) == [(8,), (2, 4), (2, 2, 2)]
    assert abelian_groups(12) == [(12,), (2, 6)]
    assert len(abelian_groups(16)) == 5
    assert len(abelian_groups(32)) == 7


def test_enumeration_small_orders_against_oracle():
    seen = 0
    for spec in enumerate_abelian_cayley(12):
        g = gen_abelian_cayley(spec)
        assert g.is_regular(5) and nx.is_connected(to_nx(g))
        out = abelian_internal_partition(spec)
        assert out.verified
        assert out.has_partition == has_internal_partition(g), str(spec)
        seen += 1
    assert seen > 0
    with pytest.raises(ValueError):
        next(enumerate_abelian_cayley(10, valency=3))


def test_near_complete_against_oracle():
    for n in range(6, 13, 2):
        for s in range(1, n // 2):
            g = near_complete_circulant(n, s)
            res = classify_near_complete(g)
            assert res.has_partition == has_internal_partition(g)
            if res.has_partition:
                assert verify_internal(g, res.partition)
    with pytest.raises(ContractError):
        classify_near_complete(gen_circulant(10, [1]))


def test_power_of_two_scan():
    assert not power_of_two_scan(16).exists_counterexample
    res = power_of_two_scan(12)
    assert res.exists_counterexample and res.witness_offset == 4
    with pytest.raises(ContractError):
        power_of_two_scan(7)


def test_paley_small():
    for q in (5, 9, 13, 17, 29):
        row = paley_internal(q)
        assert row.complete and row.certificate.verify(gen_paley(q))
    assert not paley_internal(9).prime and paley_internal(13).prime


def test_paley_scan_limits():
    rows = paley_scan(40)
    assert [r.q for r in rows] == [5, 9, 13, 17, 25, 29, 37]
    assert all(r.complete for r in rows)
    with pytest.raises(ContractError):
        paley_scan(501)
