import pytest

from friendly_partitions.certificate import Certificate
from friendly_partitions.generators import complete, gen_circulant
from friendly_partitions.graph import Bipartition, GraphFormatError


def test_internal_round_trip():
    g = gen_circulant(10, [1, 2])
    p = Bipartition.from_class(10, [0, 1, 2, 3, 4])
    cert = Certificate.internal(g, p)
    assert cert.verify(g)
    for offset in (0, 1):
        back = Certificate.from_text(cert.to_text(offset), offset)
        assert back == cert and back.verify(g)


def test_wrong_graph_or_partition_fails():
    g = gen_circulant(12, [1, 2])
    p = Bipartition.from_class(12, range(6))
    cert = Certificate.internal(g, p)
    assert cert.verify(g)
    assert not cert.verify(gen_circulant(12, [1, 3]))
    bad = Certificate.internal(g, Bipartition.from_class(12, [0, 6]))
    assert not bad.verify(g)


def test_cohesive_pair_and_nonexistence():
    g = complete(6)
    cert = Certificate.cohesive_pair(g, [0, 1, 2, 3], [2, 3, 4, 5], level=3)
    assert Certificate.from_text(cert.to_text()) == cert
    assert cert.verify(g)
    none = Certificate.nonexistence(g, nodes=42)
    text = none.to_text()
    assert text == f"nonexistence\n{g.digest()}\nnodes=42 fixed=0\n"
    assert Certificate.from_text(text).nodes == 42


@pytest.mark.parametrize("text", ["", "hello\nx\ny", "internal-partition\nabc\n0 1", "nonexistence\nabc\nnodes=x"])
def test_malformed(text):
    with pytest.raises(GraphFormatError):
        Certificate.from_text(text)


def test_unknown_kind():
    with pytest.raises(ValueError):
        Certificate("proof", "abc")
