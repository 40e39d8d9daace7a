from hypothesis import given, strategies as st
import pytest

from penta.errors import ResourceError
from penta.multidegree import (
    MultiDegree,
    MultiplicitySequence,
    derived_multidegree,
    derived_multiplicity,
    interval_chain,
    iter_chain,
    multidegrees_up_to,
    pointed_lines_multidegree,
)

degrees = st.lists(st.integers(1, 7), min_size=0, max_size=5).map(lambda ds: MultiDegree(tuple(ds)))
# chains grow doubly exponentially; these stay below a few hundred elements
small_degrees = st.lists(st.integers(1, 5), min_size=0, max_size=3).map(lambda ds: MultiDegree(tuple(ds)))


def test_parse_and_format():
    assert MultiDegree.parse("[3,2]") == MultiDegree.of(2, 3)
    assert str(MultiDegree.parse("[ 2, 3 ]")) == "[2,3]"
    assert MultiDegree.parse("[]").is_empty
    assert MultiDegree.parse("5") == MultiDegree.of(5)
    for bad in ["[2,", "(2,3)", "[0]", "[-1]", "abc"]:
        with pytest.raises(ValueError):
            MultiDegree.parse(bad)


def test_pointed_lines_and_derived():
    assert pointed_lines_multidegree(MultiDegree.of(2, 3)) == MultiDegree.of(1, 1, 2, 2, 3)
    assert derived_multidegree(MultiDegree.of(2, 3)) == MultiDegree.of(1, 1, 2)
    assert derived_multidegree(MultiDegree.of(1, 1, 2)) == MultiDegree.of(1, 1)
    assert derived_multidegree(MultiDegree.of(1, 1, 1)).is_empty
    assert derived_multidegree(MultiDegree.of(6)) == MultiDegree.of(1, 2, 3, 4)


def test_multiplicity_round_trip():
    d = MultiDegree.of(1, 3, 3, 4)
    mu = d.multiplicity()
    assert mu.mu == (1, 0, 2, 1)
    assert mu[3] == 2 and mu[9] == 0 and mu.count == 4
    assert mu.to_multidegree() == d
    assert MultiplicitySequence.of(1, 0, 0).mu == (1,)


@given(degrees)
def test_transform_matches_multidegree_definition(d):
    """The suffix-sum formula agrees with removing (d_c, d_c - 1) from d_1."""
    assert derived_multiplicity(d.multiplicity()) == derived_multidegree(d).multiplicity()


def test_chain_examples():
    chain = interval_chain(MultiDegree.of(2, 3))
    assert [str(c) for c in chain] == ["[2,3]", "[1,1,2]", "[1,1]", "[]"]
    assert len(interval_chain(MultiDegree.of(3))) == 3
    assert len(interval_chain(MultiDegree.of(8))) == 122


def test_chain_cap():
    with pytest.raises(ResourceError):
        interval_chain(MultiDegree.of(9), max_length=100)


def test_chain_cap_from_environment(monkeypatch):
    monkeypatch.setenv("PENTA_MAX_CHAIN", "50")
    with pytest.raises(ResourceError):
        interval_chain(MultiDegree.of(8))


@given(small_degrees)
def test_chain_strictly_descends_to_empty(d):
    chain = list(iter_chain(d.multiplicity()))
    assert chain[-1].is_empty
    assert all(not c.is_empty for c in chain[:-1])


def test_partitions_count():
    # partition numbers p(1..8) = 1, 2, 3, 5, 7, 11, 15, 22
    assert sum(1 for _ in multidegrees_up_to(8)) == 66
