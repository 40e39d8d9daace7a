"""Bound functions against a literal recursive evaluation on multi-degrees."""

import json
import math
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from penta.bounds import (
    base_case_conflicts,
    bigger_n_criteria,
    chain_length,
    chain_summary,
    m_table,
    n0,
    n_bound,
    n_of_degree,
    n_of_multidegree,
    r0,
    r_bound,
    r_bound_walk,
    r_of_degree,
)
from penta.errors import DomainError, ResourceError
from penta.multidegree import MultiDegree, MultiplicitySequence, derived_multidegree, iter_chain, multidegrees_up_to

PUBLISHED_N = {
    3: 4,
    4: 9,
    5: 22,
    6: 160,
    7: 20376,
    8: 11914188890,
    9: 8616199237736295920955120,
    10: 192884152577980851363553858004926940342106493833715693762179,
}


# -- independent oracle: the recursions written directly on multi-degrees ----


def _n0_direct(d: MultiDegree, r: int) -> Fraction:
    return r + Fraction(sum(math.comb(di + r, r) - 1 for di in d), r)


@lru_cache(maxsize=None)
def r_oracle(d: MultiDegree) -> int:
    if d.is_empty:
        return -2
    return max(sum(di - 1 for di in d) - 1, r_oracle(derived_multidegree(d)) + 1)


@lru_cache(maxsize=None)
def n_oracle(d: MultiDegree, r: int) -> Fraction:
    c = len(d)
    if r == -1:
        return Fraction(c - 1)
    if r == 0:
        return Fraction(sum(d))
    if all(di == 1 for di in d):
        return Fraction(r + c)
    if d.degrees[-1] == 2 and all(di == 1 for di in d.degrees[:-1]):
        return Fraction(2 * r + c + 1)
    return max(_n0_direct(d, r), n_oracle(derived_multidegree(d), r - 1) + 1)


small = [d for d in multidegrees_up_to(9) if chain_length(d) < 3000]


# -- r0 and n0 ---------------------------------------------------------------


def test_r0_examples():
    assert r0(MultiDegree.of(3)) == 1
    assert r0(MultiDegree()) == -1
    assert r0(MultiDegree.of(2, 3)) == 2


def test_n0_examples():
    assert n0(MultiDegree.of(3), 1) == 4
    assert n0(MultiDegree.of(6), 6) == Fraction(959, 6)
    assert n0(MultiDegree.of(7), 17) == 20376
    with pytest.raises(DomainError):
        n0(MultiDegree.of(3), 0)


# -- r -----------------------------------------------------------------------


def test_r_examples():
    assert r_bound(MultiDegree()) == -2
    assert r_bound(MultiDegree.of(3)) == 1
    assert r_bound(MultiDegree.of(2, 3)) == 2


@pytest.mark.parametrize("d", small, ids=str)
def test_r_matches_oracle(d):
    expected = r_oracle(d)
    assert r_bound_walk(d) == expected
    assert r_bound(d) == expected


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=4))
def test_jump_equals_walk(ds):
    d = MultiDegree(tuple(ds))
    summary = chain_summary(d)
    if summary.length > 50_000:
        return
    assert summary.r_value == r_bound_walk(d)
    assert summary.length == sum(1 for _ in iter_chain(d.multiplicity()))


def test_r_walk_respects_cap():
    with pytest.raises(ResourceError):
        r_bound(MultiDegree.of(9), method="walk", max_chain=1000)


def test_chain_lengths_for_long_chains():
    # r(d) = #chain - 2 for d_c >= 3 gives the length without walking
    for d in range(3, 15):
        assert chain_length(MultiDegree.of(d)) == r_of_degree(d) + 2


def test_low_degree_closed_form():
    for a in range(9):
        for b in range(9):
            mu = MultiplicitySequence((a, b))
            if not mu.is_empty:
                assert r_bound(mu) == b - 1


# -- n -----------------------------------------------------------------------


def test_n_examples():
    assert n_bound(MultiDegree.of(1, 1, 2), 1) == 6
    assert n_bound(MultiDegree.of(1, 1, 1), 5) == 8
    assert n_bound(MultiDegree.of(2, 3), 2) == 9
    with pytest.raises(DomainError):
        n_bound(MultiDegree.of(3), -2)


@pytest.mark.parametrize("d", small, ids=str)
def test_n_matches_oracle(d):
    for r in range(-1, min(r_oracle(d), 40) + 1):
        assert n_bound(d, r) == n_oracle(d, r)


def test_base_cases_are_consistent():
    assert base_case_conflicts(6) == []


def test_reports_for_multidegrees():
    rep = n_of_multidegree(MultiDegree.of(5))
    assert (rep.r_value, rep.n_value_exact, rep.n_value_integer) == (3, Fraction(64, 3), 22)
    rep = n_of_multidegree(MultiDegree.of(2, 3))
    assert (rep.r_value, rep.n_value_integer, rep.chain_length) == (2, 9, 4)
    data = rep.to_json()
    assert all(isinstance(v, str) for v in data.values())


@pytest.mark.parametrize("d", range(3, 11))
def test_published_values(d):
    assert n_of_degree(d).n_value_integer == PUBLISHED_N[d]


@pytest.mark.parametrize("d", range(3, 10))
def test_recursion_collapses_for_single_degrees(d):
    rep = n_of_multidegree(MultiDegree.of(d))
    assert rep.n_value_exact == n_of_degree(d).n_value_exact
    assert rep.r_value == r_of_degree(d)


def test_n10_is_sixty_digits_below_2_197():
    text = json.loads(json.dumps(n_of_degree(10).to_json()))["n"]
    assert len(text) == 60 and int(text) < 2**197


# -- m-table -----------------------------------------------------------------


def test_m_table_examples():
    t = m_table(8, 3)
    assert t.m(0) == 1 and t.m(1) == 0 and t.rows[0] == (1, 0, 0, 0)
    assert t.m(4) == 3 and t.m(6) == 103
    assert t.rows[8] == (20700541, 88819638509, 214404499562520, 368104651084030885)
    csv = t.to_csv(3, 8, 3).splitlines()
    assert csv[1] == "3,1,3,4,5" and len(csv) == 7


def test_r_of_degree_examples():
    assert [r_of_degree(d) for d in (3, 7, 8)] == [1, 17, 120]
    with pytest.raises(DomainError):
        r_of_degree(2)


# -- the two criteria --------------------------------------------------------


def test_bigger_n_examples():
    assert bigger_n_criteria(MultiplicitySequence.of(0, 0, 1), 10)[0]
    assert bigger_n_criteria(MultiplicitySequence.of(0, 0, 1), 10)[2]
    assert bigger_n_criteria(MultiplicitySequence.of(5, 5), 2)[:2] == (False, False)


@settings(max_examples=300)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=6).filter(lambda l: l[-1] > 0), st.integers(2, 30))
def test_criteria_are_sound(mu, r):
    large, small_dc, diamond = bigger_n_criteria(MultiplicitySequence(tuple(mu)), r)
    assert diamond or not (large or small_dc)
