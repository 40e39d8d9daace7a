from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from penta.errors import TruncationError
from penta.series import (
    TruncatedSeries,
    advance,
    basis_decomposition,
    delta,
    delta_power,
    generate,
    interpolating_polynomial,
    inverse_power_coefficients,
    solve_basis,
)

FIGURE = {
    3: (1, 3, 4, 5),
    4: (3, 8, 13, 19),
    5: (11, 48, 127, 275),
    6: (103, 1106, 7051, 33955),
    7: (6359, 485280, 21029990, 654279500),
    8: (20700541, 88819638509, 214404499562520, 368104651084030885),
}


def test_inverse_power_coefficients():
    assert inverse_power_coefficients(1, 5) == [1, 1, 1, 1, 1]
    assert inverse_power_coefficients(3, 5) == [1, 3, 6, 10, 15]
    assert inverse_power_coefficients(0, 3) == [1, 0, 0]


def test_delta_on_monomial():
    F = TruncatedSeries.monomial(0, 4)
    assert delta(F, 0).coefficients == (0, 0, 1, 1, 1)


def test_truncation_guards():
    with pytest.raises(TruncationError):
        delta(TruncatedSeries.monomial(0, 1), 1)
    with pytest.raises(TruncationError):
        TruncatedSeries.monomial(0, 3)[4]


@settings(max_examples=40)
@given(st.lists(st.integers(-20, 20), min_size=6, max_size=9), st.integers(0, 4), st.integers(0, 7))
def test_advance_equals_repeated_delta(coeffs, i, m):
    F = TruncatedSeries(tuple(Fraction(c) for c in coeffs))
    if F.order < i + 1:
        return
    assert advance(F, i, m) == delta_power(F, i, m)


def test_generate_reproduces_figure():
    levels = generate(8, 8 + 3 + 2)
    for i, row in FIGURE.items():
        assert levels[i].row[:4] == row
    assert [lv.m for lv in levels[:3]] == [1, 0, 1]
    # F_1 = F_2 = x^2 / (1 - x)
    assert levels[1].series.coefficients == levels[2].series.coefficients
    assert levels[1].series.coefficients[:5] == (0, 0, 1, 1, 1)


def test_printed_decompositions():
    assert basis_decomposition(3).a == (1, 1)
    assert basis_decomposition(4).a == (1, 2, 1)
    assert basis_decomposition(5).a == (0, 1, 3, 4, 3, 1)


@pytest.mark.parametrize("i", range(3, 9))
def test_decomposition_properties(i):
    dec = basis_decomposition(i)
    levels = generate(i, i + 8)
    assert all(a >= 0 for a in dec.a)
    assert sum(dec.a) == levels[i].m + 1
    assert dec.size == sum(levels[k].m for k in range(i))
    assert [dec.coefficient(j) for j in range(6)] == list(levels[i].row[:6])


@pytest.mark.parametrize("i", [4, 5, 6])
def test_triangular_solve_agrees(i):
    levels = generate(i, i + 40)
    size = sum(levels[k].m for k in range(i))
    assert solve_basis(levels[i].series, i, size) == basis_decomposition(i).a


def test_interpolating_polynomial():
    f3 = interpolating_polynomial(3)
    assert f3.coefficients() == [2, 1]  # f_3(t) = t + 2
    assert [f3(j) for j in range(1, 4)] == [3, 4, 5]
    assert f3.upper_binomial_form(1) == 2  # the variant with C(t+k-1, k) misses m_{3,1} = 3
    f7 = interpolating_polynomial(7)
    assert f7.degree == 119  # C(t+k-1, k-1) has degree k-1, and k runs to 120
    assert [f7(j) for j in (1, 2, 3)] == list(FIGURE[7][1:])
