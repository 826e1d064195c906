from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from conftest import direct_product
from jonestails.errors import DivergentProduct, NonUnitLeadingCoefficient, OutOfRange, ZeroSeries
from jonestails.qseries import (
    INF, QMonomial, QSeries, divide_by_lowest, euler_expand_pochhammer_inf, pochhammer, qbinom,
    qs_inverse_unit, qpoch_inf_list,
)

Q = QSeries.from_int_coeffs


def poly(*c):
    return QSeries.from_int_coeffs(list(c))


series = st.builds(
    lambda lo, cs, t: QSeries.make(lo, cs, None if t is None else lo + len(cs) + t),
    st.integers(-8, 8),
    st.lists(st.integers(-5, 5), max_size=12),
    st.one_of(st.none(), st.integers(0, 8)),
)


def test_add_cancels():
    assert poly(1, -1) + poly(0, 1) == QSeries.one()


def test_add_takes_smaller_truncation():
    a = QSeries.make(0, [1, 0, 0, 0, 1], 8)
    b = QSeries.make(0, [1], 40)
    s = a + b
    assert s.trunc == 8
    assert s == QSeries.make(0, [2, 0, 0, 0, 1], 8)
    assert (QSeries.zero(12) + a).trunc == 8


def test_geometric_series_inverse():
    g = qs_inverse_unit(poly(1, -1), 40)
    assert g == Q([1] * 10, 10)
    assert (poly(1, -1) * g).agrees_with(QSeries.one(), 40)


def test_half_powers_multiply_on_quarter_grid():
    h = QSeries.monomial(2)
    assert h * h == QSeries.monomial(4)
    assert qs_inverse_unit(h) == QSeries.monomial(-2)


def test_finite_pochhammer():
    assert pochhammer(4, 2) == poly(1, -1, -1, 1)
    assert pochhammer(4, 0) == QSeries.one()
    assert pochhammer(4, 1) == poly(1, -1)


def test_infinite_pochhammer_is_pentagonal():
    assert pochhammer(4, INF, 36) == Q([1, -1, -1, 0, 0, 1, 0, 1, 0], 9)
    with pytest.raises(DivergentProduct):
        pochhammer(0, INF, 20)


def test_pentagonal_support():
    N = 200
    c = list(qpoch_inf_list(N))
    assert c == direct_product(range(1, N), N)
    pent = {k * (3 * k - 1) // 2 for k in range(-20, 21)}
    for i, x in enumerate(c):
        assert x in (-1, 0, 1)
        assert (x != 0) == (i in pent)


def test_inverse_of_euler_product():
    e = Q(list(qpoch_inf_list(60)), 60)
    assert (e * qs_inverse_unit(e)).agrees_with(QSeries.one(), 240)


def test_inverse_needs_unit():
    with pytest.raises(NonUnitLeadingCoefficient):
        qs_inverse_unit(poly(2, 1), 10)


def test_qbinom():
    assert qbinom(2, 1) == poly(1, 1)
    assert qbinom(5, 0) == QSeries.one()
    assert qbinom(4, 2) == poly(1, 1, 2, 1, 1)
    with pytest.raises(OutOfRange):
        qbinom(2, 3)


@given(st.integers(0, 9), st.integers(0, 9))
def test_qbinom_is_quotient_of_factorials(a, b):
    if b > a:
        return
    num = pochhammer(4, a)
    den = pochhammer(4, b) * pochhammer(4, a - b)
    assert qbinom(a, b) * den == num


def test_euler_expansions():
    N = 40
    plus = euler_expand_pochhammer_inf(+1, N)
    minus = euler_expand_pochhammer_inf(-1, N)
    assert plus[0].agrees_with(QSeries.one(), N)
    assert minus[0].agrees_with(QSeries.one(), N)
    assert plus[1].agrees_with(-qs_inverse_unit(poly(1, -1), N), N)
    # (x;q)_inf * 1/(x;q)_inf = 1 at every power of x
    for j in range(1, min(len(plus), len(minus))):
        tot = QSeries.zero(N)
        for i in range(j + 1):
            tot = tot + (plus[i] * minus[j - i]).truncate(N)
        assert tot.agrees_with(QSeries.zero(N), N)


def test_divide_by_lowest():
    a = QSeries.from_dict({-10: -1, -6: 1, 2: -1})
    m, u = divide_by_lowest(a)
    assert (m.sign, m.exp_q) == (-1, -10)
    assert u == poly(1, -1, 0, 1)
    m, u = divide_by_lowest(poly(1, 1))
    assert (m.sign, m.exp_q) == (1, 0) and u == poly(1, 1)
    with pytest.raises(ZeroSeries):
        divide_by_lowest(QSeries.zero())
    assert isinstance(m, QMonomial)


def test_json_round_trip_and_text():
    s = QSeries.make(-2, [1, 0, 3], 12)
    assert QSeries.from_json(s.to_json()) == s
    assert set(s.to_json()) == {"min_exp_quarters", "coefficients", "trunc_quarters"}
    assert str(poly(1, -2)) == "1 - 2*q"
    assert str(QSeries.monomial(2)) == "q^(2/4)" or "q^(1/2)" in str(QSeries.monomial(2))


@given(series, series, series)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    lhs, rhs = a * (b + c), a * b + a * c
    # distributivity holds on the range both sides know
    t = min(x for x in (lhs.trunc, rhs.trunc, 10**6) if x is not None)
    assert lhs.truncate(t) == rhs.truncate(t)


@given(series)
def test_canonical_form(a):
    assert a.is_zero or a.coeffs[0] != 0
    if a.trunc is not None and not a.is_zero:
        assert len(a.coeffs) == a.trunc - a.min_exp


@given(st.integers(1, 30), st.integers(1, 30))
def test_truncation_monotone(n1, n2):
    lo, hi = sorted((n1, n2))
    a = Q(list(qpoch_inf_list(lo)), lo)
    b = Q(list(qpoch_inf_list(hi)), hi)
    assert b.truncate(4 * lo) == a
