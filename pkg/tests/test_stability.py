from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from conftest import direct_product
from jonestails.diagram import nahm_data_from_pd
from jonestails.errors import InputError, NotStabilized
from jonestails.jones import BraidWord, jones_braid
from jonestails.knots import knot_diagram, knot_record
from jonestails.nahm import phi0, phi1
from jonestails.qseries import QSeries
from jonestails.stability import (
    StabilityReport, empirical_phi, fit_rate_constants, jones_sequence, limit_check,
    normalized_hat_jones, residual, valuation, verify_0stability, verify_kstability,
)

Q = QSeries.from_int_coeffs


@lru_cache(maxsize=None)
def seq_of(name, n_max, extra):
    b = BraidWord.parse(knot_record(name)["braid"])
    return jones_sequence(b, n_max, lambda n: 2 * (n + 1) + extra)


def nd_of(name):
    return nahm_data_from_pd(knot_diagram(name))


def test_unknot_sequence_is_one():
    for n in range(1, 6):
        assert normalized_hat_jones(jones_braid(BraidWord(1, ()), n), n) == QSeries.one()


def test_normalized_is_polynomial_for_exact_input():
    j = jones_braid(BraidWord.parse(knot_record("4_1")["braid"]), 3)
    f = normalized_hat_jones(j, 3)
    assert f.trunc is None and f.coeff(0) == 1


def test_valuation_and_residual():
    assert valuation(Q([0, 0, 3])) == 2
    assert valuation(QSeries.zero(12)) is None
    with pytest.raises(InputError):
        valuation(QSeries.monomial(2))
    r = residual(Q([1, 0, 1, 1]), [Q([1]), Q([1])], 1)
    assert r == Q([0, 1])


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=8), st.integers(1, 2))
def test_constant_sequence(coeffs, k):
    f = Q(coeffs, 80)
    seq = {n: f for n in range(1, 31)}
    phis = empirical_phi(seq, k, 4)
    assert phis[0] == f.truncate(16)
    assert all(p == QSeries.zero(16) for p in phis[1:])


def test_first_order_needs_a_long_sequence():
    # coefficient m of Phi_1 needs Phi_0 through q^(n+1+m), hence terms past n+1+m
    seq = {n: Q([1], 80) for n in range(1, 9)}
    assert len(empirical_phi(seq, 1, 3)) == 2
    with pytest.raises(InputError):
        empirical_phi(seq, 1, 4)


def test_figure_eight_empirical_tail():
    seq = seq_of("4_1", 8, 4)
    (p,) = empirical_phi(seq, 0, 8)
    assert p.int_coeffs(8) == [1, -1, -1, 0, 0, 1, 0, 1]


def test_trefoil_mirror_sequence_tends_to_one():
    b = BraidWord.parse(knot_record("3_1")["braid"]).mirror()
    seq = jones_sequence(b, 8, 12)
    (p,) = empirical_phi(seq, 0, 8)
    heads = {tuple(p.int_coeffs(8)), tuple(empirical_phi(seq_of("3_1", 8, 4), 0, 8)[0].int_coeffs(8))}
    assert (1, 0, 0, 0, 0, 0, 0, 0) in heads


def test_disagreement_is_an_error():
    seq = {n: Q([1, 1], 40) for n in range(1, 6)}
    seq[5] = Q([1, 2], 40)
    with pytest.raises(NotStabilized):
        empirical_phi(seq, 0, 3)
    with pytest.raises(InputError):
        empirical_phi({1: Q([1], 40)}, 0, 3)
    with pytest.raises(InputError):
        empirical_phi({n: Q([1], 3) for n in range(1, 5)}, 0, 10)


@pytest.mark.parametrize("name", ["3_1", "4_1"])
def test_zero_stability(name):
    seq = seq_of(name, 8, 4)
    rep = verify_0stability(phi0(nd_of(name), 12), seq, 8, name)
    assert rep.passed
    assert all(v >= n + 1 for n, v in rep.residual_valuations.items())
    assert rep.to_json()["n_range"] == [1, 8]


def test_corrupted_tail_fails_from_three():
    good = phi0(nd_of("4_1"), 12)
    bad = good + QSeries.monomial(12)
    rep = verify_0stability(bad, seq_of("4_1", 8, 4), 8)
    assert not rep.passed
    assert [n for n, ok in rep.congruences.items() if not ok] == list(range(3, 9))


def test_zero_stability_needs_enough_terms():
    seq = {n: Q([1], 2) for n in range(1, 5)}
    with pytest.raises(InputError):
        verify_0stability(Q([1], 20), seq, 4)


def test_k_zero_reduces():
    seq = seq_of("4_1", 6, 4)
    p = phi0(nd_of("4_1"), 12)
    a = verify_kstability([p], seq, 6)
    b = verify_0stability(p, seq, 6)
    assert a.to_json() == b.to_json()
    with pytest.raises(InputError):
        verify_kstability([p], seq, 6, k=1)


def test_figure_eight_first_order():
    nd = nd_of("4_1")
    N = 20
    seq = seq_of("4_1", 8, 4)
    rep = verify_kstability([phi0(nd, N), phi1(nd, N)], seq, 8, 1, "4_1")
    assert rep.passed
    vals = [rep.residual_valuations[n] for n in range(1, 9)]
    assert vals == sorted(vals) and vals[0] > 0
    assert all(rep.certified.values())
    js = rep.to_json()
    assert set(js) == {"knot", "k", "n_range", "pass", "residual_valuations", "phi_heads"}
    assert js["phi_heads"][1][:4] == [2, -1, -2, -1]


def test_wrong_first_order_fails():
    nd = nd_of("4_1")
    seq = seq_of("4_1", 8, 4)
    p1 = phi1(nd, 20) + QSeries.monomial(8)
    assert not verify_kstability([phi0(nd, 20), p1], seq, 8).passed


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2"])
def test_empirical_matches_exact(name):
    n_max = 8
    seq = seq_of(name, n_max, 4)
    nd = nd_of(name)
    emp = empirical_phi(seq, 1, 3)
    assert emp[0] == phi0(nd, 3)
    assert emp[1] == phi1(nd, 3)
    assert empirical_phi(seq, 0, n_max - 1)[0] == phi0(nd, n_max - 1)


@pytest.mark.slow
def test_second_order_twist_knot():
    b = BraidWord.parse(knot_record("5_2")["braid"])
    seq = jones_sequence(b, 9, lambda n: 3 * (n + 1) + 8)
    nd = nd_of("5_2")
    p0, p1 = phi0(nd, 30), phi1(nd, 30)
    p2 = empirical_phi(seq, 2, 8, known=[p0, p1])[2]
    assert p2.int_coeffs(8) == [3, -4, -2, 3, 3, 3, -3, -2]
    rep = verify_kstability([p0, p1, p2], seq, 9, 2, "5_2")
    assert rep.passed
    good = [rep.residual_valuations[n] for n in sorted(rep.certified) if rep.certified[n]]
    assert good == sorted(set(good)) and len(good) >= 2


def test_limit_guard():
    target = QSeries.zero(None)
    # q^(-n^2) does not tend to zero: no common lower bound on the degrees
    seq = {n: QSeries.monomial(-4 * n * n) for n in range(1, 6)}
    assert not limit_check(seq, target)
    seq = {n: QSeries.monomial(4 * n) for n in range(1, 6)}
    assert limit_check(seq, target)
    e = Q(direct_product(range(1, 30), 30), 30)
    seq = {n: e.truncate(4 * n) + QSeries.monomial(4 * n) for n in range(1, 8)}
    assert limit_check(seq, e)


def test_rate_constants():
    c, cp = fit_rate_constants({0: 1, 1: 4, 2: 9})
    assert all(s <= c * (k + 1) ** 2 + cp for k, s in {0: 1, 1: 4, 2: 9}.items())
    assert (c, cp) == (1, 0)
    with pytest.raises(InputError):
        fit_rate_constants({})


def test_report_is_dataclass():
    rep = StabilityReport(0, [Q([1], 8)], {1: 2, 2: 3}, True)
    assert rep.n_range == [1, 2]
    assert rep.congruences == {1: True, 2: True}
