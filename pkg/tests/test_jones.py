from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from jonestails.errors import NonUnitLowestCoefficient, ParseError, WidthMismatch
from jonestails.jones import (
    BraidWord, braid_to_pd, crossing_weights, hat_jones, jones_braid, kauffman_jones,
    min_degree_check, quantum_integer,
)
from jonestails.knots import knot_names, knot_record
from jonestails.qseries import QSeries

TABLE = [n for n in knot_names() if not n.startswith("K_")]


def braid(name):
    return BraidWord.parse(knot_record(name)["braid"])


def test_braid_parse():
    b = BraidWord.parse("w:3 1 -2 1 -2")
    assert (b.width, b.word) == (3, (1, -2, 1, -2))
    assert str(b) == "w:3 1 -2 1 -2"
    assert BraidWord.parse("1 1 1").width == 2
    with pytest.raises(WidthMismatch):
        BraidWord.parse("w:2 1 2")
    with pytest.raises(ParseError):
        BraidWord.parse("w:2 x")
    with pytest.raises(WidthMismatch):
        BraidWord(0, ())


@pytest.mark.parametrize("n", range(8))
def test_unknot_is_quantum_integer(n):
    assert jones_braid(BraidWord(1, ()), n) == quantum_integer(n + 1)
    assert jones_braid(BraidWord.parse("w:2 1"), n) == quantum_integer(n + 1)


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "6_2", "7_4"])
def test_colour_zero_is_one(name):
    assert jones_braid(braid(name), 0) == QSeries.one()


def test_weight_tables():
    w0 = crossing_weights(0, 1)
    assert set(w0.entries) == {(0, 0, 0, 0)}
    assert crossing_weights(0, -1).weight(0, 0, 0, 0) == QSeries.one()
    assert crossing_weights(1, 1).weight(1, 0, 0, 1) == QSeries.monomial(4)
    for n in range(4):
        for sign in (1, -1):
            t = crossing_weights(n, sign)
            for (a, b, c, d) in t.entries:
                assert a + b == c + d
                assert max(a, b, c, d) <= n and min(a, b, c, d) >= 0
                assert sign * (a - d) >= 0
            assert t.weight(1, 1, 0, 0).is_zero


@pytest.mark.parametrize("name", TABLE)
def test_colour_one_matches_bracket(name):
    b = braid(name)
    assert jones_braid(b, 1) == quantum_integer(2) * kauffman_jones(braid_to_pd(b))


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2"])
@pytest.mark.parametrize("n", range(4))
def test_mirror_symmetry(name, n):
    b = braid(name)
    assert jones_braid(b.mirror(), n) == jones_braid(b, n).mirror()


@settings(max_examples=5)
@given(st.integers(2, 3).flatmap(lambda w: st.tuples(
    st.just(w), st.lists(st.sampled_from([g for g in range(-(w - 1), w) if g]), min_size=1, max_size=5))),
    st.sampled_from([1, -1]), st.integers(0, 3))
def test_markov_stabilization(bw, sign, n):
    w, word = bw
    b = BraidWord(w, tuple(word))
    assert jones_braid(b.stabilize(sign), n) == jones_braid(b, n)


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3"])
def test_hat_is_unit_polynomial(name):
    b = braid(name)
    top = 8 if b.width <= 3 and len(b.word) <= 5 else 4
    for n in range(top + 1):
        _, u = hat_jones(jones_braid(b, n))
        assert u.trunc is None and u.min_exp == 0 and u.coeff(0) == 1
        assert u.has_integer_exponents()


def test_hat_examples():
    m, u = hat_jones(quantum_integer(4))
    assert (m.sign, m.exp_q) == (1, -6)
    assert u == QSeries.from_int_coeffs([1, 1, 1, 1])
    m, u = hat_jones(QSeries.monomial(12).scale(-1))
    assert (m.sign, m.exp_q, u) == (-1, 12, QSeries.one())
    with pytest.raises(NonUnitLowestCoefficient):
        hat_jones(QSeries.from_int_coeffs([2, 1]))
    with pytest.raises(NonUnitLowestCoefficient):
        hat_jones(QSeries.zero())


def test_min_degree_examples():
    j = jones_braid(braid("4_1"), 1)
    assert j.min_exp == -10
    assert min_degree_check(j, 2, 0, 1)
    for n in range(6):
        assert min_degree_check(quantum_integer(n + 1), 0, 0, n)
    t = braid("3_1")
    rec = knot_record("3_1")
    assert (rec["c_minus"], rec["sigma"]) == (3, 2)
    for n in range(5):
        assert min_degree_check(jones_braid(t, n), 3, 2, n)


@pytest.mark.parametrize("name", ["5_2", "6_2", "7_5"])
def test_min_degree_table(name):
    rec = knot_record(name)
    b = BraidWord.parse(rec["braid"])
    for n in range(3):
        assert min_degree_check(jones_braid(b, n), rec["c_minus"], rec["sigma"], n)


def test_truncated_evaluation_agrees_with_exact():
    b = braid("5_2")
    exact = jones_braid(b, 3)
    cut = jones_braid(b, 3, N_hint=6)
    assert cut.trunc is not None
    assert exact.truncate(cut.trunc) == cut
    assert cut.trunc - cut.min_exp >= 24
