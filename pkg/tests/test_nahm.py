from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import direct_product
from jonestails.acceptance import FIGURE_EIGHT_L, FIGURE_EIGHT_MATRIX
from jonestails.diagram import faces, nahm_data, nahm_data_from_pd
from jonestails.errors import BoundTooLarge, InputError, RegularityViolation
from jonestails.knots import knot_diagram, knot_names
from jonestails.nahm import (
    GenericNahmSpec, admissible_set, box_oracle, centered_state_oracle, diagram_regularity,
    enumerate_adm, generic_nahm, generic_nahm_result, nahm_sum, phi0, phi0_result, phi1,
    regularity_guard,
)
from jonestails.qseries import QSeries

# frozen from the k = 1 stability residuals (see test_stability)
PHI1_FIGURE_EIGHT = [2, -1, -2, -1, -1, 1, 0, 2, 1, 1, 1, 1, -1, 0, 0, -2, -1, -1, -1, -1]
PHI1_TREFOIL = [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1, 0, 0, 0, 0]


def nd_of(name, mirror=False):
    d = knot_diagram(name)
    return nahm_data_from_pd(d.mirror() if mirror else d)


def brute_force_figure_eight(N):
    """Admissible points of the printed figure-eight data, straight from the definition."""
    out = set()
    for a, b, c in itertools.product(range(N + 1), repeat=3):
        for d, e in itertools.product(range(-N, N + 1), repeat=2):
            if min(a + d, b + d, c + d, b + e, c + e) < 0:
                continue
            lam = (a, b, c, d, e)
            quad = Fraction(sum(lam[i] * FIGURE_EIGHT_MATRIX[i][j] * lam[j]
                                for i in range(5) for j in range(5)), 2)
            if quad + sum(l * x for l, x in zip(FIGURE_EIGHT_L, lam)) <= N:
                out.add(lam)
    return out


def test_n_zero_is_origin():
    for name in ("3_1", "6_2", "8_5"):
        nd = nd_of(name)
        assert admissible_set(nd, 0) == {(0,) * nd.n_vars}
    with pytest.raises(InputError):
        list(enumerate_adm(nd_of("4_1"), -1))


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_figure_eight_matches_printed_brute_force(N):
    nd = nd_of("4_1")
    # locate the printed variable order inside ours
    perm = None
    for p in itertools.permutations(range(5)):
        if all(nd.Q2x[p[i]][p[j]] == FIGURE_EIGHT_MATRIX[i][j] for i in range(5) for j in range(5)) \
                and all(nd.L()[p[i]] == FIGURE_EIGHT_L[i] for i in range(5)):
            perm = p
            break
    assert perm is not None
    ours = {tuple(lam[perm[i]] for i in range(5)) for lam in admissible_set(nd, N)}
    assert ours == brute_force_figure_eight(N)


@pytest.mark.parametrize("name", ["3_1", "4_1", "5_2", "6_1", "6_3", "K_-3"])
def test_oracles_agree(name):
    d = knot_diagram(name)
    nd = nahm_data_from_pd(d)
    for N in range(4):
        a = admissible_set(nd, N)
        assert a == box_oracle(nd, N)
        states = centered_state_oracle(nd, N, d)
        assert a == {p for p in states if nd.q2(p) <= N}


@pytest.mark.parametrize("name", ["4_1", "7_4", "8_2"])
def test_point_invariants(name):
    nd = nd_of(name)
    pts = list(enumerate_adm(nd, 6))
    assert len({p.lam for p in pts}) == len(pts)
    for p in pts:
        assert min(p.edge_values) >= 0
        assert max(p.edge_values) <= p.q2_value <= 6
        assert p.q2_value == nd.q2(p.lam)


def test_figure_eight_sign_is_parity_of_d():
    nd = nd_of("4_1")
    d_var = next(i for i, l in enumerate(nd.L()) if l == Fraction(1, 2))
    for p in enumerate_adm(nd, 8):
        assert p.sign == (-1) ** (p.lam[d_var] % 2)


def test_cap():
    with pytest.raises(BoundTooLarge):
        list(enumerate_adm(nd_of("8_5"), 30, cap=1000))


def test_figure_eight_tail_is_euler_product():
    assert phi0(nd_of("4_1"), 50).int_coeffs(50) == direct_product(range(1, 50), 50)


def test_trefoil_tail_and_head():
    assert phi0(nd_of("3_1", mirror=True), 30) == QSeries.from_int_coeffs([1], 30)
    assert phi0(nd_of("3_1"), 30).int_coeffs(30) == direct_product(range(1, 30), 30)


@pytest.mark.parametrize("name", knot_names())
def test_phi0_head_and_unit_constant(name):
    nd = nd_of(name)
    long = phi0(nd, 12)
    assert long.coeff(0) == 1 and long.min_exp == 0
    assert phi0(nd, 2) == long.truncate(8)


def test_phi0_result_json():
    r = phi0_result(nd_of("4_1"), 10)
    js = r.to_json()
    assert set(js) == {"series", "points_enumerated", "regularity_c"}
    assert js["points_enumerated"] > 0
    assert Fraction(js["regularity_c"]) >= 1


def test_bare_sum_figure_eight_identity():
    N = 30
    bare = nahm_sum(nd_of("4_1"), N)
    e = QSeries.from_int_coeffs(direct_product(range(1, N), N), N)
    assert (bare * e * e * e * QSeries.from_int_coeffs([1, -1])).agrees_with(QSeries.one(), 4 * N)


def test_phi1_frozen():
    assert phi1(nd_of("4_1"), 20).int_coeffs(20) == PHI1_FIGURE_EIGHT
    assert phi1(nd_of("3_1"), 20).int_coeffs(20) == PHI1_TREFOIL
    assert phi1(nd_of("3_1", mirror=True), 20) == QSeries.from_int_coeffs([1], 20)


@settings(max_examples=6)
@given(st.integers(2, 14), st.integers(2, 14))
def test_phi1_truncation_monotone(n1, n2):
    lo, hi = sorted((n1, n2))
    nd = nd_of("5_2")
    assert phi1(nd, hi).truncate(4 * lo) == phi1(nd, lo)


@pytest.mark.parametrize("name", ["4_1", "6_2"])
def test_v_inf_choice(name):
    f = faces(knot_diagram(name))
    vals = {v: phi0(nahm_data(f, v), 20) for v in f.a_faces}
    assert len(set(map(str, vals.values()))) == 1


# ----------------------------------------------------------- generic sums
def test_rogers_ramanujan_shape():
    N = 30
    got = generic_nahm(GenericNahmSpec(((2,),), (0,), (0,), (), N))
    # sum q^(n^2)/(q)_n equals prod over k = 1, 4 mod 5 of 1/(1-q^k)
    inv = QSeries.from_int_coeffs(direct_product([k for k in range(1, N) if k % 5 in (1, 4)], N), N)
    assert (got * inv).agrees_with(QSeries.one(), 4 * N)


def test_empty_cone_is_one():
    spec = GenericNahmSpec(((2, 0), (0, 2)), (0, 0), (0, 0), ((-1, 0), (0, -1)), 10)
    s, rep = generic_nahm_result(spec)
    assert s == QSeries.from_int_coeffs([1], 10)
    assert not rep.flagged


def test_negative_form_is_flagged():
    with pytest.raises(RegularityViolation):
        generic_nahm(GenericNahmSpec(((-2,),), (0,), (0,), (), 5))
    assert regularity_guard(iter([(Fraction(-1), 1)])).flagged
    assert not regularity_guard(iter([])).flagged


def test_generic_spec_validation():
    with pytest.raises(InputError):
        GenericNahmSpec(((1, 2), (3, 1)), (0, 0), (0, 0), (), 5)
    with pytest.raises(InputError):
        GenericNahmSpec(((1,),), (0, 0), (0,), (), 5)
    with pytest.raises(InputError):
        GenericNahmSpec(((1,),), (0,), (0,), ((Fraction(1, 2),),), 5)


def test_figure_eight_identity_as_generic_sum():
    """The figure-eight sum written over its eight arc values."""
    N = 8
    Q, L = FIGURE_EIGHT_MATRIX, FIGURE_EIGHT_L
    # lambda = M n for n = (a, b, c, a+d, b+d, c+d, b+e, c+e)
    M = [[1, 0, 0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0, 0],
         [-1, 0, 0, 1, 0, 0, 0, 0], [0, -1, 0, 0, 0, 0, 1, 0]]
    A = tuple(tuple(sum(M[i][r] * Q[i][j] * M[j][s] for i in range(5) for j in range(5))
                    for s in range(8)) for r in range(8))
    b = tuple(sum(L[i] * M[i][r] for i in range(5)) for r in range(8))
    eqs = []
    for row in ((1, -1, 0, -1, 1, 0, 0, 0), (1, 0, -1, -1, 0, 1, 0, 0), (0, 1, -1, 0, 0, 0, -1, 1)):
        eqs += [row, tuple(-x for x in row)]
    s = generic_nahm(GenericNahmSpec(A, b, (1, 0, 0, 1, 0, 0, 0, 0), tuple(eqs), N))
    e = QSeries.from_int_coeffs(direct_product(range(1, N), N), N)
    assert (s * e * e * e * QSeries.from_int_coeffs([1, -1])).agrees_with(QSeries.one(), 4 * N)


def test_diagram_regularity_constant():
    rep = diagram_regularity(nd_of("6_2"), 6)
    assert not rep.flagged and rep.c >= 1
