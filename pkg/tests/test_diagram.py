from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jonestails.diagram import (
    TaitGraph, faces, graph_isomorphic, nahm_data, nahm_data_from_pd, parse_pd, reduced_tait,
    tait_graph,
)
from jonestails.errors import NotAlternating, NotConnected, NotReduced, ParseError, TooLarge, VInfNotAFace
from jonestails.knots import diagram_from_rotation, knot_diagram, knot_names, rational_tait_rotation

TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
# two trefoils joined through one crossing (Tait graph: two triangles and a bridge)
NUGATORY = "X[14,11,1,12] X[10,13,11,14] X[12,9,13,10] X[2,5,3,6] X[6,3,7,4] X[4,7,5,8] X[8,2,9,1]"
NAMES = knot_names()


def test_parse_trefoil():
    d = parse_pd(TREFOIL)
    assert d.n_crossings == 3
    assert len(d.arcs) == 6
    assert len(faces(d).faces) == 5


def test_parse_accepts_loose_formats():
    a = parse_pd("# trefoil\nX 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n")
    assert a.crossings == parse_pd(TREFOIL).crossings
    assert parse_pd("PD[" + TREFOIL.replace(" ", ", ") + "]").crossings == a.crossings


@pytest.mark.parametrize(
    "text, err",
    [
        ("X[1,4,2,5] X[3,6,4,1] X[5,2,1,3]", ParseError),
        ("X[1,4,2] X[3,6,4,1]", ParseError),
        ("Y[1,2,3,4]", ParseError),
        ("X[a,b,c,d]", ParseError),
        ("", ParseError),
        ("X[4,8,1,3] X[4,8,5,7] X[6,1,7,2] X[2,5,3,6]", NotAlternating),
        (TREFOIL + " X[11,14,12,15] X[13,16,14,11] X[15,12,16,13]", NotConnected),
        ("X 1 1 2 2", NotReduced),
        (NUGATORY, NotReduced),
    ],
)
def test_parse_rejects(text, err):
    with pytest.raises(err):
        parse_pd(text)


def test_trefoil_faces_split_two_three():
    f = faces(parse_pd(TREFOIL))
    assert sorted((len(f.a_faces), len(f.b_faces))) == [2, 3]


def test_figure_eight_faces():
    f = faces(knot_diagram("4_1"))
    assert len(f.a_faces) == 3 and len(f.b_faces) == 3


@pytest.mark.parametrize("name", NAMES)
def test_counts(name):
    d = knot_diagram(name)
    c = d.n_crossings
    f = faces(d)
    assert len(f.faces) == c + 2
    nd = nahm_data(f)
    assert nd.n_vars == c + 1
    assert len(nd.edge_rows) == 2 * c
    assert len(nd.poly_rows) == c
    for row in nd.edge_rows:
        assert set(row) <= {0, 1} and 1 <= sum(row) <= 2
    for row in nd.poly_rows:
        assert set(row) <= {0, 1} and 3 <= sum(row) <= 4
    Q = nd.Q2x
    assert all(Q[i][j] == Q[j][i] >= 0 for i in range(nd.n_vars) for j in range(nd.n_vars))
    for i in nd.b_vars:
        assert Q[i][i] == 0
    t = tait_graph(f)
    assert len(t.edges) == c


@pytest.mark.parametrize("name", ["4_1", "6_2", "7_7", "8_5"])
@given(lam=st.lists(st.integers(-30, 30), min_size=9, max_size=9))
def test_quadratic_plus_linear_is_integral(name, lam):
    nd = nahm_data_from_pd(knot_diagram(name))
    x = lam[: nd.n_vars]
    Q = nd.Q2x
    val = Fraction(sum(x[i] * Q[i][j] * x[j] for i in range(nd.n_vars) for j in range(nd.n_vars)), 2)
    val += sum(l * v for l, v in zip(nd.L(), x))
    assert val.denominator == 1
    assert nd.q2(x) == val


def test_figure_eight_edge_functionals():
    nd = nahm_data_from_pd(knot_diagram("4_1"))
    # printed variable order: B-faces a, b, c, then A-faces d, e
    names = "abcde"
    expect = sorted(["a", "b", "c", "ad", "bd", "cd", "be", "ce"])
    found = False
    for perm in itertools.permutations(range(5)):
        rows = sorted("".join(sorted(names[perm.index(i)] for i in idx)) for idx in nd.edge_index)
        if rows == expect and [nd.var_colors[perm[k]] for k in range(5)] == list("BBBAA"):
            found = True
            break
    assert found


def test_tait_graph_examples():
    t = tait_graph(faces(knot_diagram("4_1")))
    assert (len(t.vertices), len(t.edges)) == (3, 4)
    t3 = tait_graph(faces(parse_pd(TREFOIL)))
    assert (len(t3.vertices), len(t3.edges)) in {(2, 3), (3, 3)}
    r = reduced_tait(tait_graph(faces(parse_pd(TREFOIL).mirror())))
    assert len(r.edges) in {1, 3}
    if len(t3.vertices) == 2:
        assert len(reduced_tait(t3).edges) == 1


def test_reduced_tait_collapses_multi_edges():
    empty = TaitGraph((0,), ())
    assert reduced_tait(empty).edges == ()
    cyc = [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert sorted(reduced_tait(TaitGraph((0, 1, 2, 3), tuple(cyc * 2))).edges) == sorted(
        (min(e), max(e)) for e in cyc)
    r = reduced_tait(tait_graph(faces(knot_diagram("8_1"))))
    assert len(r.edges) <= 3


def test_isomorphism():
    p3 = TaitGraph((0, 1, 2), ((0, 1), (1, 2)))
    p3b = TaitGraph((5, 6, 7), ((5, 7), (7, 6)))
    tri = TaitGraph((0, 1, 2), ((0, 1), (1, 2), (2, 0)))
    assert graph_isomorphic(p3, p3b)
    assert not graph_isomorphic(p3, tri)
    big = TaitGraph(tuple(range(40)), tuple((i, i + 1) for i in range(39)))
    with pytest.raises(TooLarge):
        graph_isomorphic(big, big)


def test_two_presentations_of_6_1():
    d1 = knot_diagram("6_1")
    d2 = diagram_from_rotation(rational_tait_rotation([2, 4]))
    assert d1.crossings != d2.crossings
    g = lambda d: reduced_tait(tait_graph(faces(d)))
    assert graph_isomorphic(g(d1), g(d2))


def test_v_inf_must_be_an_a_face():
    f = faces(knot_diagram("4_1"))
    with pytest.raises(VInfNotAFace):
        nahm_data(f, f.b_faces[0])
    with pytest.raises(VInfNotAFace):
        nahm_data(f, 99)
    for v in f.a_faces:
        assert nahm_data(f, v).v_inf == v


def test_auto_v_inf_is_largest_a_face():
    f = faces(knot_diagram("6_2"))
    nd = nahm_data(f)
    assert f.degree(nd.v_inf) == max(f.degree(a) for a in f.a_faces)


def test_relabel_preserves_data_up_to_permutation():
    rng = random.Random(1)
    d = knot_diagram("7_4")
    labels = list(d.arcs)
    perm = dict(zip(labels, rng.sample(labels, len(labels))))
    a, b = nahm_data_from_pd(d), nahm_data_from_pd(d.relabel(perm))
    assert sorted(map(sorted, a.Q2x)) == sorted(map(sorted, b.Q2x))
    assert sorted(a.L2) == sorted(b.L2)


def test_json_export():
    nd = nahm_data_from_pd(knot_diagram("4_1"))
    js = nd.to_json()
    assert {"matrix", "L2", "edge_rows", "poly_rows"} <= set(js)
    assert js["matrix"] == [list(r) for r in nd.Q2x]
