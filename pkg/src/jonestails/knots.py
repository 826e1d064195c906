"""Built-in knot table and the plane-graph constructions used to derive it.

Every alternating diagram here is generated from its Tait graph: rational
knots from Conway notation through series-parallel networks, and the
pretzel knot 8_5 from a theta graph.  :func:`build_table` regenerates the
shipped ``data/knots.json``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .diagram import LinkDiagram, faces, parse_pd, pd_from_plane_graph
from .errors import InputError


# ------------------------------------------------------- two-terminal networks
@dataclass
class _Network:
    """Plane two-terminal graph drawn in a horizontal strip, ``s`` left, ``t`` right.

    ``rot`` holds counterclockwise rotations of interior vertices; ``s_side``
    and ``t_side`` list terminal half-edges from top to bottom.
    """

    n_vertices: int
    s: int
    t: int
    rot: dict
    s_side: list
    t_side: list
    n_edges: int


def _path(k: int) -> _Network:
    # vertices 0..k, edges i: (i, i+1)
    rot = {}
    for v in range(1, k):
        # left neighbour at 180 deg, right neighbour at 0 deg
        rot[v] = [(v, v + 1), (v - 1, v - 1)]
    return _Network(k + 1, 0, k, rot, [(0, 1)], [(k - 1, k - 1)], k)


def _bundle(k: int) -> _Network:
    return _Network(2, 0, 1, {}, [(e, 1) for e in range(k)], [(e, 0) for e in range(k)], k)


def _shift(net: _Network, dv: int, de: int) -> _Network:
    def h(pairs):
        return [(e + de, v + dv) for e, v in pairs]

    return _Network(
        net.n_vertices,
        net.s + dv,
        net.t + dv,
        {v + dv: h(r) for v, r in net.rot.items()},
        h(net.s_side),
        h(net.t_side),
        net.n_edges,
    )


def _merge(net: _Network, keep: int, drop: int) -> None:
    """Rename vertex ``drop`` to ``keep`` in half-edge targets."""

    def h(pairs):
        return [(e, keep if v == drop else v) for e, v in pairs]

    net.rot = {v: h(r) for v, r in net.rot.items()}
    net.s_side = h(net.s_side)
    net.t_side = h(net.t_side)


def _series(a: _Network, b: _Network) -> _Network:
    b = _shift(b, a.n_vertices, a.n_edges)
    m = a.t
    rot = dict(a.rot)
    rot.update(b.rot)
    rot[m] = list(a.t_side) + list(reversed(b.s_side))
    net = _Network(a.n_vertices + b.n_vertices, a.s, b.t, rot, list(a.s_side), list(b.t_side),
                   a.n_edges + b.n_edges)
    _merge(net, m, b.s)
    return net


def _parallel(a: _Network, b: _Network) -> _Network:
    """``a`` drawn above ``b``."""
    b = _shift(b, a.n_vertices, a.n_edges)
    rot = dict(a.rot)
    rot.update(b.rot)
    net = _Network(a.n_vertices + b.n_vertices, a.s, a.t, rot,
                   list(a.s_side) + list(b.s_side), list(a.t_side) + list(b.t_side),
                   a.n_edges + b.n_edges)
    _merge(net, a.s, b.s)
    _merge(net, a.t, b.t)
    return net


def _rational_network(seq, series_first: bool = True) -> _Network:
    k = seq[0]
    head = _path(k) if series_first else _bundle(k)
    if len(seq) == 1:
        return head
    rest = _rational_network(seq[1:], not series_first)
    return _series(head, rest) if series_first else _parallel(head, rest)


def _close(net: _Network) -> dict:
    """Identify the terminals (strip rolled into an annulus); return a rotation system."""
    rot = {v: list(r) for v, r in net.rot.items()}
    rot[net.s] = list(net.t_side) + list(reversed(net.s_side))

    def fix(pairs):
        return [(e, net.s if v == net.t else v) for e, v in pairs]

    return {v: fix(r) for v, r in rot.items()}


def _open(net: _Network) -> dict:
    """Rotation system of the network as a plane graph with distinct terminals."""
    rot = {v: list(r) for v, r in net.rot.items()}
    rot[net.s] = list(reversed(net.s_side))
    rot[net.t] = list(net.t_side)
    return rot


def rational_tait_rotation(conway) -> dict:
    """Plane Tait graph of the rational knot with Conway notation ``conway``."""
    return _close(_rational_network(list(conway)))


def theta_rotation(lengths) -> dict:
    """Theta-type graph: two vertices joined by internally disjoint paths."""
    net = _path(lengths[-1])
    for k in reversed(lengths[:-1]):
        net = _parallel(_path(k), net)
    return _open(net)


def diagram_from_rotation(rot: dict) -> LinkDiagram:
    return pd_from_plane_graph(rot)


def spanning_tree_count(rot: dict) -> int:
    """Kirchhoff count; equals the determinant of the alternating link."""
    verts = sorted(rot)
    pos = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    lap = [[Fraction(0)] * n for _ in range(n)]
    for v, half in rot.items():
        for _, w in half:
            lap[pos[v]][pos[v]] += 1
            lap[pos[v]][pos[w]] -= 1
    m = [row[1:] for row in lap[1:]]
    det = Fraction(1)
    size = n - 1
    for c in range(size):
        piv = next((r for r in range(c, size) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, size):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, size):
                    m[r][k] -= f * m[c][k]
    return int(abs(det))


# ----------------------------------------------------------------- table data
# (name, construction, braid word, c_minus, c_plus, sigma, tail expr, head expr)
# expressions: list of [kind, b, multiplicity] with kind "h" or "h*"; None = unknown
_ROWS = [
    ("3_1", ("rational", [3]), "w:2 -1 -1 -1", 3, 0, 2, [["h", 3, 1]], []),
    ("4_1", ("rational", [2, 2]), "w:3 1 -2 1 -2", 2, 2, 0, [["h", 3, 1]], [["h", 3, 1]]),
    ("5_1", ("rational", [5]), "w:2 -1 -1 -1 -1 -1", 5, 0, 4, [["h", 5, 1]], []),
    ("5_2", ("rational", [3, 2]), "w:3 1 1 1 2 -1 2", 0, 5, -2, [["h*", 4, 1]], [["h", 3, 1]]),
    ("6_1", ("rational", [4, 2]), "w:4 -1 -1 -2 1 3 -2 3", 4, 2, 0, [["h", 3, 1]], [["h", 5, 1]]),
    ("6_2", ("rational", [3, 1, 2]), "w:3 -1 -1 -1 2 -1 2", 4, 2, 2, [["h", 3, 1], ["h*", 4, 1]], [["h", 3, 1]]),
    ("6_3", ("rational", [2, 1, 1, 2]), "w:3 1 1 -2 1 -2 -2", 3, 3, 0, [["h", 3, 2]], [["h", 3, 2]]),
    ("7_1", ("rational", [7]), "w:2 -1 -1 -1 -1 -1 -1 -1", 7, 0, 6, [["h", 7, 1]], []),
    ("7_2", ("rational", [5, 2]), "w:4 1 1 1 2 -1 2 3 -2 3", 0, 7, -2, [["h*", 6, 1]], [["h", 3, 1]]),
    ("7_3", ("rational", [4, 3]), "w:3 1 1 1 1 1 2 -1 2", 0, 7, -4, [["h*", 4, 1]], [["h", 5, 1]]),
    ("7_4", ("rational", [3, 1, 3]), "w:4 1 1 2 -1 2 2 3 -2 3", 0, 7, -2, [["h*", 4, 2]], [["h", 3, 1]]),
    ("7_5", ("rational", [3, 2, 2]), "w:3 -1 -1 -1 -1 -2 1 -2 -2", 7, 0, 4, [["h*", 4, 1]], [["h*", 4, 1]]),
    ("7_6", ("rational", [2, 2, 1, 2]), "w:4 -1 -1 2 -1 -3 2 -3", 5, 2, 2, [["h", 3, 1], ["h*", 4, 1]], [["h", 3, 2]]),
    ("7_7", ("rational", [2, 1, 1, 1, 2]), "w:4 1 -2 1 -2 3 -2 3", 3, 4, 0, [["h", 3, 3]], [["h", 3, 2]]),
    ("8_1", ("rational", [6, 2]), "w:5 -1 -1 -2 1 -2 -3 2 4 -3 4", 6, 2, 0, [["h", 3, 1]], [["h", 7, 1]]),
    ("8_2", ("rational", [5, 1, 2]), "w:3 -1 -1 -1 -1 -1 2 -1 2", 6, 2, 4, [["h", 3, 1], ["h*", 6, 1]], [["h", 3, 1]]),
    ("8_3", ("rational", [4, 4]), "w:5 1 1 2 -1 -3 2 -3 -4 3 -4", 4, 4, 0, [["h", 5, 1]], [["h", 5, 1]]),
    ("8_4", ("rational", [4, 1, 3]), "w:4 -1 -1 -1 2 -1 2 3 -2 3", 4, 4, 2, [["h*", 4, 1], ["h", 5, 1]], [["h", 3, 1]]),
    ("8_5", ("theta", [3, 3, 2]), "w:3 1 1 1 -2 1 1 1 -2", 2, 6, -4, [["h", 3, 1]], None),
]


_TWIST_BRAIDS = {
    1: "w:2 1 1 1",
    2: "w:3 1 1 1 2 -1 2",
    3: "w:4 1 1 1 2 -1 2 3 -2 3",
    4: "w:5 1 1 1 2 -1 2 3 -2 3 4 -3 4",
    -1: "w:3 1 -2 1 -2",
    -2: "w:4 -1 -1 -2 1 3 -2 3",
    -3: "w:5 -1 -1 -2 1 -2 -3 2 4 -3 4",
    -4: "w:6 -1 -1 -2 1 -2 -3 2 -3 -4 3 5 -4 5",
}


def _twist_rows():
    rows = []
    for p in range(1, 5):
        rows.append((f"K_{p}", ("rational", [2 * p - 1, 2]), _TWIST_BRAIDS[p], 0, 2 * p + 1, -2,
                     [["h*", 2 * p, 1]], [["h", 3, 1]]))
        rows.append((f"K_{-p}", ("rational", [2 * p, 2]), _TWIST_BRAIDS[-p], 2 * p, 2, 0,
                     [["h", 3, 1]], [["h", 2 * p + 1, 1]]))
    return rows


def _construct(kind_args) -> dict:
    kind, args = kind_args
    if kind == "rational":
        return rational_tait_rotation(args)
    if kind == "theta":
        return theta_rotation(args)
    raise ValueError(kind)


def build_table() -> dict:
    """Regenerate the knot table (PDs chosen so crossing signs match the row)."""
    out = {}
    for name, cons, braid, cm, cp, sigma, tail, head in _ROWS + _twist_rows():
        rot = _construct(cons)
        d = diagram_from_rotation(rot)
        if (d.c_minus, d.c_plus) != (cm, cp):
            d = d.mirror()
        if (d.c_minus, d.c_plus) != (cm, cp):
            raise AssertionError(f"{name}: crossing signs do not match the table")
        if braid is not None:
            from .jones import BraidWord, braid_to_pd, kauffman_jones

            if kauffman_jones(braid_to_pd(BraidWord.parse(braid))) != kauffman_jones(d):
                raise AssertionError(f"{name}: braid closure has the wrong Jones polynomial")
        out[name] = {
            "pd": d.to_pd_text(),
            "braid": braid,
            "construction": {"kind": cons[0], "args": cons[1]},
            "determinant": spanning_tree_count(rot),
            "c_minus": cm,
            "c_plus": cp,
            "sigma": sigma,
            "tail": tail,
            "head": head,
        }
    return out


@lru_cache(maxsize=1)
def builtin_table() -> dict:
    text = resources.files("jonestails").joinpath("data/knots.json").read_text()
    return json.loads(text)


def knot_names() -> list[str]:
    return list(builtin_table())


def knot_record(name: str) -> dict:
    key = name.replace(".", "_")
    table = builtin_table()
    if key not in table:
        raise InputError(f"unknown knot {name!r}; known: {', '.join(table)}")
    return table[key]


def knot_diagram(name: str) -> LinkDiagram:
    return parse_pd(knot_record(name)["pd"])
