"""Planar diagrams of alternating links and the Nahm-sum data they carry.

PD convention: ``X[i, j, k, l]`` lists the four arcs at a crossing
counterclockwise, starting with the incoming under-strand.  Slots 0 and 2
are the under-strand, slots 1 and 3 the over-strand.  Corner ``k`` is the
sector between slots ``k`` and ``k+1``; odd corners are A-corners and even
corners B-corners (turning the over-strand counterclockwise sweeps the
A-sector).
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    ColoringInconsistent,
    NotAlternating,
    NotConnected,
    NotReduced,
    ParseError,
    TooLarge,
    VInfNotAFace,
)

AUTO = "auto"


# ---------------------------------------------------------------- diagrams
@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple
    arcs: tuple
    ends: dict = field(compare=False, repr=False)
    over_in: tuple = field(compare=False, repr=False)
    signs: tuple = field(compare=False, repr=False)
    orientation: dict = field(compare=False, repr=False)
    n_components: int = field(compare=False, default=1)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def c_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def c_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def to_pd_text(self) -> str:
        return " ".join("X[%d,%d,%d,%d]" % x for x in self.crossings)

    def mirror(self) -> LinkDiagram:
        return build_diagram([(i, l, k, j) for i, j, k, l in self.crossings])

    def relabel(self, mapping: dict) -> LinkDiagram:
        return build_diagram([tuple(mapping[a] for a in x) for x in self.crossings])


_TOKEN = re.compile(r"[^\s\[\],]+")


def parse_pd(text: str) -> LinkDiagram:
    """Parse ``X a b c d`` records (brackets and commas optional, ``#`` comments)."""
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    body = "\n".join(lines)
    body = re.sub(r"^\s*PD\s*\[", " ", body.strip())
    tokens = _TOKEN.findall(body)
    records = []
    i = 0
    while i < len(tokens):
        if tokens[i].upper() != "X":
            raise ParseError(f"record {len(records) + 1}: expected 'X', got {tokens[i]!r}")
        vals = tokens[i + 1 : i + 5]
        if len(vals) < 4:
            raise ParseError(f"record {len(records) + 1}: needs four arc ids")
        try:
            records.append(tuple(int(v) for v in vals))
        except ValueError as exc:
            raise ParseError(f"record {len(records) + 1}: arc ids must be integers") from exc
        i += 5
    if not records:
        raise ParseError("no crossings given")
    return build_diagram(records)


def build_diagram(records: Iterable[Sequence[int]], strict: bool = True) -> LinkDiagram:
    """Validate crossing records and derive orientation and signs.

    ``strict=False`` skips the alternating and reducedness checks (used for
    braid closures fed to the bracket oracle).
    """
    crossings = tuple(tuple(int(a) for a in r) for r in records)
    if not crossings:
        raise ParseError("no crossings given")
    ends: dict[int, list] = {}
    for x, rec in enumerate(crossings):
        if len(rec) != 4:
            raise ParseError(f"record {x + 1}: needs four arc ids")
        for p, a in enumerate(rec):
            ends.setdefault(a, []).append((x, p))
    for a, e in ends.items():
        if len(e) != 2:
            raise ParseError(f"arc {a} appears {len(e)} times (expected 2)")
    ends = {a: tuple(e) for a, e in ends.items()}

    # connectivity of the 4-valent graph
    parent = list(range(len(crossings)))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for (x, _), (y, _) in ends.values():
        parent[find(x)] = find(y)
    if len({find(x) for x in range(len(crossings))}) > 1:
        raise NotConnected("diagram is split")

    if strict:
        for a, ((x, p), (y, r)) in ends.items():
            if x == y:
                raise NotReduced(f"arc {a} is a kink at crossing {x + 1}")
            if (p % 2) == (r % 2):
                kind = "under" if p % 2 == 0 else "over"
                raise NotAlternating(f"arc {a} joins two {kind}-passes")

    orientation, over_in = _orient(crossings, ends)
    signs = tuple(1 if s == 3 else -1 for s in over_in)
    n_comp = _count_components(crossings, ends)
    d = LinkDiagram(
        crossings=crossings,
        arcs=tuple(sorted(ends)),
        ends=ends,
        over_in=tuple(over_in),
        signs=signs,
        orientation=orientation,
        n_components=n_comp,
    )
    if not strict:
        return d
    fs = faces(d)
    if len(fs.faces) != len(crossings) + 2:
        raise ParseError("records do not describe a planar diagram (face count != c + 2)")
    for fid, corners in enumerate(fs.faces):
        seen = set()
        for x, _ in corners:
            if x in seen:
                raise NotReduced(f"crossing {x + 1} is nugatory")
            seen.add(x)
    return d


def _orient(crossings, ends):
    """Arc directions from the rule that slot 0 is incoming and slot 2 outgoing."""
    incoming: dict[tuple, bool] = {}
    other_end = {}
    for e0, e1 in ends.values():
        other_end[e0], other_end[e1] = e1, e0
    queue = deque()

    def setv(slot, val):
        old = incoming.get(slot)
        if old is None:
            incoming[slot] = val
            queue.append(slot)
        elif old != val:
            raise ParseError(f"crossing {slot[0] + 1}: strand orientation is inconsistent")

    for x in range(len(crossings)):
        setv((x, 0), True)
        setv((x, 2), False)
    while True:
        while queue:
            x, p = queue.popleft()
            v = incoming[(x, p)]
            setv(other_end[(x, p)], not v)
            setv((x, (p + 2) % 4), not v)
        rest = [(x, 1) for x in range(len(crossings)) if (x, 1) not in incoming]
        if not rest:
            break
        setv(rest[0], True)  # component made of over-passes only
    orientation = {}
    for a, (e0, e1) in ends.items():
        orientation[a] = (e1[0], e0[0]) if incoming[e0] else (e0[0], e1[0])
    over_in = tuple(1 if incoming[(x, 1)] else 3 for x in range(len(crossings)))
    return orientation, over_in


def _count_components(crossings, ends) -> int:
    # strands pass straight through a crossing: slot p continues at slot p+2
    parent = {a: a for a in ends}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for rec in crossings:
        for p in (0, 1):
            parent[find(rec[p])] = find(rec[p + 2])
    return len({find(a) for a in ends})


# ------------------------------------------------------------------- faces
@dataclass(frozen=True)
class FaceStructure:
    diagram: LinkDiagram
    faces: tuple          # per face: tuple of corners (crossing, k)
    color: tuple          # per face: "A" or "B"
    face_arcs: tuple      # per face: tuple of arc ids on its boundary
    corner_face: dict = field(compare=False, repr=False)

    @property
    def a_faces(self) -> tuple:
        return tuple(i for i, c in enumerate(self.color) if c == "A")

    @property
    def b_faces(self) -> tuple:
        return tuple(i for i, c in enumerate(self.color) if c == "B")

    def degree(self, f: int) -> int:
        return len(self.faces[f])

    def crossing_faces(self, x: int) -> tuple:
        """Faces at corners 0..3 of crossing ``x``."""
        return tuple(self.corner_face[(x, k)] for k in range(4))

    def arc_sides(self, a: int) -> tuple:
        """(A-face, B-face) on the two sides of arc ``a``."""
        x, p = self.diagram.ends[a][0]
        f1 = self.corner_face[(x, p)]
        f2 = self.corner_face[(x, (p - 1) % 4)]
        return (f1, f2) if self.color[f1] == "A" else (f2, f1)


def faces(d: LinkDiagram) -> FaceStructure:
    corner_face: dict[tuple, int] = {}
    face_list = []
    for x in range(len(d.crossings)):
        for k in range(4):
            if (x, k) in corner_face:
                continue
            fid = len(face_list)
            orbit = []
            cur = (x, k)
            while cur not in corner_face:
                corner_face[cur] = fid
                orbit.append(cur)
                cx, ck = cur
                a = d.crossings[cx][ck]
                e0, e1 = d.ends[a]
                y, r = e1 if e0 == (cx, ck) else e0
                cur = (y, (r - 1) % 4)
            face_list.append(tuple(orbit))
    colors = []
    for orbit in face_list:
        par = {k % 2 for _, k in orbit}
        if len(par) != 1:
            raise ColoringInconsistent("face mixes A- and B-corners")
        colors.append("A" if par.pop() == 1 else "B")
    face_arcs = tuple(tuple(d.crossings[x][k] for x, k in orbit) for orbit in face_list)
    return FaceStructure(d, tuple(face_list), tuple(colors), face_arcs, corner_face)


# -------------------------------------------------------------- Tait graph
@dataclass(frozen=True)
class TaitGraph:
    vertices: tuple
    edges: tuple          # pairs of vertex ids, multi-edges allowed
    reduced: bool = False

    def multiplicities(self) -> dict:
        m: dict[tuple, int] = {}
        for u, v in self.edges:
            key = (min(u, v), max(u, v))
            m[key] = m.get(key, 0) + 1
        return m


def tait_graph(f: FaceStructure) -> TaitGraph:
    edges = []
    for x in range(len(f.diagram.crossings)):
        edges.append((f.corner_face[(x, 0)], f.corner_face[(x, 2)]))
    return TaitGraph(f.b_faces, tuple(edges), False)


def reduced_tait(t: TaitGraph) -> TaitGraph:
    return TaitGraph(t.vertices, tuple(sorted(t.multiplicities())), True)


def graph_isomorphic(g1: TaitGraph, g2: TaitGraph) -> bool:
    """Exact multigraph isomorphism (VF2 backtracking)."""
    import networkx as nx

    for g in (g1, g2):
        if len(g.vertices) > 32:
            raise TooLarge("isomorphism test is limited to 32 vertices")
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False

    def as_nx(g):
        h = nx.Graph()
        h.add_nodes_from(g.vertices)
        for (u, v), m in g.multiplicities().items():
            h.add_edge(u, v, mult=m)
        return h

    return nx.is_isomorphic(
        as_nx(g1), as_nx(g2), edge_match=lambda a, b: a["mult"] == b["mult"]
    )


# --------------------------------------------------------------- Nahm data
@dataclass(frozen=True)
class NahmData:
    """Quadratic/linear data of the Nahm sum of an alternating diagram.

    Variables are the faces other than ``v_inf`` (B-faces first).  ``Q2x``
    satisfies ``lambda^T Q2x lambda = 2 Q(lambda)``; ``L2`` stores ``2 L``.
    """

    n_vars: int
    var_faces: tuple
    var_colors: tuple
    Q2x: tuple
    L2: tuple
    edge_rows: tuple      # one 0/1 row per arc of the diagram
    poly_rows: tuple      # one 0/1 row per crossing
    v_inf: int
    degrees: tuple        # face degree per variable
    n_crossings: int
    corner_pairs: tuple = ()   # edge-row index pairs meeting at each A-corner

    @property
    def sign_parity(self) -> tuple:
        return tuple(x % 2 for x in self.L2)

    @property
    def edge_index(self) -> tuple:
        return tuple(tuple(i for i, v in enumerate(r) if v) for r in self.edge_rows)

    @property
    def poly_index(self) -> tuple:
        return tuple(tuple(i for i, v in enumerate(r) if v) for r in self.poly_rows)

    @property
    def b_vars(self) -> tuple:
        return tuple(i for i, c in enumerate(self.var_colors) if c == "B")

    def q2(self, lam: Sequence[int]) -> int:
        """``Q(lam) + L(lam)`` (always an integer)."""
        n = self.n_vars
        s = 0
        for i in range(n):
            li = lam[i]
            if li:
                row = self.Q2x[i]
                s += li * sum(row[j] * lam[j] for j in range(n))
        s += sum(self.L2[i] * lam[i] for i in range(n))
        assert s % 2 == 0
        return s // 2

    def sign(self, lam: Sequence[int]) -> int:
        return -1 if sum(self.L2[i] * lam[i] for i in range(self.n_vars)) % 2 else 1

    def edge_values(self, lam: Sequence[int]) -> tuple:
        return tuple(sum(lam[i] for i in idx) for idx in self.edge_index)

    def poly_values(self, lam: Sequence[int]) -> tuple:
        return tuple(sum(lam[i] for i in idx) for idx in self.poly_index)

    def L(self) -> tuple:
        return tuple(Fraction(v, 2) for v in self.L2)

    def to_json(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "variables": [
                {"face": f, "color": c, "degree": g}
                for f, c, g in zip(self.var_faces, self.var_colors, self.degrees)
            ],
            "v_inf": self.v_inf,
            "matrix": [list(r) for r in self.Q2x],
            "L2": list(self.L2),
            "edge_rows": [list(r) for r in self.edge_rows],
            "poly_rows": [list(r) for r in self.poly_rows],
            "corner_pairs": [list(p) for p in self.corner_pairs],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def choose_v_inf(f: FaceStructure) -> int:
    """A-face of maximal degree, ties to the smallest face id."""
    return max(f.a_faces, key=lambda i: (f.degree(i), -i))


def nahm_data(f: FaceStructure, v_inf=AUTO) -> NahmData:
    if v_inf == AUTO or v_inf is None:
        v_inf = choose_v_inf(f)
    if not isinstance(v_inf, int) or not 0 <= v_inf < len(f.faces) or f.color[v_inf] != "A":
        raise VInfNotAFace(f"v_inf={v_inf!r} is not an A-face")
    d = f.diagram
    order = list(f.b_faces) + [a for a in f.a_faces if a != v_inf]
    pos = {face: i for i, face in enumerate(order)}
    n = len(order)
    Q = [[0] * n for _ in range(n)]
    # A-B: one per shared arc
    edge_rows = []
    for a in d.arcs:
        fa, fb = f.arc_sides(a)
        row = [0] * n
        row[pos[fb]] = 1
        if fa != v_inf:
            row[pos[fa]] = 1
            Q[pos[fa]][pos[fb]] += 1
            Q[pos[fb]][pos[fa]] += 1
        edge_rows.append(tuple(row))
    # B-B: one per shared crossing
    poly_rows = []
    for x in range(len(d.crossings)):
        fs = f.crossing_faces(x)
        b0, b2 = pos[fs[0]], pos[fs[2]]
        Q[b0][b2] += 1
        Q[b2][b0] += 1
        row = [0] * n
        for face in fs:
            if face != v_inf:
                row[pos[face]] = 1
        poly_rows.append(tuple(row))
    arc_pos = {a: i for i, a in enumerate(d.arcs)}
    corner_pairs = []
    for rec in d.crossings:
        for k in (1, 3):
            corner_pairs.append((arc_pos[rec[k]], arc_pos[rec[(k + 1) % 4]]))
    L2 = []
    degrees = []
    for face in order:
        g = f.degree(face)
        degrees.append(g)
        if f.color[face] == "A":
            Q[pos[face]][pos[face]] = g
            L2.append(g - 2)
        else:
            L2.append(2)
    return NahmData(
        n_vars=n,
        var_faces=tuple(order),
        var_colors=tuple(f.color[x] for x in order),
        Q2x=tuple(tuple(r) for r in Q),
        L2=tuple(L2),
        edge_rows=tuple(edge_rows),
        poly_rows=tuple(poly_rows),
        v_inf=v_inf,
        degrees=tuple(degrees),
        n_crossings=len(d.crossings),
        corner_pairs=tuple(corner_pairs),
    )


def nahm_data_from_pd(text_or_diagram, v_inf=AUTO) -> NahmData:
    d = parse_pd(text_or_diagram) if isinstance(text_or_diagram, str) else text_or_diagram
    return nahm_data(faces(d), v_inf)


def corner_quadratic(f: FaceStructure, nd: NahmData, lam: Sequence[int]) -> Fraction:
    """Independent evaluation of ``Q(lam)``: half the sum over A-corners of
    the product of the two adjacent arc values."""
    full = {face: 0 for face in range(len(f.faces))}
    for i, face in enumerate(nd.var_faces):
        full[face] = lam[i]
    d = f.diagram

    def arc_val(a):
        fa, fb = f.arc_sides(a)
        return full[fa] + full[fb]

    total = 0
    for x, rec in enumerate(d.crossings):
        for k in (1, 3):
            total += arc_val(rec[k]) * arc_val(rec[(k + 1) % 4])
    return Fraction(total, 2)


# ------------------------------------------------ plane graph -> diagram
def pd_from_plane_graph(rotation: dict) -> LinkDiagram:
    """Alternating diagram whose Tait graph (on the B-faces) is the given plane graph.

    ``rotation`` maps each vertex to the counterclockwise list of
    ``(edge_id, other_vertex)`` half-edges.  Each edge becomes one crossing.
    """
    ends: dict = {}
    for v, half in rotation.items():
        for e, w in half:
            ends.setdefault(e, []).append(v)
    for e, vs in ends.items():
        if len(vs) != 2 or vs[0] == vs[1]:
            raise NotReduced(f"edge {e} is a loop or dangling")
    idx = {(v, e): i for v, half in rotation.items() for i, (e, _) in enumerate(half)}

    def corner(v, i):
        return (v, i % len(rotation[v]))

    # slots in ccw order around the crossing of edge e = (u -> v): NE, NW, SW, SE
    slot_corner = {}
    for e, (u, v) in ends.items():
        iu, iv = idx[(u, e)], idx[(v, e)]
        slot_corner[(e, 0)] = corner(v, iv - 1)   # NE: region v, left face
        slot_corner[(e, 1)] = corner(u, iu)       # NW: region u, left face
        slot_corner[(e, 2)] = corner(u, iu - 1)   # SW: region u, right face
        slot_corner[(e, 3)] = corner(v, iv)       # SE: region v, right face
    partner = {}
    by_corner: dict = {}
    for s, c in slot_corner.items():
        by_corner.setdefault(c, []).append(s)
    for c, ss in by_corner.items():
        if len(ss) != 2:
            raise NotReduced("vertex of degree one in the plane graph")
        partner[ss[0]], partner[ss[1]] = ss[1], ss[0]
    # strands go straight: NE<->SW (over), NW<->SE (under)
    label = {}
    incoming_under = {}
    next_label = 1
    edges_sorted = sorted(ends)
    for e0 in edges_sorted:
        for s0 in ((e0, 1), (e0, 0)):
            if s0 in label:
                continue
            # walk the component entering crossing e0 at slot s0
            cur = s0
            entered = set()
            while cur not in entered:
                entered.add(cur)
                e, k = cur
                out = (e, (k + 2) % 4)
                if k in (1, 3):
                    incoming_under[e] = k
                nxt = partner[out]
                label[out] = label[nxt] = next_label
                next_label += 1
                cur = nxt
    records = []
    for e in edges_sorted:
        k0 = incoming_under.get(e)
        if k0 is None:
            raise ParseError("construction failed to orient an under-strand")
        ccw = [(e, k) for k in (1, 2, 3, 0)]  # NW, SW, SE, NE counterclockwise from NW
        start = 0 if k0 == 1 else 2
        rec = [label[ccw[(start + j) % 4]] for j in range(4)]
        records.append(tuple(rec))
    return build_diagram(records)
