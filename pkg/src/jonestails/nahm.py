"""Admissible-cone enumeration and the Nahm sums for the tail series.

Variables are the faces of the diagram other than ``v_inf`` (see
:class:`~jonestails.diagram.NahmData`).  A point ``lam`` is admissible when
every arc value ``e(lam)`` (sum of the two faces beside the arc) is
nonnegative.  The enumeration is degree bounded: it yields every admissible
point with ``Q(lam) + L(lam) <= N``.

Pruning uses two facts about admissible points:

* ``2Q(lam)`` is the sum over A-corners of the product of the two arc values
  meeting there, and ``2L`` is a nonnegative integer combination of arc
  values.  Both pieces only grow as coordinates are fixed, so the sum over
  fully determined arcs and corners is a lower bound for ``2(Q+L)``.
* ``Q+L`` dominates every arc value, so arcs are confined to ``[0, N]``.

Series normalisation: ``normalized=True`` (the default everywhere) divides by
the unknot so the tail of the unknot is ``1``; the raw formulas give
``1/(1-q)`` for the unknot.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import networkx as nx

from . import kernels
from .diagram import LinkDiagram, NahmData
from .errors import BoundTooLarge, InputError, RegularityViolation
from .qseries import QSeries, inv_qfactorial_list, qpoch_inf_list

DEFAULT_CAP = 10**8


@dataclass(frozen=True)
class ConePoint:
    lam: tuple
    q2_value: int
    edge_values: tuple
    sign: int


@dataclass(frozen=True)
class NahmResult:
    """A computed series together with enumeration statistics."""

    series: QSeries
    points_enumerated: int
    regularity_c: Fraction | None

    def to_json(self) -> dict:
        return {
            "series": self.series.to_json(),
            "points_enumerated": self.points_enumerated,
            "regularity_c": None if self.regularity_c is None else str(self.regularity_c),
        }


# ------------------------------------------------------------ walk planning
def linear_edge_weights(nd: NahmData) -> tuple:
    """Nonnegative integers ``alpha_e`` with ``sum_e alpha_e * edge_row_e = 2L``.

    Solved as a transportation problem: each A-face ships ``2L = deg - 2``
    units, each B-face receives ``2``, and ``v_inf`` absorbs the balance.
    """
    g = nx.MultiDiGraph()
    total_b = 0
    total_a = 0
    for i, (c, l2) in enumerate(zip(nd.var_colors, nd.L2)):
        if c == "A":
            g.add_node(i, demand=-l2)
            total_a += l2
        else:
            g.add_node(i, demand=l2)
            total_b += l2
    g.add_node("inf", demand=-(total_b - total_a))
    for e, idx in enumerate(nd.edge_index):
        if len(idx) == 1:
            g.add_edge("inf", idx[0], key=e, weight=0)
        else:
            a, b = idx if nd.var_colors[idx[0]] == "A" else idx[::-1]
            g.add_edge(a, b, key=e, weight=0)
    _, flow = nx.network_simplex(g)
    alpha = [0] * len(nd.edge_rows)
    for u, targets in flow.items():
        for v, by_key in targets.items():
            for e, f in by_key.items():
                alpha[e] = f
    check = [sum(alpha[e] * nd.edge_rows[e][i] for e in range(len(alpha)))
             for i in range(nd.n_vars)]
    if check != list(nd.L2):
        raise ValueError("linear form is not a nonnegative edge combination")
    return tuple(alpha)


def _check_corner_form(nd: NahmData) -> None:
    n = nd.n_vars
    m = [[0] * n for _ in range(n)]
    for a, b in nd.corner_pairs:
        ra, rb = nd.edge_rows[a], nd.edge_rows[b]
        for i in range(n):
            if ra[i] or rb[i]:
                for j in range(n):
                    m[i][j] += ra[i] * rb[j] + rb[i] * ra[j]
    if any(m[i][j] != 2 * nd.Q2x[i][j] for i in range(n) for j in range(n)):
        raise ValueError("corner pairs do not reproduce the quadratic form")


def variable_order(nd: NahmData) -> tuple:
    """Breadth-first order of the variables starting next to ``v_inf``."""
    adj: dict[int, set] = {i: set() for i in range(nd.n_vars)}
    start = []
    for idx in nd.edge_index:
        if len(idx) == 1:
            start.append(idx[0])
        else:
            adj[idx[0]].add(idx[1])
            adj[idx[1]].add(idx[0])
    seen: set = set()
    order = []
    queue = sorted(set(start))
    while queue:
        v = queue.pop(0)
        if v in seen:
            continue
        seen.add(v)
        order.append(v)
        queue.extend(sorted(adj[v] - seen))
    if len(order) != nd.n_vars:
        raise ValueError("face graph is not connected to v_inf")
    return tuple(order)


@lru_cache(maxsize=64)
def _walk_plan(nd: NahmData) -> tuple:
    if not nd.corner_pairs:
        raise ValueError("NahmData lacks corner pairs; build it with nahm_data()")
    _check_corner_form(nd)
    alpha = linear_edge_weights(nd)
    order = variable_order(nd)
    pos = {v: i for i, v in enumerate(order)}
    n = nd.n_vars
    edge_vars = nd.edge_index
    edge_step = [max(pos[i] for i in idx) for idx in edge_vars]
    step_edges = [[] for _ in range(n)]
    for e, k in enumerate(edge_step):
        step_edges[k].append(e)
    step_corners = [[] for _ in range(n)]
    for a, b in nd.corner_pairs:
        step_corners[max(edge_step[a], edge_step[b])].append((a, b))
    if any(not s for s in step_edges):
        raise ValueError("a variable has no edge to earlier variables")
    parity = tuple(x % 2 for x in nd.L2)
    return (
        order,
        tuple(tuple(s) for s in step_edges),
        tuple(tuple(s) for s in step_corners),
        tuple(tuple(v) for v in edge_vars),
        alpha,
        parity,
    )


def _walk(nd: NahmData, bound: int, cap: int, order_n: int, collect: bool):
    if bound < 0:
        return 0, ([] if collect else {}), None
    plan = _walk_plan(nd)
    try:
        count, out, num, den = kernels.adm_walk(plan, 2 * bound, cap, order_n, collect)
    except OverflowError:
        raise BoundTooLarge(f"more than {cap} admissible points below degree {bound}") from None
    c = Fraction(num, den) if den else None
    return count, out, c


# -------------------------------------------------------------- enumeration
def enumerate_adm(nd: NahmData, N: int, cap: int = DEFAULT_CAP) -> Iterator[ConePoint]:
    """Every admissible point with ``Q + L <= N``, each exactly once."""
    if N < 0:
        raise InputError("degree bound must be nonnegative")
    _, pts, _ = _walk(nd, N, cap, 0, True)
    for lam, q2 in pts:
        yield ConePoint(lam, q2, nd.edge_values(lam), nd.sign(lam))


def admissible_set(nd: NahmData, N: int, cap: int = DEFAULT_CAP) -> set:
    return {p.lam for p in enumerate_adm(nd, N, cap)}


def _corner_greedy_order(nd: NahmData) -> list[int]:
    """Variables ordered to complete as many A-corners, then arcs, as early as possible."""
    chosen: list[int] = []
    fixed: set = set()

    def closed(s):
        edges = {e for e, idx in enumerate(nd.edge_index) if set(idx) <= s}
        return sum(1 for a, b in nd.corner_pairs if a in edges and b in edges), len(edges)

    while len(chosen) < nd.n_vars:
        best = max((closed(fixed | {v}), -v) for v in range(nd.n_vars) if v not in fixed)
        chosen.append(-best[1])
        fixed.add(-best[1])
    return chosen


def box_oracle(nd: NahmData, N: int) -> set:
    """Reference enumeration over the box ``[-N, N]^r``.

    Coordinates are fixed greedily so that A-corners close early; an arc is
    checked as soon as its faces are known and ``Q+L`` is evaluated from
    the matrix at the leaves.  Branches are cut when the A-corners already
    fixed exceed ``2N`` (sound because ``L >= 0`` on the cone).
    """
    n = nd.n_vars
    order = _corner_greedy_order(nd)
    rank = {v: k for k, v in enumerate(order)}
    ready = [[] for _ in range(n)]
    for e, idx in enumerate(nd.edge_index):
        ready[max(rank[i] for i in idx)].append(e)
    edge_last = [max(rank[i] for i in idx) for idx in nd.edge_index]
    corner_ready = [[] for _ in range(n)]
    for a, b in nd.corner_pairs:
        corner_ready[max(edge_last[a], edge_last[b])].append((a, b))
    lam = [0] * n
    ev = [0] * len(nd.edge_rows)
    found = set()

    def rec(k, corners):
        if k == n:
            if nd.q2(lam) <= N:
                found.add(tuple(lam))
            return
        v = order[k]
        for x in range(-N, N + 1):
            lam[v] = x
            ok = True
            for e in ready[k]:
                ev[e] = sum(lam[i] for i in nd.edge_index[e])
                if not 0 <= ev[e] <= N:
                    ok = False
                    break
            if not ok:
                continue
            c = corners + sum(ev[a] * ev[b] for a, b in corner_ready[k])
            if c <= 2 * N:
                rec(k + 1, c)
        lam[v] = 0

    rec(0, 0)
    return found


def centered_state_oracle(nd: NahmData, N: int, diagram: LinkDiagram) -> set:
    """Admissible points recovered from centred states.

    A centred state assigns each arc a value in ``[0, N]`` such that the two
    pairs of opposite arcs at every crossing have equal sums.  Face values
    are then recovered by walking across arcs from ``v_inf`` (value 0).
    ``diagram`` must be the one ``nd`` was built from.
    """
    pos = {a: i for i, a in enumerate(diagram.arcs)}
    crossings = [tuple(pos[a] for a in x) for x in diagram.crossings]
    n_arcs = len(nd.edge_rows)
    # static plan: a free arc is searched, a forced one follows from a crossing
    # with its other three arcs known; crossings are checked once complete
    known = [False] * n_arcs
    steps = []
    while len(steps) < n_arcs:
        forced = None
        for r in crossings:
            unknown = [i for i in range(4) if not known[r[i]]]
            if len(unknown) == 1:
                forced = (r, unknown[0])
                break
        if forced is not None:
            r, i = forced
            # s[r0] + s[r2] = s[r1] + s[r3]; solve for slot i
            same = r[(i + 2) % 4]
            other = (r[(i + 1) % 4], r[(i + 3) % 4])
            steps.append((r[i], same, other))
            known[r[i]] = True
        else:
            score = [(sum(1 for r in crossings if a in r for b in r if known[b]), -a)
                     for a in range(n_arcs) if not known[a]]
            a = -max(score)[1]
            steps.append((a, None, None))
            known[a] = True
    done = [False] * n_arcs
    checks, corners_at = [], []
    for a, _, _ in steps:
        done[a] = True
        checks.append([r for r in crossings if a in r and all(done[b] for b in r)])
        corners_at.append([(x, y) for x, y in nd.corner_pairs if a in (x, y) and done[x] and done[y]])
    s = [0] * n_arcs
    states = []

    def rec(k, corners):
        if k == n_arcs:
            states.append(tuple(s))
            return
        a, same, other = steps[k]
        values = range(N + 1) if same is None else (s[other[0]] + s[other[1]] - s[same],)
        for v in values:
            if not 0 <= v <= N:
                continue
            s[a] = v
            if any(s[r[0]] + s[r[2]] != s[r[1]] + s[r[3]] for r in checks[k]):
                continue
            c = corners + sum(s[x] * s[y] for x, y in corners_at[k])
            if c > 2 * N:
                continue
            rec(k + 1, c)
        s[a] = 0

    rec(0, 0)
    found = set()
    for st in states:
        lam = _faces_from_state(nd, st)
        if lam is not None and nd.q2(lam) <= N:
            found.add(lam)
    return found


def _faces_from_state(nd: NahmData, st: Sequence[int]):
    """Inverse of ``lam -> arc values``: propagate from ``v_inf`` across arcs."""
    n = nd.n_vars
    lam: list = [None] * n
    changed = True
    for e, idx in enumerate(nd.edge_index):
        if len(idx) == 1:
            lam[idx[0]] = st[e]
    while changed:
        changed = False
        for e, idx in enumerate(nd.edge_index):
            if len(idx) == 2:
                i, j = idx
                if lam[i] is not None and lam[j] is None:
                    lam[j] = st[e] - lam[i]
                    changed = True
                elif lam[j] is not None and lam[i] is None:
                    lam[i] = st[e] - lam[j]
                    changed = True
    if any(v is None for v in lam):
        return None
    lam = tuple(lam)
    if nd.edge_values(lam) != tuple(st):
        return None
    return lam


# --------------------------------------------------------------- summation
def _sum_keys(keys: dict, order: int) -> tuple[int, list[int]]:
    """Evaluate ``sum count * q^deg / prod_e (q)_e`` below ``q^order``.

    ``keys`` maps ``(deg, edges)`` to an integer weight.  Returns
    ``(lowest_degree, coefficients)``; products are built incrementally
    along sorted edge tuples so shared prefixes are computed once.
    """
    live = {k: w for k, w in keys.items() if w and k[0] < order}
    if not live:
        return 0, [0] * order
    low = min(0, min(d for d, _ in live))
    acc = [0] * (order - low)
    need: dict[tuple, int] = {}
    for (deg, es) in live:
        m = order - deg
        for j in range(len(es) + 1):
            p = es[:j]
            if need.get(p, 0) < m:
                need[p] = m
    by_tuple: dict[tuple, list] = {}
    for (deg, es), w in live.items():
        by_tuple.setdefault(es, []).append((deg, w))
    stack: list[tuple[tuple, list]] = []
    for es in sorted(by_tuple):
        while stack and stack[-1][0] != es[: len(stack[-1][0])]:
            stack.pop()
        if not stack:
            m = need[()]
            stack.append(((), [1] + [0] * (m - 1)))
        while len(stack[-1][0]) < len(es):
            p = es[: len(stack[-1][0]) + 1]
            m = need[p]
            c = list(stack[-1][1][:m])
            for k in range(1, p[-1] + 1):
                kernels.div_one_minus_qk(c, k, m)
            stack.append((p, c))
        series = stack[-1][1]
        for deg, w in by_tuple[es]:
            kernels.accumulate_shifted(acc, series[: order - deg], deg - low, w)
    return low, acc


def _poch_power(c: int, order: int) -> list[int]:
    """Coefficients of ``(q;q)_inf^c`` below ``q^order`` (c may be negative)."""
    base = list(qpoch_inf_list(order))
    if c < 0:
        base = list(inv_qfactorial_list(order, order))
        c = -c
    out = [1] + [0] * (order - 1) if order else []
    for _ in range(c):
        out = kernels.convolve(out, base, order)
    return out


def _one_minus_q(order: int) -> list[int]:
    return ([1, -1] + [0] * order)[:order]


def _sum_result(nd: NahmData, N: int, cap: int) -> tuple[list[int], int, Fraction | None]:
    count, keys, c = _walk(nd, N - 1, cap, N, False)
    low, acc = _sum_keys(keys, N)
    return acc[-low:] if low else acc, count, c


def nahm_sum(nd: NahmData, N: int, cap: int = DEFAULT_CAP) -> QSeries:
    """The bare sum ``sum (-1)^(2L) q^(Q+L) / prod_e (q)_e`` to ``O(q^N)``."""
    if N < 1:
        raise InputError("order must be at least 1")
    body, _, _ = _sum_result(nd, N, cap)
    return QSeries.from_int_coeffs(body, N)


def phi0_result(nd: NahmData, N: int, normalized: bool = True,
                cap: int = DEFAULT_CAP) -> NahmResult:
    if N < 1:
        raise InputError("order must be at least 1")
    body, count, c = _sum_result(nd, N, cap)
    pre = _poch_power(nd.n_crossings, N)
    if normalized:
        pre = kernels.convolve(pre, _one_minus_q(N), N)
    series = QSeries.from_int_coeffs(kernels.convolve(body, pre, N), N)
    return NahmResult(series, count, c)


def phi0(nd: NahmData, N: int, normalized: bool = True, cap: int = DEFAULT_CAP) -> QSeries:
    """The 0-limit of the coloured Jones polynomial, to ``O(q^N)``."""
    return phi0_result(nd, N, normalized, cap).series


def phi1_bound(N: int) -> int:
    """Largest ``Q+L`` whose term can reach below ``q^N`` in the first-order sum.

    After cancellation inside the weight factor, a point with ``Q+L = m``
    contributes from degree ``> m/4`` when its largest face-polygon value
    is below ``3m/4``, from degree ``>= 3m/4`` otherwise when that value
    exceeds 6, and from degree ``>= m - 6`` in the remaining case.
    """
    return max(4 * N, N + 6) - 1


def phi1_result(nd: NahmData, N: int, normalized: bool = True,
                cap: int = DEFAULT_CAP) -> NahmResult:
    if N < 1:
        raise InputError("order must be at least 1")
    bound = phi1_bound(N)
    count, pts, c = _walk(nd, bound, cap, 0, True)
    main: dict = {}
    corr: dict[int, dict] = {}
    b_vars = nd.b_vars
    incident = {v: [x for x, row in enumerate(nd.poly_rows) if row[v]] for v in b_vars}
    e_idx, p_idx, par = nd.edge_index, nd.poly_index, nd.sign_parity
    for lam, q2 in pts:
        ev = [sum(lam[i] for i in idx) for idx in e_idx]
        pv = [sum(lam[i] for i in idx) for idx in p_idx]
        # every shifted degree is at least q2 minus the largest value
        if q2 - max(max(ev), max(pv)) >= N:
            continue
        sign = -1 if sum(lam[i] for i in range(len(lam)) if par[i]) % 2 else 1
        es_full = tuple(sorted(x for x in ev if x))
        weight: dict[int, int] = {}
        for x in ev:
            weight[-x] = weight.get(-x, 0) + 1
        for x in pv:
            weight[-x] = weight.get(-x, 0) - 1
        for sh, w in weight.items():
            if w:
                deg = q2 + sh
                if deg < N:
                    key = (deg, _clamp(es_full, N - deg - 1))
                    main[key] = main.get(key, 0) + sign * w
        if q2 < N:
            for v in b_vars:
                if all(pv[x] == 0 for x in incident[v]):
                    key = (q2, _clamp(es_full, N - q2 - 1))
                    d = corr.setdefault(nd.degrees[v], {})
                    d[key] = d.get(key, 0) + sign
    low, acc = _sum_keys(main, N)
    if any(acc[:-low] if low else []):
        raise RegularityViolation("negative powers of q survived in the first-order sum")
    total = acc[-low:] if low else acc
    for deg_v, keys in corr.items():
        lo, a = _sum_keys(keys, N)
        part = kernels.convolve(a[-lo:] if lo else a, _poch_power(-deg_v, N), N)
        total = [x - y for x, y in zip(total, part)]
    pre = _poch_power(nd.n_crossings, N)
    raw = kernels.convolve(total, pre, N)
    # the raw first-order series carries a factor 1/(1-q)
    raw = kernels.convolve(raw, list(inv_qfactorial_list(1, N)), N)
    if normalized:
        zero, _, _ = _sum_result(nd, N, cap)
        raw0 = kernels.convolve(zero, pre, N)
        # rescale from the unknot-is-1/(1-q) normalisation
        raw = kernels.convolve([x + y for x, y in zip(raw, raw0)], _one_minus_q(N), N)
    return NahmResult(QSeries.from_int_coeffs(raw, N), count, c)


def phi1(nd: NahmData, N: int, normalized: bool = True, cap: int = DEFAULT_CAP) -> QSeries:
    """The 1-limit of the coloured Jones polynomial, to ``O(q^N)``."""
    return phi1_result(nd, N, normalized, cap).series


def _clamp(es: tuple, m: int) -> tuple:
    return tuple(sorted(min(x, m) for x in es))


# ------------------------------------------------------------ generic sums
@dataclass(frozen=True)
class GenericNahmSpec:
    """``sum over cone points n >= 0 of (-1)^(a.n) q^(n.A.n/2 + b.n) / prod (q)_{n_i}``.

    ``cone`` rows ``r`` impose ``r . n >= 0``; ``radius`` bounds each
    coordinate during the search (defaults to ``N``).
    """

    A: tuple
    b: tuple
    a: tuple
    cone: tuple
    N: int
    radius: int | None = None

    def __post_init__(self):
        r = len(self.A)
        if any(len(row) != r for row in self.A):
            raise InputError("matrix must be square")
        if any(Fraction(self.A[i][j]) != Fraction(self.A[j][i]) for i in range(r) for j in range(r)):
            raise InputError("matrix must be symmetric")
        if len(self.b) != r or len(self.a) != r:
            raise InputError("vector lengths must match the matrix")
        for row in self.cone:
            if len(row) != r or any(Fraction(x).denominator != 1 for x in row):
                raise InputError("cone rows must be integral of matching length")

    def exponent(self, n: Sequence[int]) -> Fraction:
        A2, b2, den = self._scaled()
        r = len(n)
        s = sum(n[i] * sum(A2[i][j] * n[j] for j in range(r)) for i in range(r) if n[i])
        return Fraction(s + sum(b2[i] * n[i] for i in range(r)), den)

    def _scaled(self):
        """``A/2`` and ``b`` over a common denominator, as integers."""
        cached = self.__dict__.get("_scaled_cache")
        if cached is None:
            halves = [Fraction(x) / 2 for row in self.A for x in row] + [Fraction(x) for x in self.b]
            den = math.lcm(*(f.denominator for f in halves)) if halves else 1
            r = len(self.A)
            A2 = [[int(Fraction(self.A[i][j]) / 2 * den) for j in range(r)] for i in range(r)]
            b2 = [int(Fraction(x) * den) for x in self.b]
            cached = (A2, b2, den)
            object.__setattr__(self, "_scaled_cache", cached)
        return cached


@dataclass(frozen=True)
class RegularityReport:
    c: Fraction | None
    points: int
    flagged: bool

    def to_json(self) -> dict:
        return {"c": None if self.c is None else str(self.c), "points": self.points,
                "flagged": self.flagged}


def regularity_guard(values: Iterator[tuple[Fraction, int]]) -> RegularityReport:
    """Smallest ratio ``f(s) / |s|`` over ``(f(s), |s|)`` pairs with ``s != 0``.

    ``|s|`` is the sup norm of the point (for diagram data, of its arc
    values).  A ratio ``<= 0`` raises the flag.  An empty stream passes.
    """
    best = None
    count = 0
    for f, norm in values:
        count += 1
        if norm == 0:
            continue
        r = Fraction(f) / norm
        if best is None or r < best:
            best = r
    return RegularityReport(best, count, best is not None and best <= 0)


def _generic_points(spec: GenericNahmSpec) -> list[tuple]:
    """Lattice points of the cone in the box ``[0, radius]^r``.

    Coordinates are assigned in order and each cone row is tested as soon
    as its last nonzero coordinate is set, so equality pairs prune early.
    """
    r = len(spec.A)
    radius = spec.N if spec.radius is None else spec.radius
    due: list[list] = [[] for _ in range(r)]
    for row in spec.cone:
        support = [i for i, x in enumerate(row) if x]
        if support:
            due[support[-1]].append([int(x) for x in row])
    pts: list[tuple] = []
    n = [0] * r

    def rec(k):
        if k == r:
            pts.append(tuple(n))
            return
        for v in range(radius + 1):
            n[k] = v
            if all(sum(row[i] * n[i] for i in range(k + 1)) >= 0 for row in due[k]):
                rec(k + 1)
        n[k] = 0

    rec(0)
    return pts


def generic_nahm_result(spec: GenericNahmSpec) -> tuple[QSeries, RegularityReport]:
    N = spec.N
    pts = _generic_points(spec)
    rep = regularity_guard((spec.exponent(n), max(n) if n else 0) for n in pts)
    if rep.flagged:
        raise RegularityViolation(f"quadratic form is not copositive on the cone (c = {rep.c})")
    trunc = 4 * N
    acc: dict[int, int] = {}
    for n in pts:
        ex = spec.exponent(n) * 4
        if ex.denominator != 1:
            raise InputError("exponents must lie on the quarter-integer grid")
        ex = int(ex)
        if ex >= trunc:
            continue
        if ex < 0:
            raise RegularityViolation("negative exponent in a regular Nahm sum")
        sign = -1 if sum(x * y for x, y in zip(spec.a, n)) % 2 else 1
        m = math.ceil((trunc - ex) / 4)
        term = [1] + [0] * (m - 1)
        for k in n:
            term = kernels.convolve(term, list(inv_qfactorial_list(k, m)), m)
        for i, cf in enumerate(term):
            e = ex + 4 * i
            if e < trunc and cf:
                acc[e] = acc.get(e, 0) + sign * cf
    return QSeries.from_dict(acc, trunc), rep


def generic_nahm(spec: GenericNahmSpec) -> QSeries:
    return generic_nahm_result(spec)[0]


def diagram_regularity(nd: NahmData, N: int, cap: int = DEFAULT_CAP) -> RegularityReport:
    """Regularity scan over the enumerated cone: ``(Q+L) / max arc value``."""
    pts = list(enumerate_adm(nd, N, cap))
    return regularity_guard((p.q2_value, max(p.edge_values)) for p in pts)
