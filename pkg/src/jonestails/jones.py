"""Colored Jones polynomials of braid closures via the R-matrix state sum.

A braid is read top to bottom with every strand oriented downward and is
closed on the right.  Letter ``+i`` is a positive crossing between
positions ``i`` and ``i+1``; inputs ``(a, b)`` on top become outputs
``(c, d)`` below.  A positive crossing sends ``(a, b)`` to
``(b+k, a-k)``, a negative one to ``(b-k, a+k)``, with ``k >= 0``.  Each
closing strand of colour ``a`` contributes ``q^((2a-n)/2)``, so the
unknot evaluates to ``[n+1]``.

Polynomials are handled internally as ``(offset, coeffs)`` with the offset
in half-powers of q and the coefficient list in whole powers.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import kernels
from .errors import NonUnitLowestCoefficient, ParseError, WidthMismatch
from .qseries import QMonomial, QSeries, divide_by_lowest, qbinom_list, qfactorial_list


# ---------------------------------------------------------------- braid words
@dataclass(frozen=True)
class BraidWord:
    width: int
    word: tuple

    def __post_init__(self):
        if self.width < 1:
            raise WidthMismatch("braid width must be at least 1")
        for g in self.word:
            if g == 0 or abs(g) >= self.width:
                raise WidthMismatch(f"generator {g} does not fit width {self.width}")

    @classmethod
    def parse(cls, text: str) -> BraidWord:
        """``"w:3 1 -2 1 -2"``; without a width token the width is max|g| + 1."""
        tokens = text.replace(",", " ").split()
        width = None
        word = []
        for t in tokens:
            m = re.fullmatch(r"w:(\d+)", t)
            if m:
                if width is not None:
                    raise ParseError("braid has two width tokens")
                width = int(m.group(1))
                continue
            try:
                word.append(int(t))
            except ValueError as exc:
                raise ParseError(f"bad braid letter {t!r}") from exc
        if width is None:
            width = max((abs(g) for g in word), default=0) + 1
        return cls(width, tuple(word))

    def __str__(self) -> str:
        return " ".join([f"w:{self.width}"] + [str(g) for g in self.word])

    def mirror(self) -> BraidWord:
        return BraidWord(self.width, tuple(-g for g in self.word))

    def stabilize(self, sign: int = 1) -> BraidWord:
        """Markov stabilization: add a strand and one crossing with it."""
        return BraidWord(self.width + 1, self.word + (sign * self.width,))

    @property
    def writhe(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.word)

    def n_components(self) -> int:
        perm = list(range(self.width))
        for g in self.word:
            i = abs(g) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        seen, comps = set(), 0
        for s in range(self.width):
            if s in seen:
                continue
            comps += 1
            while s not in seen:
                seen.add(s)
                s = perm[s]
        return comps


# --------------------------------------------------------------- local weights
@dataclass(frozen=True)
class CrossingWeightTable:
    n: int
    sign: int
    entries: dict   # (a, b, c, d) -> (QMonomial, QSeries)

    def weight(self, a: int, b: int, c: int, d: int) -> QSeries:
        key = (a, b, c, d)
        if key not in self.entries:
            return QSeries.zero()
        m, p = self.entries[key]
        return p.shift(m.exp_q).scale(m.sign)


def _poly_mul_exact(a, b):
    return kernels.convolve(list(a), list(b), len(a) + len(b) - 1)


@lru_cache(maxsize=None)
def _raw_table(n: int, sign: int) -> dict:
    """(a, b) -> tuple of (c, d, half_exponent, coeffs) with the sign folded in."""
    table = {}
    for a in range(n + 1):
        for b in range(n + 1):
            out = []
            if sign > 0:
                for k in range(0, min(a, n - b) + 1):
                    c, d = b + k, a - k
                    e = n + n * d + n * b - a * b - d * c
                    p = _poly_mul_exact(qfactorial_list(k), qbinom_list(n - d, k))
                    p = _poly_mul_exact(p, qbinom_list(c, k))
                    out.append((c, d, e, tuple(p)))
            else:
                for k in range(0, min(b, n - a) + 1):
                    c, d = b - k, a + k
                    e = -n - n * b - n * d + b * d + a * c - b + c
                    p = _poly_mul_exact(qfactorial_list(k), qbinom_list(n - c, k))
                    p = _poly_mul_exact(p, qbinom_list(d, k))
                    if k % 2:
                        p = [-x for x in p]
                    out.append((c, d, e, tuple(p)))
            table[(a, b)] = tuple(out)
    return table


def crossing_weights(n: int, sign: int) -> CrossingWeightTable:
    if n < 0:
        raise ValueError("colour must be nonnegative")
    entries = {}
    for (a, b), outs in _raw_table(n, 1 if sign > 0 else -1).items():
        for c, d, e, p in outs:
            s = 1 if p[0] > 0 else -1
            entries[(a, b, c, d)] = (QMonomial(s, 2 * e), QSeries.from_int_coeffs([s * x for x in p]))
    return CrossingWeightTable(n, 1 if sign > 0 else -1, entries)


# ------------------------------------------------------------------ state sum
def _lower_bounds(width, word, n):
    """Relaxed min-plus bound: least half-exponent reachable from each state at each level."""
    states = list(itertools.product(range(n + 1), repeat=width))
    lb = [None] * (len(word) + 1)
    lb[len(word)] = {s: 0 for s in states}
    for j in range(len(word) - 1, -1, -1):
        g = word[j]
        i = abs(g) - 1
        tab = _raw_table(n, 1 if g > 0 else -1)
        nxt = lb[j + 1]
        cur = {}
        for s in states:
            best = None
            for c, d, e, _ in tab[(s[i], s[i + 1])]:
                t = s[:i] + (c, d) + s[i + 2:]
                v = e + nxt[t]
                if best is None or v < best:
                    best = v
            cur[s] = best if best is not None else 10 ** 18
        lb[j] = cur
    return lb


def _add_into(store: dict, key, off: int, coeffs: list) -> None:
    old = store.get(key)
    if old is None:
        store[key] = (off, coeffs)
        return
    o2, c2 = old
    if (off - o2) % 2:
        raise AssertionError("state sum mixes exponent cosets")
    if off < o2:
        off, coeffs, o2, c2 = o2, c2, off, coeffs
    # now o2 <= off
    shift = (off - o2) // 2
    res = list(c2)
    need = shift + len(coeffs)
    if need > len(res):
        res.extend([0] * (need - len(res)))
    kernels.accumulate_shifted(res, coeffs, shift, 1)
    store[key] = (o2, res)


def _state_sum(width: int, word: Sequence[int], n: int, cut=None):
    """Sum over states; with ``cut`` (half-units) only exponents below it are kept.

    Returns ``{half_exponent: coefficient}``.
    """
    lb = _lower_bounds(width, word, n) if cut is not None else None
    total: dict = {}
    starts = list(itertools.product(range(n + 1), repeat=width))
    for s0 in starts:
        close = sum(2 * a - n for a in s0)
        if cut is not None and close + lb[0][s0] >= cut:
            continue
        layer = {s0: (close, [1])}
        for j, g in enumerate(word):
            i = abs(g) - 1
            tab = _raw_table(n, 1 if g > 0 else -1)
            new: dict = {}
            for s, (off, poly) in layer.items():
                for c, d, e, p in tab[(s[i], s[i + 1])]:
                    t = s[:i] + (c, d) + s[i + 2:]
                    o = off + e
                    if cut is not None:
                        room = cut - o - lb[j + 1][t]
                        if room <= 0:
                            continue
                        m = (room + 1) // 2
                        prod = kernels.convolve(poly, list(p), min(m, len(poly) + len(p) - 1))
                    else:
                        prod = kernels.convolve(poly, list(p), len(poly) + len(p) - 1)
                    _add_into(new, t, o, prod)
            layer = new
            if not layer:
                break
        fin = layer.get(s0)
        if fin is None:
            continue
        off, poly = fin
        for k, v in enumerate(poly):
            if v:
                ex = off + 2 * k
                if cut is None or ex < cut:
                    total[ex] = total.get(ex, 0) + v
    return total


def jones_braid(b: BraidWord, n: int, N_hint: int | None = None) -> QSeries:
    """Colored Jones polynomial of the closure of ``b`` (colour ``n``).

    Without ``N_hint`` the exact Laurent polynomial is returned.  With it the
    result is truncated so that at least ``N_hint`` whole powers of q past
    the lowest term are known.
    """
    if n < 0:
        raise ValueError("colour must be nonnegative")
    if N_hint is None:
        terms = _state_sum(b.width, b.word, n)
        return QSeries.from_dict({2 * e: c for e, c in terms.items()})
    lb = _lower_bounds(b.width, b.word, n)
    floor = min(sum(2 * a - n for a in s) + lb[0][s] for s in lb[0])
    extra = 2 * N_hint
    while True:
        cut = floor + extra
        terms = _state_sum(b.width, b.word, n, cut)
        res = QSeries.from_dict({2 * e: c for e, c in terms.items()}, trunc=2 * cut)
        if not res.is_zero and (2 * cut - res.min_exp) >= 4 * N_hint:
            return res
        extra += 2 * N_hint + 4


def hat_jones(j: QSeries) -> tuple[QMonomial, QSeries]:
    """Split off the lowest monomial; the unit part must lie in ``1 + q Z[q]``."""
    if j.is_zero:
        raise NonUnitLowestCoefficient("zero polynomial")
    lead = j.coeffs[0]
    if lead not in (1, -1):
        raise NonUnitLowestCoefficient(f"lowest coefficient {lead} is not +-1")
    m, u = divide_by_lowest(j)
    if not u.has_integer_exponents():
        raise NonUnitLowestCoefficient("unit part has fractional exponents")
    return m, u


def min_degree_formula(c_minus: int, sigma: int, n: int) -> int:
    """Lowest q-exponent of ``J_n`` in quarter units: ``-(n^2+n)/2 c_- - n/2 (sigma+1)``."""
    return -2 * (n * n + n) * c_minus - 2 * n * (sigma + 1)


def min_degree_check(j: QSeries, c_minus: int, sigma: int, n: int) -> bool:
    return not j.is_zero and j.min_exp == min_degree_formula(c_minus, sigma, n)


def quantum_integer(m: int) -> QSeries:
    """``[m] = (q^(m/2) - q^(-m/2)) / (q^(1/2) - q^(-1/2))``."""
    return QSeries.from_dict({2 * (m - 1) - 4 * i: 1 for i in range(m)})


# ------------------------------------------------------------ Kauffman oracle
def braid_to_pd(b: BraidWord):
    """Planar diagram of the braid closure (for cross-checks against PD input)."""
    from .diagram import build_diagram

    labels = itertools.count(1)
    top = [next(labels) for _ in range(b.width)]
    cur = list(top)
    touched = set()
    records = []
    for g in b.word:
        i = abs(g) - 1
        tl, tr = cur[i], cur[i + 1]
        bl, br = next(labels), next(labels)
        # strands run TL -> BR and TR -> BL; counterclockwise order is TR, TL, BL, BR
        if g > 0:
            records.append([tl, bl, br, tr])   # TL -> BR passes under
        else:
            records.append([tr, tl, bl, br])   # TR -> BL passes under
        cur[i], cur[i + 1] = bl, br
        touched.update((i, i + 1))
    if len(touched) != b.width:
        raise WidthMismatch("every strand must take part in a crossing")
    ren = {cur[p]: top[p] for p in range(b.width)}
    return build_diagram([[ren.get(x, x) for x in rec] for rec in records], strict=False)


def kauffman_jones(diagram) -> QSeries:
    """Jones polynomial ``V(t)`` (as a series in ``t``, quarter units) via the bracket.

    Uses ``<X[i,j,k,l]> = A <(i,j)(k,l)> + A^-1 <(i,l)(j,k)>``,
    ``d = -A^2 - A^-2`` and ``V = (-A^3)^(-w) <D>`` at ``A = t^(-1/4)``.
    """
    xs = diagram.crossings
    c = len(xs)
    bracket: dict[int, int] = {}
    for mask in range(1 << c):
        parent = {}

        def find(u):
            while parent.setdefault(u, u) != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        def join(u, v):
            parent[find(u)] = find(v)

        na = 0
        for x, (i, j, k, l) in enumerate(xs):
            if mask >> x & 1:
                join(i, l)
                join(j, k)
            else:
                na += 1
                join(i, j)
                join(k, l)
        loops = len({find(a) for a in diagram.arcs})
        expo = na - (c - na)
        # (-A^2 - A^-2)^(loops-1)
        poly = {0: 1}
        for _ in range(loops - 1):
            nxt: dict[int, int] = {}
            for e, v in poly.items():
                nxt[e + 2] = nxt.get(e + 2, 0) - v
                nxt[e - 2] = nxt.get(e - 2, 0) - v
            poly = nxt
        for e, v in poly.items():
            bracket[e + expo] = bracket.get(e + expo, 0) + v
    w = diagram.writhe
    sign = -1 if w % 2 else 1
    # V in powers of A, then A^m = t^(-m/4) -> quarter exponent -m
    vt = {}
    for e, v in bracket.items():
        if v:
            m = e - 3 * w
            vt[-m] = vt.get(-m, 0) + sign * v
    return QSeries.from_dict(vt)
