# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of :mod:`jonestails._pykernels`.

Coefficient arithmetic stays exact: the series kernels take a C ``int64``
path only when a magnitude bound rules out overflow and fall back to Python
integers otherwise.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

cdef object _LIMIT = 2 ** 62


def _fits(a, b, n):
    cdef Py_ssize_t m = min(len(a), len(b), n)
    if m == 0:
        return True
    ma = max(abs(x) for x in a[:n]) if len(a) else 0
    mb = max(abs(x) for x in b[:n]) if len(b) else 0
    return ma * mb * m < _LIMIT


def convolve(a, b, Py_ssize_t n):
    """Truncated Cauchy product: the first ``n`` coefficients of ``a*b``."""
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, hi
    if n <= 0 or la == 0 or lb == 0:
        return [0] * max(n, 0)
    if not _fits(a, b, n):
        return _convolve_obj(a, b, n)
    cdef int64_t *ca = <int64_t *> malloc(la * sizeof(int64_t))
    cdef int64_t *cb = <int64_t *> malloc(lb * sizeof(int64_t))
    cdef int64_t *co = <int64_t *> malloc(n * sizeof(int64_t))
    cdef int64_t ai
    try:
        for i in range(la):
            ca[i] = a[i] if i < n else 0
        for i in range(lb):
            cb[i] = b[i] if i < n else 0
        for i in range(n):
            co[i] = 0
        for i in range(min(la, n)):
            ai = ca[i]
            if ai == 0:
                continue
            hi = min(lb, n - i)
            for j in range(hi):
                co[i + j] += ai * cb[j]
        return [co[i] for i in range(n)]
    finally:
        free(ca)
        free(cb)
        free(co)


def _convolve_obj(a, b, Py_ssize_t n):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, hi
    out = [0] * n
    if la > lb:
        a, b, la, lb = b, a, lb, la
    for i in range(min(la, n)):
        ai = a[i]
        if not ai:
            continue
        hi = min(lb, n - i)
        for j in range(hi):
            out[i + j] += ai * b[j]
    return out


def mul_one_minus_qk(list c, Py_ssize_t k, Py_ssize_t n):
    """In place: ``c <- c * (1 - q^k)`` truncated to ``n`` terms (k >= 1)."""
    cdef Py_ssize_t i
    for i in range(n - 1, k - 1, -1):
        c[i] = c[i] - c[i - k]


def div_one_minus_qk(list c, Py_ssize_t k, Py_ssize_t n):
    """In place: ``c <- c / (1 - q^k)`` truncated to ``n`` terms (k >= 1)."""
    cdef Py_ssize_t i
    for i in range(k, n):
        c[i] = c[i] + c[i - k]


def accumulate_shifted(list acc, src, Py_ssize_t shift, factor):
    """``acc[shift + i] += factor * src[i]`` for the part that fits in ``acc``."""
    cdef Py_ssize_t n = len(acc), m = min(len(src), n - shift), i
    if factor == 1:
        for i in range(m):
            acc[shift + i] = acc[shift + i] + src[i]
    elif factor:
        for i in range(m):
            acc[shift + i] = acc[shift + i] + factor * src[i]


cdef struct Walk:
    int n
    int n_edges
    int *order
    int *se_start      # step k edges: se[se_start[k] .. se_start[k+1]]
    int *se
    int *sc_start      # step k corners: pairs in sc
    int *sc
    int *ev_start      # edge e variables
    int *ev_vars
    long long *alpha
    int *parity
    long long *lam
    long long *ev
    long long limit2
    long long half
    long long count
    long long cap
    long long best_num
    long long best_den
    int collect
    int order_n


cdef int _leaf(Walk *w, long long b2, object out) except -1:
    cdef long long q2, emax = 0, m
    cdef int i, par = 0
    w.count += 1
    if w.count > w.cap:
        raise OverflowError(w.cap)
    q2 = b2 // 2
    for i in range(w.n_edges):
        if w.ev[i] > emax:
            emax = w.ev[i]
    if emax and (w.best_den == 0 or q2 * w.best_den < w.best_num * emax):
        w.best_num = q2
        w.best_den = emax
    if w.collect:
        out.append((tuple([w.lam[i] for i in range(w.n)]), q2))
        return 0
    m = w.order_n - q2 - 1
    key = (q2, tuple(sorted([min(w.ev[i], m) for i in range(w.n_edges) if w.ev[i]])))
    for i in range(w.n):
        if w.parity[i] and (w.lam[i] & 1):
            par ^= 1
    out[key] = out.get(key, 0) + (-1 if par else 1)
    return 0


cdef int _rec(Walk *w, int k, long long b2, object out) except -1:
    cdef int v, t, e, i, j
    cdef long long lo = 0, hi = 0, other, x, b, s
    cdef int have = 0
    if k == w.n:
        return _leaf(w, b2, out)
    v = w.order[k]
    for t in range(w.se_start[k], w.se_start[k + 1]):
        e = w.se[t]
        other = 0
        for j in range(w.ev_start[e], w.ev_start[e + 1]):
            i = w.ev_vars[j]
            if i != v:
                other += w.lam[i]
        if not have or -other > lo:
            lo = -other
        # an edge value never exceeds Q+L on the cone
        if not have or w.half - other < hi:
            hi = w.half - other
        have = 1
    x = lo
    while x <= hi:
        w.lam[v] = x
        b = b2
        for t in range(w.se_start[k], w.se_start[k + 1]):
            e = w.se[t]
            s = 0
            for j in range(w.ev_start[e], w.ev_start[e + 1]):
                s += w.lam[w.ev_vars[j]]
            w.ev[e] = s
            b += w.alpha[e] * s
        for t in range(w.sc_start[k], w.sc_start[k + 1]):
            b += w.ev[w.sc[2 * t]] * w.ev[w.sc[2 * t + 1]]
        if b > w.limit2:
            break
        _rec(w, k + 1, b, out)
        x += 1
    w.lam[v] = 0
    return 0


cdef int *_ints(seq) except NULL:
    cdef Py_ssize_t m = len(seq), i
    cdef int *p = <int *> malloc((m + 1) * sizeof(int))
    if p == NULL:
        raise MemoryError()
    for i in range(m):
        p[i] = seq[i]
    return p


cdef long long *_longs(seq, Py_ssize_t m) except NULL:
    cdef Py_ssize_t i
    cdef long long *p = <long long *> malloc((m + 1) * sizeof(long long))
    if p == NULL:
        raise MemoryError()
    for i in range(m):
        p[i] = seq[i] if seq is not None else 0
    return p


def _csr(groups):
    start, flat = [0], []
    for g in groups:
        flat.extend(g)
        start.append(len(flat))
    return start, flat


def adm_walk(plan, limit2, cap, order_n, collect):
    """Depth-first walk of the admissible cone; see the pure-Python twin."""
    order, step_edges, step_corners, edge_vars, alpha, parity = plan
    cdef Walk w
    se_start, se = _csr(step_edges)
    sc_start, sc_pairs = _csr(step_corners)
    sc = [x for pair in sc_pairs for x in pair]
    ev_start, ev_vars = _csr(edge_vars)
    w.n = len(order)
    w.n_edges = len(edge_vars)
    w.limit2 = limit2
    w.half = limit2 // 2
    w.count = 0
    w.cap = min(cap, 2 ** 62)
    w.best_num = 1
    w.best_den = 0
    w.collect = 1 if collect else 0
    w.order_n = order_n
    w.order = w.se_start = w.se = w.sc_start = w.sc = w.ev_start = w.ev_vars = w.parity = NULL
    w.alpha = w.lam = w.ev = NULL
    out = [] if collect else {}
    try:
        w.order = _ints(order)
        w.se_start = _ints(se_start)
        w.se = _ints(se)
        w.sc_start = _ints(sc_start)
        w.sc = _ints(sc)
        w.ev_start = _ints(ev_start)
        w.ev_vars = _ints(ev_vars)
        w.parity = _ints(parity)
        w.alpha = _longs(alpha, w.n_edges)
        w.lam = _longs(None, w.n)
        w.ev = _longs(None, w.n_edges)
        _rec(&w, 0, 0, out)
        return w.count, out, w.best_num, w.best_den
    finally:
        free(w.order); free(w.se_start); free(w.se); free(w.sc_start); free(w.sc)
        free(w.ev_start); free(w.ev_vars); free(w.parity)
        free(w.alpha); free(w.lam); free(w.ev)
