"""Pure-Python reference implementations of the hot kernels.

Every function here has a twin in ``_kernels.pyx`` with the same signature
and bit-identical results; :mod:`jonestails.kernels` picks one at import.
"""

from __future__ import annotations


def convolve(a, b, n):
    """Truncated Cauchy product: the first ``n`` coefficients of ``a*b``."""
    la, lb = len(a), len(b)
    if n <= 0 or la == 0 or lb == 0:
        return [0] * max(n, 0)
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


def mul_one_minus_qk(c, k, n):
    """In place: ``c <- c * (1 - q^k)`` truncated to ``n`` terms (k >= 1)."""
    for i in range(n - 1, k - 1, -1):
        c[i] -= c[i - k]


def div_one_minus_qk(c, k, n):
    """In place: ``c <- c / (1 - q^k)`` truncated to ``n`` terms (k >= 1)."""
    for i in range(k, n):
        c[i] += c[i - k]


def accumulate_shifted(acc, src, shift, factor):
    """``acc[shift + i] += factor * src[i]`` for the part that fits in ``acc``."""
    n = len(acc)
    m = min(len(src), n - shift)
    if factor == 1:
        for i in range(m):
            acc[shift + i] += src[i]
    elif factor:
        for i in range(m):
            acc[shift + i] += factor * src[i]


def adm_walk(plan, limit2, cap, order_n, collect):
    """Depth-first walk of the admissible cone.

    ``plan`` is ``(order, step_edges, step_corners, edge_vars, alpha, parity)``
    as built by :func:`jonestails.nahm._walk_plan`.  A partial assignment is
    abandoned once the running lower bound on ``2(Q+L)`` exceeds ``limit2``.

    With ``collect`` true the result is a list of ``(lam, q2)`` pairs.
    Otherwise points are aggregated into ``{(q2, edges): signed count}`` where
    ``edges`` is the sorted tuple of nonzero edge values clamped to
    ``order_n - q2 - 1`` (beyond that ``1/(q)_e`` agrees with ``1/(q)_oo``).

    Returns ``(points, result, best_num, best_den)``; ``best_num/best_den``
    is the smallest ratio ``(Q+L)/max_edge`` seen over nonzero points.
    """
    order, step_edges, step_corners, edge_vars, alpha, parity = plan
    n = len(order)
    lam = [0] * n
    ev = [0] * len(edge_vars)
    out = [] if collect else {}
    state = [0, 1, 0]   # points, best_num, best_den (best_den 0 = none yet)
    half = limit2 // 2

    def leaf(b2):
        state[0] += 1
        if state[0] > cap:
            raise OverflowError(cap)
        q2 = b2 // 2
        emax = max(ev) if ev else 0
        if emax and (state[2] == 0 or q2 * state[2] < state[1] * emax):
            state[1], state[2] = q2, emax
        if collect:
            out.append((tuple(lam), q2))
            return
        m = order_n - q2 - 1
        key = (q2, tuple(sorted(min(x, m) for x in ev if x)))
        par = 0
        for i in range(n):
            if parity[i] and lam[i] & 1:
                par ^= 1
        out[key] = out.get(key, 0) + (-1 if par else 1)

    def rec(k, b2):
        if k == n:
            leaf(b2)
            return
        v = order[k]
        lo, hi = None, None
        for e in step_edges[k]:
            other = 0
            for i in edge_vars[e]:
                if i != v:
                    other += lam[i]
            if lo is None or -other > lo:
                lo = -other
            # an edge value never exceeds Q+L on the cone
            if hi is None or half - other < hi:
                hi = half - other
        x = lo
        while x <= hi:
            lam[v] = x
            b = b2
            for e in step_edges[k]:
                s = 0
                for i in edge_vars[e]:
                    s += lam[i]
                ev[e] = s
                b += alpha[e] * s
            for a, c in step_corners[k]:
                b += ev[a] * ev[c]
            if b > limit2:
                break
            rec(k + 1, b)
            x += 1
        lam[v] = 0

    rec(0, 0)
    return state[0], out, state[1], state[2]
