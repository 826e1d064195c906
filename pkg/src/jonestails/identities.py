"""Closed-form q-series and the identity checks that tie them to tail series.

``h_b`` and ``h*_b`` are the theta and false-theta series

    h_b  = sum_{n in Z} (-1)^n q^(b n (n+1)/2 - n)
    h*_b = sum_{n in Z} eps(n) q^(b n (n+1)/2 - n),   eps(n) = +1 (n >= 0), -1 (n < 0)

The sign ``eps`` is fixed by the anchors ``h*_2 = 1`` and the 5_2 tail; the
opposite choice gives ``h*_2 = -1``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources

from . import kernels
from .diagram import nahm_data_from_pd, parse_pd
from .errors import InputError
from .knots import builtin_table
from .nahm import DEFAULT_CAP, phi0_result
from .qseries import QSeries, inv_qfactorial_list, qfactorial_list, qpoch_inf_list


def _series(coeffs: list[int], order: int) -> QSeries:
    return QSeries.from_int_coeffs(coeffs, order)


def _theta_terms(b: int, order: int):
    """Pairs ``(n, exponent)`` with ``b n(n+1)/2 - n < order``."""
    # exponent >= b n^2 / 2 - (b/2 + 1)|n|, so |n| <= r suffices
    r = int(math.isqrt(2 * order // max(b, 1) + 4)) + 4
    for n in range(-r, r + 1):
        e = b * n * (n + 1) // 2 - n
        if 0 <= e < order:
            yield n, e


def h_list(b: int, order: int, starred: bool = False) -> list[int]:
    if b < 1:
        raise InputError("b must be a positive integer")
    c = [0] * order
    for n, e in _theta_terms(b, order):
        if starred:
            c[e] += 1 if n >= 0 else -1
        else:
            c[e] += -1 if n % 2 else 1
    return c


def h_series(b: int, starred: bool, N: int) -> QSeries:
    """``h_b`` or ``h*_b`` to ``O(q^N)``."""
    return _series(h_list(b, N, starred), N)


def product_expression(expr, order: int) -> list[int] | None:
    """Evaluate ``[[kind, b, mult], ...]`` (kind ``"h"`` or ``"h*"``); ``None`` stays unknown."""
    if expr is None:
        return None
    out = [1] + [0] * (order - 1)
    for kind, b, mult in expr:
        base = h_list(b, order, kind == "h*")
        for _ in range(mult):
            out = kernels.convolve(out, base, order)
    return out


def expression_text(expr) -> str:
    if expr is None:
        return "???"
    if not expr:
        return "1"
    parts = []
    for kind, b, mult in expr:
        name = f"h*_{b}" if kind == "h*" else f"h_{b}"
        parts.append(name if mult == 1 else f"({name})^{mult}")
    return " ".join(parts)


# ------------------------------------------------------------- theta products
def _poch_arith(start: int, step: int, order: int) -> list[int]:
    """``(q^start; q^step)_inf`` below ``q^order``."""
    c = [1] + [0] * (order - 1)
    k = start
    while k < order:
        kernels.mul_one_minus_qk(c, k, order)
        k += step
    return c


def _div_poch_arith(c: list[int], start: int, step: int, order: int) -> None:
    k = start
    while k < order:
        kernels.div_one_minus_qk(c, k, order)
        k += step


def theta_product_side(b: int, N: int, k_max: int | None = None) -> list[int]:
    """``(q;q)_inf / prod_{k=2}^{k_max} (q^k; q^(2b+1))_inf`` with ``k_max = 2b-1``."""
    k_max = 2 * b - 1 if k_max is None else k_max
    c = list(qpoch_inf_list(N))
    for k in range(2, k_max + 1):
        _div_poch_arith(c, k, 2 * b + 1, N)
    return c


def theta_sum_side(b: int, N: int) -> list[int]:
    """``sum_n (-1)^n q^((2b+1) n^2/2 + (2b-1) n/2)``."""
    return h_list(2 * b + 1, N)


def theta_factorization_check(b: int, N: int, k_max: int | None = None) -> bool:
    if b < 2:
        raise InputError("theta factorization needs b >= 2")
    return theta_product_side(b, N, k_max) == theta_sum_side(b, N)


# ---------------------------------------------------------------- twist knots
def twist_plus_difference(p: int, N: int) -> list[int]:
    """``sum_{n>=0} q^(p n^2 + (p-1) n) - sum_{n>=0} q^(p n^2 + (p+1) n + 1)``."""
    c = [0] * N
    n = 0
    while p * n * n + (p - 1) * n < N:
        c[p * n * n + (p - 1) * n] += 1
        e = p * n * n + (p + 1) * n + 1
        if e < N:
            c[e] -= 1
        n += 1
    return c


def twist_plus_signed(p: int, N: int) -> list[int]:
    """``1 + sum_{n != 0} sgn(n) q^(p n^2 + (p-1) n)`` with ``sgn(n) = +1`` for ``n > 0``.

    The opposite sign convention does not reproduce the difference form.
    """
    c = [0] * N
    c[0] = 1
    n = 1
    while p * n * n - (p - 1) * n < N:
        e = p * n * n + (p - 1) * n
        if e < N:
            c[e] += 1
        c[p * n * n - (p - 1) * n] -= 1
        n += 1
    return c


def twist_knot_phi(p: int, side: str, N: int) -> QSeries:
    """Closed forms of the tail/head series of the twist knot ``K_p``."""
    if p == 0:
        raise InputError("p must be nonzero")
    if side not in ("tail", "head"):
        raise InputError("side must be 'tail' or 'head'")
    if p < 0:
        if side == "tail":
            return _series(list(qpoch_inf_list(N)), N)
        return _series(theta_product_side(-p, N), N)
    if side == "tail":
        return _series(twist_plus_difference(p, N), N)
    return _series(list(qpoch_inf_list(N)), N)


# -------------------------------------------------------------- Durfee factor
def durfee_factor(b1: int, b2: int, N: int) -> QSeries:
    """``(q)_inf sum_{a+b1>=0, a+b2>=0} q^((a+b1)(a+b2)) / ((q)_{a+b1} (q)_{a+b2})``."""
    acc = [0] * N
    a = -min(b1, b2)
    # both factors are nonnegative and grow with a, so the exponent does too
    while (a + b1) * (a + b2) < N:
        m1, m2 = a + b1, a + b2
        e = m1 * m2
        term = kernels.convolve(list(inv_qfactorial_list(m1, N)), list(inv_qfactorial_list(m2, N)), N - e)
        kernels.accumulate_shifted(acc, term, e, 1)
        a += 1
    return _series(kernels.convolve(acc, list(qpoch_inf_list(N)), N), N)


# ---------------------------------------------------------- tetrahedral network
def _qfact(k: int) -> list[int]:
    return list(qfactorial_list(k))


def tetra_series(n: int, N: int) -> QSeries:
    """Normalised evaluation of the tetrahedron with all edges coloured ``2n``.

    ``1/(1-q) sum_{k=0}^n (-1)^k q^(k(3k+1)/2) (q)_{4n+1-k} / ((q)_k^3 (q)_{n-k}^4)``,
    truncated at ``q^N``.
    """
    if n < 0:
        raise InputError("n must be nonnegative")
    acc = [0] * N
    for k in range(n + 1):
        e = k * (3 * k + 1) // 2
        if e >= N:
            break
        m = N - e
        num = _qfact(4 * n + 1 - k)[:m]
        for _ in range(3):
            num = kernels.convolve(num, list(inv_qfactorial_list(k, m)), m)
        for _ in range(4):
            num = kernels.convolve(num, list(inv_qfactorial_list(n - k, m)), m)
        kernels.accumulate_shifted(acc, num, e, -1 if k % 2 else 1)
    kernels.div_one_minus_qk(acc, 1, N)
    return _series(acc, N)


def tetra_phi0(N: int) -> QSeries:
    """``1/((1-q)(q)_inf^3) sum_k (-1)^k q^(k(3k+1)/2) / (q)_k^3``."""
    acc = [0] * N
    k = 0
    while k * (3 * k + 1) // 2 < N:
        e = k * (3 * k + 1) // 2
        m = N - e
        t = [1] + [0] * (m - 1)
        for _ in range(3):
            t = kernels.convolve(t, list(inv_qfactorial_list(k, m)), m)
        kernels.accumulate_shifted(acc, t, e, -1 if k % 2 else 1)
        k += 1
    inv = list(inv_qfactorial_list(N, N))
    for _ in range(3):
        acc = kernels.convolve(acc, inv, N)
    kernels.div_one_minus_qk(acc, 1, N)
    return _series(acc, N)


def tetra_stability(n_max: int, N: int | None = None) -> dict:
    """Valuation of ``tetra_series(n) - tetra_phi0`` for each ``n <= n_max``."""
    N = n_max + 2 if N is None else N
    phi = tetra_phi0(N)
    out = {}
    for n in range(n_max + 1):
        diff = tetra_series(n, N) - phi
        out[n] = None if diff.is_zero else diff.min_exp // 4
    return out


# --------------------------------------------------------- knot-table suite
def head_8_5_over_h3() -> list[int]:
    text = resources.files("jonestails").joinpath("data/knot_8_5_head_over_h3.json").read_text()
    return json.loads(text)["coefficients"]


@dataclass
class RowResult:
    name: str
    status: str                  # "proven" or "conjectural"
    tail_ok: bool | None
    head_ok: bool | None
    mirrored: bool               # expressions matched with the diagram mirrored
    tail_expr: str
    head_expr: str
    points: int = 0
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.tail_ok is not False and self.head_ok is not False

    def to_json(self) -> dict:
        return {
            "knot": self.name, "status": self.status, "tail_ok": self.tail_ok,
            "head_ok": self.head_ok, "mirrored": self.mirrored, "tail": self.tail_expr,
            "head": self.head_expr, "points_enumerated": self.points, "notes": self.notes,
        }


PROVEN = ("3_1", "4_1")


def check_row(name: str, N: int, cap: int = DEFAULT_CAP) -> RowResult:
    rec = builtin_table()[name]
    d = parse_pd(rec["pd"])
    r_plus = phi0_result(nahm_data_from_pd(d), N, cap=cap)
    r_minus = phi0_result(nahm_data_from_pd(d.mirror()), N, cap=cap)
    lo, hi = r_plus.series.int_coeffs(N), r_minus.series.int_coeffs(N)
    t_exp = product_expression(rec["tail"], N)
    h_exp = product_expression(rec["head"], N)
    notes = []
    if name == "8_5":
        ref = head_8_5_over_h3()[:N]
        h_exp = kernels.convolve(ref, h_list(3, N), N) if len(ref) >= N else None
        if h_exp is None:
            notes.append(f"printed head coefficients only reach q^{len(ref) - 1}")

    def match(a, b):
        return None if b is None else a == b

    straight = (match(lo, t_exp), match(hi, h_exp))
    swapped = (match(hi, t_exp), match(lo, h_exp))
    mirrored = straight.count(True) < swapped.count(True)
    tail_ok, head_ok = swapped if mirrored else straight
    return RowResult(
        name, "proven" if name in PROVEN else "conjectural", tail_ok, head_ok, mirrored,
        expression_text(rec["tail"]),
        "h_3 * (printed series)" if name == "8_5" else expression_text(rec["head"]),
        r_plus.points_enumerated + r_minus.points_enumerated, notes,
    )


def table_rows() -> list[str]:
    return [k for k in builtin_table() if not k.startswith("K_")]


def knot_table_suite(N: int, names=None, cap: int = DEFAULT_CAP) -> list[RowResult]:
    names = table_rows() if names is None else names
    return [check_row(name, N, cap) for name in sorted(names, key=_knot_sort_key)]


def _knot_sort_key(name: str):
    head, _, tail = name.partition("_")
    try:
        return (0, int(head), int(tail))
    except ValueError:
        return (1, head, tail)


def suite_text(rows: list[RowResult]) -> str:
    lines = [f"{'K':6} {'status':12} {'tail':14} {'ok':5} {'head':24} {'ok':5} mirrored"]
    for r in rows:
        lines.append(
            f"{r.name:6} {r.status:12} {r.tail_expr:14} {_mark(r.tail_ok):5} "
            f"{r.head_expr:24} {_mark(r.head_ok):5} {'yes' if r.mirrored else 'no'}"
        )
    return "\n".join(lines)


def _mark(v) -> str:
    return "n/a" if v is None else ("yes" if v else "NO")


def micro_suite(N: int = 60) -> dict:
    """The small identity checks: theta anchors, factorizations, Durfee."""
    res = {
        "h_1 = 0": h_list(1, N) == [0] * N,
        "h*_2 = 1": h_list(2, N, True) == [1] + [0] * (N - 1),
        "h_3 = (q;q)_inf": h_list(3, N) == list(qpoch_inf_list(N)),
    }
    for b in (2, 3, 4):
        res[f"theta factorization b={b}"] = theta_factorization_check(b, N)
    one = QSeries.from_int_coeffs([1], N)
    for b1 in (0, 1, 3):
        for b2 in (0, 1, 3):
            res[f"durfee ({b1},{b2})"] = durfee_factor(b1, b2, N) == one
    return res
