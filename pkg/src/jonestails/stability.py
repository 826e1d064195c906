"""Stability of the sequence of normalised coloured Jones polynomials.

``normalized_hat_jones`` divides ``J_{K,n}`` by its lowest monomial and by
the unknot value ``[n+1]`` (also hat-normalised), so the unknot sequence is
constantly ``1``.  The k-th residual of a sequence ``f_n`` against
``Phi_0 .. Phi_k`` is ``q^(-k(n+1)) (f_n - sum_j Phi_j q^(j(n+1)))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import InputError, NotStabilized
from .jones import BraidWord, hat_jones, jones_braid
from .qseries import QSeries, qs_inverse_unit


def normalized_hat_jones(j: QSeries, n: int, order: int | None = None) -> QSeries:
    """``hat(J_n) * (1-q) / (1-q^(n+1))``, truncated at ``q^order`` if given."""
    _, u = hat_jones(j)
    one = QSeries.one()
    num = u * (one - QSeries.monomial(4))
    trunc = num.trunc if order is None else (4 * order if num.trunc is None else min(num.trunc, 4 * order))
    if trunc is None:
        # exact division: the quotient is a polynomial
        bound = num.max_exp + 4
        res = (num * qs_inverse_unit(one - QSeries.monomial(4 * (n + 1)), bound)).truncate(bound)
        return QSeries.make(res.min_exp, res.coeffs, None)
    return (num * qs_inverse_unit(one - QSeries.monomial(4 * (n + 1)), trunc)).truncate(trunc)


def jones_sequence(b: BraidWord, n_max: int, order, n_min: int = 1) -> dict[int, QSeries]:
    """Normalised ``hat J_n`` for ``n_min <= n <= n_max``.

    ``order`` is a callable ``n -> number of coefficients needed`` or an int.
    """
    out = {}
    for n in range(n_min, n_max + 1):
        need = order(n) if callable(order) else order
        j = jones_braid(b, n, N_hint=need + 1)
        out[n] = normalized_hat_jones(j, n, need)
    return out


def valuation(s: QSeries):
    """Lowest exponent in whole powers; ``None`` for a (truncated) zero."""
    if s.is_zero:
        return None
    if s.min_exp % 4:
        raise InputError("valuation of a series with fractional exponents")
    return s.min_exp // 4


def residual(f: QSeries, phis: Sequence[QSeries], n: int) -> QSeries:
    k = len(phis) - 1
    r = f
    for j, p in enumerate(phis):
        r = r - p.shift(4 * j * (n + 1))
    return r.shift(-4 * k * (n + 1))


@dataclass
class StabilityReport:
    """Outcome of a k-stability check.

    ``residual_valuations[n]`` is the valuation of the shifted k-residual;
    when the residual vanishes to the known order it is that order and
    ``certified[n]`` is false.  ``slack`` is the least ``s`` with
    ``valuation >= n + 1 - s`` on the certified range.
    """

    k: int
    phi_hat: list
    residual_valuations: dict
    passed: bool
    knot: str | None = None
    certified: dict = field(default_factory=dict)
    slack: int | None = None
    rate_constants: tuple | None = None

    @property
    def n_range(self) -> list[int]:
        ns = sorted(self.residual_valuations)
        return [ns[0], ns[-1]] if ns else []

    @property
    def congruences(self) -> dict:
        """``n -> residual in q^(n+1) Z[[q]]``."""
        return {n: v >= n + 1 for n, v in self.residual_valuations.items()}

    def to_json(self) -> dict:
        heads = []
        for p in self.phi_hat:
            m = 10 if p.trunc is None else min(10, p.trunc // 4)
            heads.append([p.coeff(4 * i) for i in range(m)])
        return {
            "knot": self.knot,
            "k": self.k,
            "n_range": self.n_range,
            "pass": self.passed,
            "residual_valuations": [self.residual_valuations[n] for n in sorted(self.residual_valuations)],
            "phi_heads": heads,
        }


def _valuations(seq: Mapping[int, QSeries], phis: Sequence[QSeries], n_max: int):
    vals, cert = {}, {}
    for n in sorted(seq):
        if n > n_max:
            continue
        r = residual(seq[n], phis, n)
        v = valuation(r)
        if v is None:
            vals[n], cert[n] = (r.trunc // 4 if r.trunc is not None else None), False
        else:
            vals[n], cert[n] = v, True
    return vals, cert


def _slack(vals: Mapping[int, int], cert: Mapping[int, bool]):
    s = [n + 1 - v for n, v in vals.items() if cert[n]]
    return max(0, max(s)) if s else None


def verify_0stability(phi0: QSeries, seq: Mapping[int, QSeries], n_max: int,
                      knot: str | None = None) -> StabilityReport:
    """Check ``hat J_n - Phi_0 in q^(n+1) Z[[q]]`` for every ``n <= n_max``.

    Every term and ``phi0`` must be known past ``q^n``.
    """
    vals, cert = _valuations(seq, [phi0], n_max)
    for n, v in vals.items():
        if not cert[n] and v is not None and v < n + 1:
            raise InputError(f"term n={n} known only below q^{v}")
    vals = {n: (n + 1 if v is None else v) for n, v in vals.items()}
    ok = bool(vals) and all(v >= n + 1 for n, v in vals.items())
    return StabilityReport(0, [phi0], vals, ok, knot, cert, _slack(vals, cert))


def verify_kstability(phis: Sequence[QSeries], seq: Mapping[int, QSeries], n_max: int,
                      k: int | None = None, knot: str | None = None) -> StabilityReport:
    """Shifted k-residuals must have nonnegative valuations growing with ``n``.

    For ``k = 0`` this is :func:`verify_0stability`.  Terms whose residual
    vanishes to the known order are reported but not used for the growth
    test; at least two certified terms are needed to pass.
    """
    k = len(phis) - 1 if k is None else k
    if k != len(phis) - 1:
        raise InputError("need exactly k+1 series")
    if k == 0:
        return verify_0stability(phis[0], seq, n_max, knot)
    vals, cert = _valuations(seq, phis, n_max)
    if any(v is None for v in vals.values()):
        raise InputError("exact residual vanished; pass truncated series")
    good = [n for n in sorted(vals) if cert[n]]
    ok = (len(good) >= 2 and all(v >= 0 for v in vals.values())
          and all(vals[a] < vals[b] for a, b in zip(good, good[1:])))
    return StabilityReport(k, list(phis), vals, ok, knot, cert, _slack(vals, cert))


def fit_rate_constants(slacks: Mapping[int, int]) -> tuple[int, int]:
    """Smallest ``C + C'`` (then smallest ``C``) with ``slack_k <= C(k+1)^2 + C'`` for all k."""
    if not slacks:
        raise InputError("no slacks to fit")
    best = None
    for c in range(max(slacks.values()) + 1):
        cp = max(0, max(s - c * (k + 1) ** 2 for k, s in slacks.items()))
        if best is None or (c + cp, c) < (best[0] + best[1], best[0]):
            best = (c, cp)
    return best


def _seq_order(s: QSeries):
    return None if s.trunc is None else s.trunc // 4


def empirical_phi(seq: Mapping[int, QSeries], k: int, N: int,
                  known: Sequence[QSeries] = ()) -> list[QSeries]:
    """Read ``Phi_0 .. Phi_k`` to ``O(q^N)`` off the sequence.

    Coefficient ``m`` of ``Phi_j`` is taken from the shifted residual of
    ``f_n`` at the two largest ``n >= m`` for which ``f_n`` and the lower
    series are known far enough; the two values must agree.  Lower series
    are extracted as far as the sequence allows, which makes higher ``Phi_j``
    need long sequences.  ``known`` supplies exact leading series instead.
    """
    ns = sorted(seq)
    if len(ns) < 2:
        raise InputError("need at least two terms of the sequence")
    phis: list[list[int]] = []
    for j in range(k + 1):
        if j < len(known):
            kj = known[j]
            o = _seq_order(kj)
            top = 4 * (k + 1) * (ns[-1] + 2) + 4 * N
            o = top // 4 if o is None else min(o, top // 4)
            phis.append([kj.coeff(4 * m) for m in range(o)])
            continue
        coeffs: list[int] = []
        m = 0
        while True:
            usable = []
            for n in reversed(ns):
                if n < m:
                    break
                e = j * (n + 1) + m
                o = _seq_order(seq[n])
                if o is not None and o <= e:
                    continue
                if any(len(phis[i]) <= (j - i) * (n + 1) + m for i in range(j)):
                    continue
                usable.append(n)
                if len(usable) == 2:
                    break
            if len(usable) < 2:
                break
            vals = []
            for n in usable:
                c = seq[n].coeff(4 * (j * (n + 1) + m))
                for i in range(j):
                    c -= phis[i][(j - i) * (n + 1) + m]
                vals.append(c)
            if vals[0] != vals[1]:
                raise NotStabilized(f"coefficient q^{m} of Phi_{j}: {vals[1]} (n={usable[1]}) "
                                    f"vs {vals[0]} (n={usable[0]})")
            coeffs.append(vals[0])
            m += 1
        if len(coeffs) < N:
            raise InputError(f"sequence determines Phi_{j} only to O(q^{len(coeffs)}), need {N}")
        phis.append(coeffs)
    return [QSeries.from_int_coeffs(c[:N], N) for c in phis]


def limit_check(seq: Mapping[int, QSeries], target: QSeries, bound: int | None = None) -> bool:
    """Coefficientwise convergence of ``seq`` to ``target``.

    Requires a common lower bound on the minimum degrees (``bound`` if given,
    else the one of the first term) and residual valuations growing with n.
    """
    ns = sorted(seq)
    if not ns:
        return False
    mins = [seq[n].min_exp for n in ns if not seq[n].is_zero]
    floor = mins[0] if bound is None and mins else (4 * bound if bound is not None else 0)
    if any(m < floor for m in mins):
        return False
    vals = []
    for n in ns:
        d = seq[n] - target
        vals.append(None if d.is_zero else d.min_exp)
    finite = [v for v in vals if v is not None]
    return all(a < b for a, b in zip(finite, finite[1:])) and bool(finite or vals)
