"""Exact truncated Laurent series in q on a quarter-integer exponent grid.

A :class:`QSeries` stores integer coefficients of ``q^(e/4)`` for consecutive
quarter-exponents ``e``.  Truncated series carry ``trunc`` (in quarter units):
nothing at or beyond it is known.  ``trunc=None`` marks an exact Laurent
polynomial.  All exponents in this module are quarter units unless a
parameter is called ``order``, which counts whole powers of q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import kernels
from .errors import DivergentProduct, NonUnitLeadingCoefficient, OutOfRange, ZeroSeries

INF = math.inf


@dataclass(frozen=True)
class QMonomial:
    """``sign * q^(exp_q/4)`` with ``sign`` in {+1, -1}."""

    sign: int
    exp_q: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("QMonomial sign must be +1 or -1")

    def to_series(self) -> QSeries:
        return QSeries.monomial(self.exp_q, self.sign)

    def __str__(self) -> str:
        return _render_terms([(self.exp_q, self.sign)]) or "0"


@dataclass(frozen=True, eq=True)
class QSeries:
    """Canonical truncated series; build instances through :meth:`make`."""

    min_exp: int
    coeffs: tuple
    trunc: int | None = None

    # ------------------------------------------------------------------ build
    @classmethod
    def make(cls, min_exp: int, coeffs: Iterable[int], trunc: int | None = None) -> QSeries:
        c = list(coeffs)
        if trunc is not None:
            keep = trunc - min_exp
            if keep <= 0:
                return cls(trunc, (), trunc)
            del c[keep:]
        k = 0
        while k < len(c) and c[k] == 0:
            k += 1
        if k == len(c):
            return cls(trunc, (), trunc) if trunc is not None else cls(0, (), None)
        min_exp += k
        c = c[k:]
        if trunc is None:
            while c[-1] == 0:
                c.pop()
        else:
            c.extend([0] * (trunc - min_exp - len(c)))
        return cls(min_exp, tuple(c), trunc)

    @classmethod
    def zero(cls, trunc: int | None = None) -> QSeries:
        return cls.make(0, (), trunc)

    @classmethod
    def one(cls, trunc: int | None = None) -> QSeries:
        return cls.make(0, (1,), trunc)

    @classmethod
    def monomial(cls, exp_q: int, coeff: int = 1, trunc: int | None = None) -> QSeries:
        return cls.make(exp_q, (coeff,), trunc)

    @classmethod
    def from_dict(cls, terms: dict, trunc: int | None = None) -> QSeries:
        """From ``{quarter_exponent: coefficient}``."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls.zero(trunc)
        lo, hi = min(terms), max(terms)
        c = [0] * (hi - lo + 1)
        for e, v in terms.items():
            c[e - lo] = v
        return cls.make(lo, c, trunc)

    @classmethod
    def from_int_coeffs(cls, coeffs: Sequence[int], order: int | None = None,
                        start: int = 0) -> QSeries:
        """Series ``sum c_i q^(start+i)`` in whole powers; ``order`` truncates at ``q^order``."""
        c = [0] * (4 * len(coeffs))
        c[::4] = list(coeffs)
        return cls.make(4 * start, c, None if order is None else 4 * order)

    # ------------------------------------------------------------- accessors
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_exact(self) -> bool:
        return self.trunc is None

    @property
    def order(self) -> Fraction | None:
        """Truncation point in powers of q."""
        return None if self.trunc is None else Fraction(self.trunc, 4)

    @property
    def max_exp(self) -> int:
        """Largest stored quarter-exponent with a nonzero coefficient."""
        if self.is_zero:
            raise ZeroSeries("zero series has no terms")
        i = len(self.coeffs) - 1
        while self.coeffs[i] == 0:
            i -= 1
        return self.min_exp + i

    def coeff(self, exp_q: int) -> int:
        if self.trunc is not None and exp_q >= self.trunc:
            raise IndexError(f"coefficient of q^({exp_q}/4) is beyond the truncation")
        i = exp_q - self.min_exp
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def terms(self) -> list[tuple[int, int]]:
        return [(self.min_exp + i, c) for i, c in enumerate(self.coeffs) if c]

    def int_coeffs(self, order: int) -> list[int]:
        """Coefficients of ``q^0 .. q^(order-1)``; requires whole exponents."""
        if self.trunc is not None and self.trunc < 4 * order:
            raise ValueError(f"series known only below q^{self.trunc / 4}, need order {order}")
        out = [0] * order
        for e, c in self.terms():
            if e % 4:
                raise ValueError("series has fractional exponents")
            k = e // 4
            if k < 0:
                raise ValueError("series has negative exponents")
            if k < order:
                out[k] = c
        return out

    def has_integer_exponents(self) -> bool:
        return all(e % 4 == 0 for e, _ in self.terms())

    # ------------------------------------------------------------ transforms
    def truncate(self, trunc: int) -> QSeries:
        t = trunc if self.trunc is None else min(trunc, self.trunc)
        return QSeries.make(self.min_exp, self.coeffs, t)

    def shift(self, exp_q: int) -> QSeries:
        """Multiply by ``q^(exp_q/4)``."""
        if self.is_zero and self.trunc is None:
            return self
        t = None if self.trunc is None else self.trunc + exp_q
        return QSeries.make(self.min_exp + exp_q, self.coeffs, t)

    def scale(self, k: int) -> QSeries:
        return QSeries.make(self.min_exp, [k * c for c in self.coeffs], self.trunc)

    def mirror(self) -> QSeries:
        """Substitute ``q -> 1/q`` (exact polynomials only)."""
        if self.trunc is not None:
            raise ValueError("mirror is defined for exact polynomials only")
        if self.is_zero:
            return self
        return QSeries.make(-self.max_exp, reversed(self.coeffs[: self.max_exp - self.min_exp + 1]))

    def agrees_with(self, other: QSeries, upto: int) -> bool:
        """True when both series match on all quarter-exponents below ``upto``."""
        lo = min(self.min_exp, other.min_exp)
        for e in range(lo, upto):
            if self.coeff(e) != other.coeff(e):
                return False
        return True

    # ------------------------------------------------------------ arithmetic
    def __add__(self, other):
        return qs_add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return qs_add(self, -_coerce(other))

    def __rsub__(self, other):
        return qs_add(_coerce(other), -self)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return qs_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return qs_inverse_unit(self) ** (-k)
        result = QSeries.one(None)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ---------------------------------------------------------- (de)serialize
    def to_json(self) -> dict:
        return {
            "min_exp_quarters": self.min_exp,
            "coefficients": list(self.coeffs),
            "trunc_quarters": self.trunc,
        }

    @classmethod
    def from_json(cls, obj: dict) -> QSeries:
        return cls.make(obj["min_exp_quarters"], obj["coefficients"], obj.get("trunc_quarters"))

    def __str__(self) -> str:
        body = _render_terms(self.terms())
        if self.trunc is None:
            return body or "0"
        tail = f"O({_render_power(self.trunc)})"
        return f"{body} + {tail}" if body else tail

    def __repr__(self) -> str:
        return f"QSeries({self})"


def _coerce(x) -> QSeries:
    if isinstance(x, QSeries):
        return x
    if isinstance(x, int):
        return QSeries.make(0, (x,), None)
    if isinstance(x, QMonomial):
        return x.to_series()
    raise TypeError(f"cannot combine QSeries with {type(x).__name__}")


def _render_power(e: int) -> str:
    if e % 4 == 0:
        k = e // 4
        return "1" if k == 0 else ("q" if k == 1 else f"q^{k}")
    f = Fraction(e, 4)
    return f"q^({f.numerator}/{f.denominator})"


def _render_terms(terms) -> str:
    out = []
    for e, c in terms:
        p = _render_power(e)
        mag = abs(c)
        if p == "1":
            t = str(mag)
        elif mag == 1:
            t = p
        else:
            t = f"{mag}*{p}"
        if not out:
            out.append(t if c > 0 else f"-{t}")
        else:
            out.append(f"+ {t}" if c > 0 else f"- {t}")
    return " ".join(out)


# ---------------------------------------------------------------- operations
def qs_add(a: QSeries, b: QSeries) -> QSeries:
    if a.trunc is None:
        t = b.trunc
    elif b.trunc is None:
        t = a.trunc
    else:
        t = min(a.trunc, b.trunc)
    parts = [s for s in (a, b) if s.coeffs]
    if not parts:
        return QSeries.zero(t)
    lo = min(s.min_exp for s in parts)
    hi = max(s.min_exp + len(s.coeffs) for s in parts)
    if t is not None:
        hi = min(hi, t)
    if hi <= lo:
        return QSeries.zero(t)
    c = [0] * (hi - lo)
    for s in parts:
        off = s.min_exp - lo
        for i, v in enumerate(s.coeffs[: max(0, hi - s.min_exp)]):
            c[off + i] += v
    return QSeries.make(lo, c, t)


def _residue_parts(s: QSeries):
    parts = []
    for j in range(4):
        sub = list(s.coeffs[j::4])
        while sub and sub[-1] == 0:
            sub.pop()
        if sub:
            parts.append((s.min_exp + j, sub))
    return parts


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product with pessimistic truncation bookkeeping."""
    if (a.is_zero and a.trunc is None) or (b.is_zero and b.trunc is None):
        return QSeries.zero(None)
    cands = []
    if a.trunc is not None:
        cands.append(a.trunc + b.min_exp)
    if b.trunc is not None:
        cands.append(b.trunc + a.min_exp)
    t = min(cands) if cands else None
    if a.is_zero or b.is_zero:
        return QSeries.zero(t)
    acc: dict[int, int] = {}
    for ba, la in _residue_parts(a):
        for bb, lb in _residue_parts(b):
            base = ba + bb
            if t is None:
                n = len(la) + len(lb) - 1
            else:
                n = min(len(la) + len(lb) - 1, max(0, -(-(t - base) // 4)))
            if n <= 0:
                continue
            prod = kernels.convolve(la, lb, n)
            for i, v in enumerate(prod):
                if v:
                    e = base + 4 * i
                    acc[e] = acc.get(e, 0) + v
    return QSeries.from_dict(acc, t)


def qs_inverse_unit(a: QSeries, trunc: int | None = None) -> QSeries:
    """Inverse of a series whose lowest coefficient is +-1.

    The result is known up to ``a.trunc - 2*a.min_exp`` (or up to ``trunc``
    when ``a`` is exact; monomials invert exactly).
    """
    if a.is_zero:
        raise ZeroSeries("cannot invert the zero series")
    lead = a.coeffs[0]
    if lead not in (1, -1):
        raise NonUnitLeadingCoefficient(f"lowest coefficient {lead} is not a unit")
    m = a.min_exp
    if a.trunc is None and a.max_exp == m:
        return QSeries.monomial(-m, lead)
    if a.trunc is not None:
        t_rel = a.trunc - m
        if trunc is not None:
            t_rel = min(t_rel, trunc + m)
    else:
        if trunc is None:
            raise ValueError("inverse of a non-monomial polynomial needs a truncation")
        t_rel = trunc + m
    # u = a / (lead q^m) has constant term 1; invert on each quarter offset.
    u = [lead * c for c in a.coeffs[:t_rel]] + [0] * max(0, t_rel - len(a.coeffs))
    inv = [0] * t_rel
    inv[0] = 1
    for k in range(1, t_rel):
        s = 0
        for j in range(1, k + 1):
            if u[j]:
                s -= u[j] * inv[k - j]
        inv[k] = s
    res = QSeries.make(0, inv, t_rel)
    return res.shift(-m).scale(lead)


def pochhammer(a_exp_q: int, n, N: int | None = None) -> QSeries:
    """``(q^(a/4); q)_n = prod_{k<n} (1 - q^(a/4 + k))``, truncated at ``N`` quarters.

    ``n`` may be :data:`INF`; then ``a_exp_q`` must be positive and ``N`` given.
    """
    if n == INF:
        if a_exp_q <= 0:
            raise DivergentProduct("(x;q)_inf needs x = q^a with a > 0")
        if N is None:
            raise ValueError("infinite product needs a truncation")
        n_fac = max(0, -(-(N - a_exp_q) // 4))
    else:
        n_fac = int(n)
        if n_fac < 0:
            raise OutOfRange("negative Pochhammer length")
    if a_exp_q > 0 and a_exp_q % 4 == 0 and N is not None:
        # whole-power fast path on an integer list
        order = -(-N // 4)
        c = [0] * order
        if order:
            c[0] = 1
        for k in range(n_fac):
            e = a_exp_q // 4 + k
            if e >= order:
                break
            kernels.mul_one_minus_qk(c, e, order)
        return QSeries.from_int_coeffs(c).truncate(N)
    res = QSeries.one(None)
    for k in range(n_fac):
        res = res * QSeries.from_dict({0: 1, a_exp_q + 4 * k: -1})
        if N is not None:
            res = res.truncate(N)
    return res if N is None else res.truncate(N)


@lru_cache(maxsize=None)
def _qbinom_tuple(a: int, b: int) -> tuple:
    if b == 0 or b == a:
        return (1,)
    # binom(a,b) = binom(a-1,b-1) + q^b binom(a-1,b)
    x = _qbinom_tuple(a - 1, b - 1)
    y = _qbinom_tuple(a - 1, b)
    out = [0] * (b * (a - b) + 1)
    for i, v in enumerate(x):
        out[i] += v
    for i, v in enumerate(y):
        out[b + i] += v
    return tuple(out)


def qbinom(a: int, b: int) -> QSeries:
    """Gaussian binomial ``(q;q)_a / ((q;q)_b (q;q)_{a-b})`` as an exact polynomial."""
    if a < 0 or b < 0 or b > a:
        raise OutOfRange(f"binom({a},{b})_q needs 0 <= b <= a")
    return QSeries.from_int_coeffs(_qbinom_tuple(a, b))


def qbinom_list(a: int, b: int) -> tuple:
    """Coefficient tuple of the Gaussian binomial (whole powers)."""
    if a < 0 or b < 0 or b > a:
        raise OutOfRange(f"binom({a},{b})_q needs 0 <= b <= a")
    return _qbinom_tuple(a, b)


def euler_expand_pochhammer_inf(sign: int, N: int, terms: int | None = None) -> list[QSeries]:
    """x-coefficients of ``(x;q)_inf`` (``sign=+1``) or ``1/(x;q)_inf`` (``sign=-1``).

    Coefficient ``j`` is ``(-1)^j q^(j(j-1)/2)/(q)_j`` resp. ``1/(q)_j``,
    each truncated at ``N`` quarter units; ``terms`` x-powers are returned
    (default: enough to reach ``q^(N/4)`` for the first expansion, ``N//4+1``
    for the second).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    order = -(-N // 4)
    if terms is None:
        terms = order + 1
    out = []
    for j in range(terms):
        inv = inv_qfactorial_list(j, order)
        if sign == 1:
            sh = j * (j - 1) // 2
            c = [0] * order
            for i in range(order - sh):
                c[sh + i] = inv[i] if j % 2 == 0 else -inv[i]
            out.append(QSeries.from_int_coeffs(c).truncate(N))
        else:
            out.append(QSeries.from_int_coeffs(list(inv)).truncate(N))
    return out


def divide_by_lowest(a: QSeries) -> tuple[QMonomial, QSeries]:
    """Split ``a = m * u`` with ``m`` the lowest monomial and ``u`` in ``1 + ...``."""
    if a.is_zero:
        raise ZeroSeries("zero series has no lowest monomial")
    lead = a.coeffs[0]
    if lead not in (1, -1):
        raise NonUnitLeadingCoefficient(f"lowest coefficient {lead} is not +-1")
    m = QMonomial(lead, a.min_exp)
    return m, a.shift(-a.min_exp).scale(lead)


# ------------------------------------------- whole-power list helpers (cached)
@lru_cache(maxsize=256)
def qpoch_inf_list(order: int) -> tuple:
    """Coefficients of ``(q;q)_inf`` below ``q^order``."""
    c = [0] * order
    if order:
        c[0] = 1
    for k in range(1, order):
        kernels.mul_one_minus_qk(c, k, order)
    return tuple(c)


@lru_cache(maxsize=None)
def _inv_qfact_table(order: int) -> tuple:
    rows = []
    c = [0] * order
    if order:
        c[0] = 1
    rows.append(tuple(c))
    for k in range(1, order + 1):
        kernels.div_one_minus_qk(c, k, order)
        rows.append(tuple(c))
    return tuple(rows)


def inv_qfactorial_list(k: int, order: int) -> tuple:
    """Coefficients of ``1/(q;q)_k`` below ``q^order`` (k may exceed order)."""
    table = _inv_qfact_table(order)
    return table[min(k, order)]


def qfactorial_list(k: int) -> tuple:
    """Exact coefficients of ``(q;q)_k``."""
    return _qfact_tuple(k)


@lru_cache(maxsize=None)
def _qfact_tuple(k: int) -> tuple:
    if k == 0:
        return (1,)
    prev = _qfact_tuple(k - 1)
    out = list(prev) + [0] * k
    for i in range(len(prev)):
        out[i + k] -= prev[i]
    return tuple(out)


def int_series_mul(a: Sequence[int], b: Sequence[int], order: int) -> list[int]:
    return kernels.convolve(list(a), list(b), order)


def int_series_pow(a: Sequence[int], k: int, order: int) -> list[int]:
    result = [0] * order
    if order:
        result[0] = 1
    base = list(a[:order])
    while k:
        if k & 1:
            result = kernels.convolve(result, base, order)
        k >>= 1
        if k:
            base = kernels.convolve(base, base, order)
    return result


def int_series_inverse(a: Sequence[int], order: int) -> list[int]:
    """Inverse of a whole-power series with ``a[0] = +-1``."""
    if not a or a[0] not in (1, -1):
        raise NonUnitLeadingCoefficient("constant term must be +-1")
    s = qs_inverse_unit(QSeries.from_int_coeffs(list(a), order))
    return s.int_coeffs(order)
