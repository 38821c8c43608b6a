"""Truncated series in u^-1 with coefficients in an exact ring.

Coefficients are RatFunc (scalars) or MatRF (operators).  Index r holds
the coefficient of u^-r.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .polyrat import (RatFunc, inv_series_of_poly, poly_coeffs_in, rf,
                      rf_expand_at_infinity, ZERO, red)
from .tensorops import MatRF, mat_inverse

__all__ = ["TruncSeries", "ser_mul_inv", "ser_shift", "ser_even_sqrt",
           "ser_solve_twisted_normalizer", "expand_matrf"]


def _zero_like(x):
    if isinstance(x, MatRF):
        return MatRF.zero(x.legs)
    return RatFunc(0)


def _one_like(x):
    if isinstance(x, MatRF):
        return MatRF.identity(x.legs)
    return RatFunc(1)


def _is_zero(x):
    return x.is_zero()


def _eq(a, b):
    if isinstance(a, MatRF) or isinstance(b, MatRF):
        if not isinstance(a, MatRF):
            a, b = b, a
        return a.diff_witness(b) is None
    return a == b


def _coerce(x):
    return x if isinstance(x, MatRF) else rf(x)


class TruncSeries:
    __slots__ = ("c", "var")

    def __init__(self, coeffs, var="u"):
        self.c = [_coerce(x) for x in coeffs]
        if not self.c:
            raise ValueError("empty series")
        self.var = var

    @property
    def order(self):
        return len(self.c) - 1

    @classmethod
    def from_rf(cls, x, order, var="u"):
        return cls(rf_expand_at_infinity(x, var, order), var)

    @classmethod
    def const(cls, x, order, var="u"):
        x = _coerce(x)
        return cls([x] + [_zero_like(x)] * order, var)

    def __getitem__(self, r):
        return self.c[r]

    def __len__(self):
        return len(self.c)

    def truncate(self, order):
        return TruncSeries(self.c[:order + 1], self.var)

    def _other(self, o):
        if isinstance(o, TruncSeries):
            return o
        return TruncSeries.const(o, self.order, self.var)

    def __add__(self, o):
        o = self._other(o)
        n = min(self.order, o.order)
        return TruncSeries([self.c[r] + o.c[r] for r in range(n + 1)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-x for x in self.c], self.var)

    def __sub__(self, o):
        return self + (-self._other(o))

    def __rsub__(self, o):
        return self._other(o) - self

    def __mul__(self, o):
        if not isinstance(o, TruncSeries):
            o = _coerce(o)
            if isinstance(o, RatFunc) and not o.is_const():
                # scalar coefficient in the remaining variables
                return TruncSeries([x * o if isinstance(x, RatFunc) else x.scale(o) for x in self.c], self.var)
            return TruncSeries([_mul(x, o) for x in self.c], self.var)
        n = min(self.order, o.order)
        out = []
        for r in range(n + 1):
            acc = None
            for s in range(r + 1):
                a, b = self.c[s], o.c[r - s]
                if _is_zero(a) or _is_zero(b):
                    continue
                t = _mul(a, b)
                acc = t if acc is None else acc + t
            out.append(acc if acc is not None else _zero_like(_mul(self.c[0], o.c[0])))
        return TruncSeries(out, self.var)

    def __rmul__(self, o):
        o = _coerce(o)
        return TruncSeries([_mul(o, x) for x in self.c], self.var)

    def inv(self):
        a0 = self.c[0]
        if isinstance(a0, MatRF):
            b0 = mat_inverse(a0)
        else:
            if a0.is_zero():
                raise ZeroDivisionError("non-invertible constant term")
            b0 = a0.inv()
        b = [b0]
        for r in range(1, self.order + 1):
            acc = None
            for s in range(1, r + 1):
                if _is_zero(self.c[s]) or _is_zero(b[r - s]):
                    continue
                t = _mul(self.c[s], b[r - s])
                acc = t if acc is None else acc + t
            if acc is None:
                b.append(_zero_like(b0))
            else:
                b.append(-_mul(b0, acc))
        return TruncSeries(b, self.var)

    def shift(self, s):
        return ser_shift(self, s)

    def scale_arg(self, alpha):
        """a(alpha*u): coefficient r gets alpha^-r."""
        alpha = Fraction(alpha)
        return TruncSeries([_mul(x, rf(alpha ** -r)) for r, x in enumerate(self.c)], self.var)

    def neg_arg(self):
        return self.scale_arg(-1)

    def equals(self, o, order=None):
        o = self._other(o)
        n = min(self.order, o.order) if order is None else order
        for r in range(n + 1):
            if not _eq(self.c[r], o.c[r]):
                return False
        return True

    def first_diff(self, o):
        o = self._other(o)
        for r in range(min(self.order, o.order) + 1):
            if not _eq(self.c[r], o.c[r]):
                return r
        return None

    def __eq__(self, o):
        return self.equals(o)

    __hash__ = None

    def is_even(self):
        return all(_is_zero(self.c[r]) for r in range(1, self.order + 1, 2))

    def __repr__(self):
        return "TruncSeries(%s)" % ", ".join(str(x) if not isinstance(x, MatRF) else repr(x) for x in self.c)


def _mul(a, b):
    if isinstance(a, MatRF):
        return a * b if isinstance(b, MatRF) else a.scale(b)
    if isinstance(b, MatRF):
        return b.scale(a)
    return a * b


def ser_mul_inv(a, b=None, mode="mul"):
    if mode == "mul":
        return a * b
    if mode == "inv":
        return a.inv()
    raise ValueError("mode must be mul or inv")


def ser_shift(a: TruncSeries, s) -> TruncSeries:
    """a(u + s) by binomial expansion of (u+s)^-r."""
    s = rf(s)
    D = a.order
    out = [None] * (D + 1)
    for r, c in enumerate(a.c):
        if _is_zero(c):
            continue
        for k in range(0, D - r + 1):
            if r == 0 and k > 0:
                break
            coef = rf((-1) ** k * comb(r + k - 1, k)) * s ** k if r else rf(1)
            if coef.is_zero():
                continue
            t = _mul(c, coef)
            j = r + k
            out[j] = t if out[j] is None else out[j] + t
    z = _zero_like(a.c[0])
    return TruncSeries([x if x is not None else z for x in out], a.var)


def ser_even_sqrt(w: TruncSeries) -> TruncSeries:
    if isinstance(w.c[0], MatRF):
        raise ValueError("even square root needs commuting scalar coefficients")
    if not w.c[0] == 1:
        raise ValueError("constant term must be 1")
    if not w.is_even():
        raise ValueError("series is not even")
    h = [rf(1)]
    for r in range(1, w.order + 1):
        acc = w.c[r]
        for s in range(1, r):
            acc = acc - h[s] * h[r - s]
        h.append(acc / 2)
    return TruncSeries(h, w.var)


def ser_solve_twisted_normalizer(zeta: TruncSeries, kappa) -> TruncSeries:
    """g with g0 = 1 and g(u) g(u+κ) ζ(u) = 1 to the order of ζ."""
    if isinstance(zeta.c[0], MatRF):
        raise ValueError("normalizer needs scalar coefficients")
    if not zeta.c[0] == 1:
        raise ValueError("constant term must be 1")
    D = zeta.order
    g = [rf(1)] + [rf(0)] * D
    for r in range(1, D + 1):
        G = TruncSeries(g[: r + 1] + [rf(0)] * (D - r))
        prod = (G * ser_shift(G, kappa) * zeta).truncate(r)
        g[r] = -prod.c[r] / 2
    return TruncSeries(g, zeta.var)


def expand_matrf(m: MatRF, order: int, var="u") -> TruncSeries:
    """Operator series of m(u) at u = ∞ (coefficients are MatRF in the other variables)."""
    mden, dinv = inv_series_of_poly(m.den, var, order)
    # numerator entries split by powers of var
    parts = {}
    maxdeg = 0
    for i, r in m.rows.items():
        for j, p in r.items():
            for e, c in poly_coeffs_in(p, var).items():
                parts.setdefault(e, {})[(i, j)] = c
                maxdeg = max(maxdeg, e)
    if maxdeg > mden:
        raise ValueError("pole at infinity")
    coeffs = []
    for r in range(order + 1):
        ents = {}
        for e, block in parts.items():
            s = r - (mden - e)
            if 0 <= s <= order and not dinv[s].is_zero():
                for k, c in block.items():
                    t = c * dinv[s]
                    x = ents.get(k)
                    ents[k] = t if x is None else x + t
        coeffs.append(MatRF.from_entries(m.legs, ents))
    return TruncSeries(coeffs, var)
