"""Multivariate polynomials and rational functions over Q(i, sqrt2).

Polynomials are flint ``fmpq_mpoly`` objects in one fixed context.  The
field generators i and sqrt2 appear as two extra variables ``I`` and ``S``
and products are reduced modulo I^2 + 1 and S^2 - 2, which gives a
canonical representative.  Denominators are kept free of I and S.
"""
from __future__ import annotations

import re
from fractions import Fraction

import flint

from .scalars import FieldElem

__all__ = [
    "VARS", "CTX", "gen", "const", "red", "is_alg", "MultiPoly", "RatFunc",
    "rf", "rf_arith", "rf_eq", "rf_subst_affine", "rf_expand_at_infinity",
    "parse_rf", "ParseError", "U", "V", "KAPPA", "point",
]

VARS = ("u", "v", "k", "a1", "a2", "a3", "a4", "a5", "a6")
_ALL = VARS + ("I", "S")
CTX = flint.fmpq_mpoly_ctx.get(_ALL, "degrevlex")
_GENS = CTX.gens()
_IDX = {n: j for j, n in enumerate(_ALL)}
_II = _IDX["I"]
_IS = _IDX["S"]
_I = _GENS[_II]
_S = _GENS[_IS]
_I2 = _I * _I + 1
_S2 = _S * _S - 2
ZERO = CTX.from_dict({})
ONE = CTX.constant(1)


def gen(name: str):
    """Raw flint generator for a variable name."""
    return _GENS[_IDX[name]]


def const(c):
    if isinstance(c, FieldElem):
        p = CTX.constant(flint.fmpq(c.c1.numerator, c.c1.denominator))
        if c.ci:
            p += _I * flint.fmpq(c.ci.numerator, c.ci.denominator)
        if c.cs:
            p += _S * flint.fmpq(c.cs.numerator, c.cs.denominator)
        if c.cis:
            p += _I * _S * flint.fmpq(c.cis.numerator, c.cis.denominator)
        return p
    if isinstance(c, Fraction):
        return CTX.constant(flint.fmpq(c.numerator, c.denominator))
    return CTX.constant(c)


def is_alg(p) -> bool:
    d = p.degrees()
    return bool(d[_II] or d[_IS])


def red(p):
    """Reduce modulo I^2+1, S^2-2."""
    d = p.degrees()
    if d[_II] > 1:
        p = divmod(p, _I2)[1]
    if d[_IS] > 1:
        p = divmod(p, _S2)[1]
    return p


def _subs_all(p, images):
    return p.compose(*images)


_CI = list(_GENS)
_CI[_II] = -_I
_CS = list(_GENS)
_CS[_IS] = -_S


def conj_i(p):
    return p.compose(*_CI) if p.degrees()[_II] else p


def conj_s(p):
    return p.compose(*_CS) if p.degrees()[_IS] else p


def norm_factor(p):
    """c with p*c free of I and S (after reduction)."""
    c = ONE
    if p.degrees()[_IS]:
        c = conj_s(p)
        p = red(p * c)
    if p.degrees()[_II]:
        ci = conj_i(p)
        c = red(c * ci)
    return c


def rationalize(n, d):
    if is_alg(d):
        c = norm_factor(d)
        n = red(n * c)
        d = red(d * c)
    return n, d


def exact_div(n, d):
    """n / d in Q(i,sqrt2)[x] when d divides n exactly."""
    if is_alg(d):
        c = norm_factor(d)
        n = red(n * c)
        d = red(d * c)
    try:
        return n / d
    except Exception as e:  # flint raises DomainError on inexact division
        raise ArithmeticError("inexact division") from e


def _fq(c) -> flint.fmpq:
    return flint.fmpq(int(c.p), int(c.q)) if isinstance(c, flint.fmpq) else c


def poly_to_field_terms(p, nvars=len(VARS)):
    """exponent vector over VARS -> FieldElem."""
    out = {}
    slot = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}
    for mon, c in p.to_dict().items():
        key = mon[:nvars]
        k = slot[(mon[_II], mon[_IS])]
        cf = out.get(key)
        co = [Fraction(0)] * 4 if cf is None else list(cf.coords())
        co[k] += Fraction(int(c.p), int(c.q))
        out[key] = FieldElem(*co)
    return {k: v for k, v in out.items() if v}


class MultiPoly:
    """Polynomial view: ``terms`` maps exponent vectors over VARS to FieldElem."""

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is None:
            p = ZERO
        elif not isinstance(p, flint.fmpq_mpoly):
            p = const(p)
        self.p = red(p)

    @classmethod
    def from_terms(cls, terms):
        acc = ZERO
        for exp, c in terms.items():
            if len(exp) != len(VARS):
                raise ValueError("exponent vector length %d != %d" % (len(exp), len(VARS)))
            full = tuple(exp) + (0, 0)
            acc = acc + const(c) * CTX.from_dict({full: 1})
        return cls(acc)

    @property
    def terms(self):
        return poly_to_field_terms(self.p)

    def __add__(self, o):
        return MultiPoly(self.p + _pp(o))

    __radd__ = __add__

    def __sub__(self, o):
        return MultiPoly(self.p - _pp(o))

    def __rsub__(self, o):
        return MultiPoly(_pp(o) - self.p)

    def __neg__(self):
        return MultiPoly(-self.p)

    def __mul__(self, o):
        return MultiPoly(red(self.p * _pp(o)))

    __rmul__ = __mul__

    def __eq__(self, o):
        try:
            return self.p == _pp(o)
        except TypeError:
            return NotImplemented

    def __bool__(self):
        return not self.p.is_zero()

    def __repr__(self):
        return "MultiPoly(%s)" % _pstr(self.p)


def _pp(o):
    if isinstance(o, MultiPoly):
        return o.p
    if isinstance(o, flint.fmpq_mpoly):
        return o
    return const(o)


def _pstr(p) -> str:
    s = str(p)
    return s.replace("I", "i").replace("S", "r2")


class RatFunc:
    """num/den with den free of i and sqrt2; den normalized to leading coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num=None, den=None, reduce=True):
        if num is None:
            num = ZERO
        elif not isinstance(num, flint.fmpq_mpoly):
            num = const(num)
        if den is None:
            den = ONE
        elif not isinstance(den, flint.fmpq_mpoly):
            den = const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num = red(num)
        num, den = rationalize(num, red(den))
        if num.is_zero():
            den = ONE
        elif reduce and not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num, den):
        x = object.__new__(cls)
        x.num = num
        x.den = den
        return x

    # -- arithmetic
    def __add__(self, o):
        o = _co(o)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, o):
        o = _co(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return rf(o) - self

    def __mul__(self, o):
        o = _co(o)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self):
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, o):
        o = _co(o)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, o):
        return rf(o) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def __eq__(self, o):
        try:
            o = rf(o)
        except TypeError:
            return NotImplemented
        return red(self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("RatFunc is not hashable")

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def is_const(self):
        return self.num.is_constant() and self.den.is_constant()

    def to_field(self) -> FieldElem:
        if not self.is_const():
            raise ValueError("not a constant: %s" % self)
        t = poly_to_field_terms(self.num)
        c = t.get((0,) * len(VARS), FieldElem(0))
        d = self.den.leading_coefficient()
        return c / FieldElem(Fraction(int(d.p), int(d.q)))

    def vars(self):
        """Variable names actually occurring."""
        dn = self.num.degrees()
        dd = self.den.degrees()
        return [n for j, n in enumerate(VARS) if dn[j] or dd[j]]

    def subs(self, mapping):
        """Substitute var -> RatFunc (or scalar) for each item of mapping."""
        return subs_rf(self, mapping)

    def __repr__(self):
        return "RatFunc(%s)" % self.render()

    def __str__(self):
        return self.render()

    def render(self) -> str:
        n = _pstr(self.num)
        if self.den.is_one():
            return n
        return "(%s)/(%s)" % (n, _pstr(self.den))

    @property
    def numer(self):
        return MultiPoly(self.num)

    @property
    def denom(self):
        return MultiPoly(self.den)


def _co(x):
    try:
        return rf(x)
    except TypeError:
        return None


def rf(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction, FieldElem, flint.fmpq_mpoly)):
        return RatFunc(x)
    if isinstance(x, MultiPoly):
        return RatFunc(x.p)
    if isinstance(x, str):
        return parse_rf(x)
    raise TypeError("cannot coerce %r to RatFunc" % (x,))


U = RatFunc(gen("u"))
V = RatFunc(gen("v"))
KAPPA = RatFunc(gen("k"))


def point(j: int) -> RatFunc:
    return RatFunc(gen("a%d" % j))


def rf_arith(x, y, op: str) -> RatFunc:
    x, y = rf(x), rf(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError("unknown op %r" % op)


def rf_eq(x, y) -> bool:
    return rf(x) == rf(y)


def images_for(mapping):
    """Generator images (num polys, common den) for a substitution var -> RatFunc."""
    imgs = list(_GENS)
    dens = {}
    for name, val in mapping.items():
        val = rf(val)
        dens[_IDX[name]] = val
    return imgs, dens


def subs_rf(x: RatFunc, mapping) -> RatFunc:
    x = rf(x)
    if not mapping:
        return x
    mapping = {k: rf(v) for k, v in mapping.items()}
    if all(v.den.is_one() for v in mapping.values()):
        imgs = list(_GENS)
        for name, val in mapping.items():
            imgs[_IDX[name]] = val.num
        return RatFunc(red(x.num.compose(*imgs)), red(x.den.compose(*imgs)))
    # general: homogenize per variable degree
    return _subs_general(x.num, mapping) / _subs_general(x.den, mapping)


def _subs_general(p, mapping) -> RatFunc:
    idx = {_IDX[k]: v for k, v in mapping.items()}
    acc = RatFunc(0)
    for mon, c in p.to_dict().items():
        rest = list(mon)
        t = RatFunc(c)
        for j, val in idx.items():
            e = rest[j]
            if e:
                t = t * val ** e
            rest[j] = 0
        acc = acc + t * RatFunc(CTX.from_dict({tuple(rest): 1}))
    return acc


def rf_subst_affine(x, var: str, alpha, beta=0) -> RatFunc:
    """var -> alpha*var + beta."""
    v = RatFunc(gen(var))
    return subs_rf(rf(x), {var: rf(alpha) * v + rf(beta)})


def _split_var(p, j):
    """p as {exponent of var j: coefficient poly (var j removed)}."""
    out = {}
    for mon, c in p.to_dict().items():
        e = mon[j]
        m = list(mon)
        m[j] = 0
        out.setdefault(e, {})[tuple(m)] = c
    return {e: CTX.from_dict(d) for e, d in out.items()}


def inv_series_of_poly(p, var: str, order: int):
    """Expansion of 1/p at var=inf: (m, [c_0..c_order]) with 1/p = var^-m * sum c_r var^-r."""
    j = _IDX[var]
    parts = _split_var(p, j)
    m = max(parts)
    d = [RatFunc(parts.get(m - r, ZERO)) for r in range(order + 1)]
    lead = d[0].inv()
    c = [lead]
    for r in range(1, order + 1):
        acc = RatFunc(0)
        for s in range(1, r + 1):
            if d[s]:
                acc = acc + d[s] * c[r - s]
        c.append(-acc * lead)
    return m, c


def poly_coeffs_in(p, var: str):
    j = _IDX[var]
    return {e: RatFunc(q) for e, q in _split_var(p, j).items()}


def rf_expand_at_infinity(x, var: str = "u", order: int = 6):
    """Coefficients c_0..c_order with x = sum c_r var^-r + O(var^-order-1).

    Coefficients are RatFunc in the remaining variables (constants when x
    only involves var)."""
    x = rf(x)
    if x.is_zero():
        return [RatFunc(0)] * (order + 1)
    m, dinv = inv_series_of_poly(x.den, var, order)
    nparts = poly_coeffs_in(x.num, var)
    n = max(nparts)
    if n > m:
        raise ValueError("pole at infinity in %s" % var)
    out = []
    for r in range(order + 1):
        acc = RatFunc(0)
        # term var^e * var^-m * c_s var^-s contributes to r = m - e + s
        for e, ce in nparts.items():
            s = r - (m - e)
            if 0 <= s <= order:
                acc = acc + ce * dinv[s]
        out.append(acc)
    return out


# ----------------------------------------------------------------- parsing

class ParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__("%s at offset %d" % (msg, pos))
        self.msg = msg
        self.pos = pos


_TOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")

_NAMED = {"i": FieldElem(0, 1), "r2": FieldElem(0, 0, 1)}


class _RFParser:
    def __init__(self, text, start=0, names=None, stop=None):
        self.text = text
        self.pos = start
        self.names = names
        self.stop = stop

    def peek(self):
        m = _TOK.match(self.text, self.pos)
        if not m or (self.stop is not None and m.start(m.lastindex) >= self.stop):
            return None, None, self.pos
        kind = ("num", "name", "op")[m.lastindex - 1]
        return kind, m.group(m.lastindex), m.start(m.lastindex)

    def take(self):
        m = _TOK.match(self.text, self.pos)
        self.pos = m.end()

    def expr(self):
        k, t, p = self.peek()
        neg = False
        if k == "op" and t in "+-":
            self.take()
            neg = t == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            k, t, p = self.peek()
            if k == "op" and t in ("+", "-"):
                self.take()
                rhs = self.term()
                acc = acc + rhs if t == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            k, t, p = self.peek()
            if k == "op" and t in ("*", "/"):
                self.take()
                rhs = self.power()
                if t == "*":
                    acc = acc * rhs
                else:
                    if rhs.is_zero():
                        raise ParseError("division by zero", p)
                    acc = acc / rhs
            elif k in ("num", "name") or (k == "op" and t == "("):
                # implicit multiplication like 2u
                rhs = self.power()
                acc = acc * rhs
            else:
                return acc

    def power(self):
        base = self.atom()
        k, t, p = self.peek()
        if k == "op" and t in ("^", "**"):
            self.take()
            k2, t2, p2 = self.peek()
            sign = 1
            if k2 == "op" and t2 == "-":
                self.take()
                sign = -1
                k2, t2, p2 = self.peek()
            if k2 != "num":
                raise ParseError("expected integer exponent", p2)
            self.take()
            return base ** (sign * int(t2))
        return base

    def atom(self):
        k, t, p = self.peek()
        if k == "num":
            self.take()
            return RatFunc(int(t))
        if k == "name":
            self.take()
            if t in _NAMED:
                return RatFunc(_NAMED[t])
            if t in _IDX and t not in ("I", "S"):
                return RatFunc(gen(t))
            if self.names and t in self.names:
                return rf(self.names[t])
            raise ParseError("unknown name %r" % t, p)
        if k == "op" and t == "(":
            self.take()
            e = self.expr()
            k, t, p = self.peek()
            if not (k == "op" and t == ")"):
                raise ParseError("expected ')'", p)
            self.take()
            return e
        if k == "op" and t == "-":
            self.take()
            return -self.power()
        raise ParseError("unexpected %s" % ("end of input" if k is None else repr(t)), p)


def parse_rf(text: str, names=None) -> RatFunc:
    p = _RFParser(text, 0, names)
    val = p.expr()
    k, t, pos = p.peek()
    if k is not None or text[p.pos:].strip():
        raise ParseError("trailing input", p.pos if k is None else pos)
    return val
