"""Exact arithmetic in Q(i, sqrt2).

Elements are stored by their rational coordinates in the basis
1, i, r2, i*r2 where r2 = sqrt(2).
"""
from __future__ import annotations

import re
from fractions import Fraction

__all__ = ["FieldElem", "f_arith", "f_inv", "as_field"]

_Q = Fraction


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError("not a rational: %r" % (x,))


class FieldElem:
    __slots__ = ("c1", "ci", "cs", "cis")

    def __init__(self, c1=0, ci=0, cs=0, cis=0):
        self.c1 = _q(c1)
        self.ci = _q(ci)
        self.cs = _q(cs)
        self.cis = _q(cis)

    @classmethod
    def i(cls):
        return cls(0, 1)

    @classmethod
    def sqrt2(cls):
        return cls(0, 0, 1)

    def coords(self):
        return (self.c1, self.ci, self.cs, self.cis)

    def is_rational(self):
        return not (self.ci or self.cs or self.cis)

    def __bool__(self):
        return bool(self.c1 or self.ci or self.cs or self.cis)

    def __eq__(self, other):
        other = as_field(other, strict=False)
        if other is None:
            return NotImplemented
        return self.coords() == other.coords()

    def __hash__(self):
        if self.is_rational():
            return hash(self.c1)
        return hash(self.coords())

    def __add__(self, other):
        other = as_field(other, strict=False)
        if other is None:
            return NotImplemented
        return FieldElem(self.c1 + other.c1, self.ci + other.ci,
                         self.cs + other.cs, self.cis + other.cis)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.c1, -self.ci, -self.cs, -self.cis)

    def __sub__(self, other):
        other = as_field(other, strict=False)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = as_field(other, strict=False)
        if other is None:
            return NotImplemented
        a, b, c, d = self.coords()
        e, f, g, h = other.coords()
        # (a + bi + c s + d is)(e + fi + g s + h is), s^2 = 2, i^2 = -1
        return FieldElem(
            a * e - b * f + 2 * (c * g - d * h),
            a * f + b * e + 2 * (c * h + d * g),
            a * g + c * e - b * h - d * f,
            a * h + d * e + b * g + c * f,
        )

    __rmul__ = __mul__

    def conj_i(self):
        return FieldElem(self.c1, -self.ci, self.cs, -self.cis)

    def conj_s(self):
        return FieldElem(self.c1, self.ci, -self.cs, -self.cis)

    def inv(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        # x * conj_s(x) lies in Q(i); then multiply by the complex conjugate
        y = self * self.conj_s()
        n = y.c1 * y.c1 + y.ci * y.ci
        z = self.conj_s() * y.conj_i()
        return FieldElem(z.c1 / n, z.ci / n, z.cs / n, z.cis / n)

    def __truediv__(self, other):
        other = as_field(other, strict=False)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return as_field(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = FieldElem(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return "FieldElem(%s)" % self.render()

    def __str__(self):
        return self.render()

    def render(self) -> str:
        """Canonical text 'a + b*i + c*r2 + d*i*r2' (zero terms dropped)."""
        parts = []
        for c, tag in zip(self.coords(), ("", "i", "r2", "i*r2")):
            if not c:
                continue
            if not tag:
                parts.append(str(c))
            elif c == 1:
                parts.append(tag)
            elif c == -1:
                parts.append("-" + tag)
            else:
                parts.append("%s*%s" % (c, tag))
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    @classmethod
    def parse(cls, text: str) -> "FieldElem":
        return _parse_field(text)


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(\*?\s*(i\s*\*\s*r2|r2\s*\*\s*i|i|r2))?\s*")


def _parse_field(text: str) -> FieldElem:
    s = text.strip()
    if not s:
        raise ValueError("empty field element")
    pos = 0
    acc = [Fraction(0)] * 4
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError("bad field element %r at %d" % (text, pos))
        sign, num, _, unit = m.groups()
        if sign is None and not first:
            raise ValueError("missing operator in %r at %d" % (text, pos))
        if num is None and unit is None:
            raise ValueError("bad field element %r at %d" % (text, pos))
        c = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            c = -c
        if unit is None:
            k = 0
        else:
            u = unit.replace(" ", "")
            k = {"i": 1, "r2": 2, "i*r2": 3, "r2*i": 3}[u]
        acc[k] += c
        pos = m.end()
        first = False
    return FieldElem(*acc)


def as_field(x, strict=True):
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElem(x)
    if strict:
        raise TypeError("cannot coerce %r to FieldElem" % (x,))
    return None


def f_arith(x, y, op: str) -> FieldElem:
    x, y = as_field(x), as_field(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError("unknown op %r" % op)


def f_inv(x) -> FieldElem:
    return as_field(x).inv()
