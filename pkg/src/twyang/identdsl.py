"""A small language for tensor-operator identities.

    # comment
    R[1,2](u-v)*S[1](u)*R[1,2](u+v)*S[2](v) == S[2](v)*R[1,2](u+v)*S[1](u)*R[1,2](u-v);

Atoms name an operator, the legs it acts on (1-based) and an optional
rational argument in u, v.  Scalars go in braces.  Postfix ^-1, ^t+ and ^t-
invert or partially transpose; a transpose acts on the first leg of the
leftmost atom of its operand.  Every operator is embedded into the legs
1..L of the statement (L the largest leg index used), followed by the
quantum legs of the context for operators that carry them.
"""
from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from pathlib import Path

from .polyrat import ParseError, RatFunc, parse_rf, rf
from .report import Report
from .tensorops import (MatRF, ORTH, SYMP, kron_embed, mat_inverse, partial_transpose,
                        perm_and_q)

__all__ = ["DslSyntaxError", "DslEvalError", "Statement", "Sum", "Prod", "Scalar", "Atom",
           "Inverse", "Transpose", "parse", "parse_file", "render", "render_expr",
           "Binding", "Context", "evaluate", "evaluate_check", "suite_path", "SUITES"]


class DslSyntaxError(ValueError):
    def __init__(self, msg, line, col):
        super().__init__("%d:%d: %s" % (line, col, msg))
        self.msg = msg
        self.line = line
        self.col = col


class DslEvalError(ValueError):
    pass


# ------------------------------------------------------------ AST

@dataclass(frozen=True)
class Scalar:
    value: RatFunc
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Atom:
    name: str
    legs: tuple
    arg: RatFunc | None = None
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Inverse:
    x: object
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Transpose:
    x: object
    sign: str  # "+" or "-"
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Prod:
    factors: tuple
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Sum:
    terms: tuple  # ((+1 | -1, node), ...)
    pos: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Statement:
    lhs: object
    rhs: object
    label: str = field(default="", compare=False)
    pos: tuple = field(default=(0, 0), compare=False)


# ------------------------------------------------------------ parser

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9']*")
_INT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.i = 0
        self.comment = ""

    def where(self, i=None):
        i = self.i if i is None else i
        line = self.text.count("\n", 0, i) + 1
        col = i - (self.text.rfind("\n", 0, i) + 1) + 1
        return line, col

    def fail(self, msg, i=None):
        raise DslSyntaxError(msg, *self.where(i))

    def skip(self):
        t = self.text
        while self.i < len(t):
            c = t[self.i]
            if c == "\n":
                self.i += 1
                if self._blank_line_follows():
                    self.comment = ""
            elif c.isspace():
                self.i += 1
            elif c == "#":
                j = t.find("\n", self.i)
                j = len(t) if j < 0 else j
                self.comment = t[self.i + 1:j].strip()
                self.i = j
            else:
                return

    def _blank_line_follows(self):
        j = self.i
        while j < len(self.text) and self.text[j] in " \t\r":
            j += 1
        return j < len(self.text) and self.text[j] == "\n"

    def peek(self, s):
        self.skip()
        return self.text.startswith(s, self.i)

    def eat(self, s):
        if self.peek(s):
            self.i += len(s)
            return True
        return False

    def expect(self, s, what=None):
        if not self.eat(s):
            got = self.text[self.i:self.i + 1] or "end of input"
            self.fail("expected %s, got %r" % (what or repr(s), got))

    def _closing(self, open_, close):
        """Index of the bracket matching the one at self.i."""
        depth = 0
        for j in range(self.i, len(self.text)):
            c = self.text[j]
            if c == open_:
                depth += 1
            elif c == close:
                depth -= 1
                if depth == 0:
                    return j
            elif c in ";\n" and close == "}":
                break
        self.fail("unbalanced %r" % open_)

    def _rational(self, start, stop):
        src = self.text[start:stop]
        if not src.strip():
            self.fail("empty rational expression", start)
        try:
            return parse_rf(src)
        except ParseError as e:
            self.fail("bad rational expression: %s" % e.msg, start + e.pos)

    # grammar
    def statements(self):
        out = []
        while True:
            self.skip()
            if self.i >= len(self.text):
                return out
            label = self.comment
            pos = self.where()
            lhs = self.expr()
            self.expect("==")
            rhs = self.expr()
            self.expect(";", "';'")
            out.append(Statement(lhs, rhs, label, pos))
            self.comment = ""

    def expr(self):
        self.skip()
        pos = self.where()
        terms = []
        sign = 1
        if self.eat("-"):
            sign = -1
        elif self.eat("+"):
            pass
        terms.append((sign, self.term()))
        while True:
            if self.peek("=="):
                break
            if self.eat("+"):
                terms.append((1, self.term()))
            elif self.eat("-"):
                terms.append((-1, self.term()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms), pos)

    def term(self):
        self.skip()
        pos = self.where()
        fs = [self.factor()]
        while self.eat("*"):
            fs.append(self.factor())
        return fs[0] if len(fs) == 1 else Prod(tuple(fs), pos)

    def factor(self):
        self.skip()
        pos = self.where()
        t = self.text
        if self.peek("{"):
            j = self._closing("{", "}")
            val = self._rational(self.i + 1, j)
            self.i = j + 1
            node = Scalar(val, pos)
        elif self.peek("("):
            self.i += 1
            node = self.expr()
            self.expect(")", "')'")
        else:
            m = _NAME.match(t, self.i)
            if not m:
                self.fail("unexpected %r" % (t[self.i:self.i + 1] or "end of input"))
            self.i = m.end()
            node = self.atom(m.group(0), pos)
        while True:
            if self.eat("^-1"):
                node = Inverse(node, pos)
            elif self.eat("^t+"):
                node = Transpose(node, "+", pos)
            elif self.eat("^t-"):
                node = Transpose(node, "-", pos)
            elif self.peek("^"):
                self.fail("expected ^-1, ^t+ or ^t-")
            else:
                return node

    def atom(self, name, pos):
        self.expect("[", "'[' after operator name")
        legs = []
        if not self.eat("]"):
            while True:
                self.skip()
                m = _INT.match(self.text, self.i)
                if not m:
                    self.fail("malformed leg list")
                x = int(m.group(0))
                if x < 1:
                    self.fail("legs are numbered from 1")
                if x in legs:
                    self.fail("repeated leg %d" % x)
                legs.append(x)
                self.i = m.end()
                if self.eat("]"):
                    break
                if not self.eat(","):
                    self.fail("malformed leg list")
        arg = None
        if self.peek("("):
            j = self._closing("(", ")")
            arg = self._rational(self.i + 1, j)
            self.i = j + 1
        return Atom(name, tuple(legs), arg, pos)


def parse(text: str):
    """Statements of a source text; raises DslSyntaxError with line and column."""
    return _Parser(text).statements()


def parse_file(path):
    return parse(Path(path).read_text(encoding="utf-8"))


# ------------------------------------------------------------ rendering

def _needs_parens(node, ctx):
    if isinstance(node, Sum):
        return ctx in ("prod", "post")
    if isinstance(node, Prod):
        return ctx == "post"
    return False


def render_expr(node, ctx="top"):
    if isinstance(node, Scalar):
        return "{%s}" % node.value.render()
    if isinstance(node, Atom):
        s = "%s[%s]" % (node.name, ",".join(map(str, node.legs)))
        if node.arg is not None:
            s += "(%s)" % node.arg.render()
        return s
    if isinstance(node, (Inverse, Transpose)):
        inner = render_expr(node.x, "post")
        if _needs_parens(node.x, "post"):
            inner = "(%s)" % inner
        return inner + ("^-1" if isinstance(node, Inverse) else "^t" + node.sign)
    if isinstance(node, Prod):
        parts = []
        for f in node.factors:
            s = render_expr(f, "prod")
            parts.append("(%s)" % s if _needs_parens(f, "prod") else s)
        return "*".join(parts)
    if isinstance(node, Sum):
        out = ""
        for k, (sgn, t) in enumerate(node.terms):
            s = render_expr(t, "sum")
            if isinstance(t, Sum):
                s = "(%s)" % s
            if k == 0:
                out = s if sgn > 0 else "-" + s
            else:
                out += (" + " if sgn > 0 else " - ") + s
        return out
    raise TypeError("not an expression node: %r" % (node,))


def render(stmts) -> str:
    if isinstance(stmts, Statement):
        stmts = [stmts]
    lines = []
    for s in stmts:
        if s.label:
            lines.append("# " + s.label)
        lines.append("%s == %s;" % (render_expr(s.lhs), render_expr(s.rhs)))
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ evaluation

@dataclass
class Binding:
    """fn(arg) -> MatRF on the atom's legs (then the quantum legs if quantum)."""
    fn: object
    arity: int | None = None
    quantum: bool = False
    needs_arg: bool = True


@dataclass
class Context:
    N: int = 2
    sign: int = ORTH
    qlegs: tuple = ()
    bindings: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def bind(self, name, fn, arity=None, quantum=False, needs_arg=True):
        self.bindings[name] = Binding(fn, arity, quantum, needs_arg)
        return self

    @classmethod
    def standard(cls, N=2, sign=ORTH, **meta):
        """P, Q, I, and the R-matrices I - P/u (R) and I - P/u + Q/(u-κ) (Rb)."""
        from .rkmat import Algebra, r_gl
        P, Q = perm_and_q(N, sign)
        ctx = cls(N, sign, meta=dict(meta, N=N, theta=sign))
        ctx.bind("P", lambda a: P, 2, needs_arg=False)
        ctx.bind("Q", lambda a: Q, 2, needs_arg=False)
        ctx.bind("I", lambda a: None, None, needs_arg=False)
        ctx.bind("R", lambda a: r_gl(a, N), 2)
        alg = Algebra("b", N, sign) if (sign == ORTH or N % 2 == 0) else None
        if alg is not None:
            ctx.bind("Rb", lambda a: alg.R(a), 2)
        return ctx


def _legs_of(node):
    if isinstance(node, Atom):
        return set(node.legs)
    if isinstance(node, Scalar):
        return set()
    if isinstance(node, (Inverse, Transpose)):
        return _legs_of(node.x)
    items = node.factors if isinstance(node, Prod) else [t for _, t in node.terms]
    out = set()
    for x in items:
        out |= _legs_of(x)
    return out


def _uses_quantum(node, ctx):
    if isinstance(node, Atom):
        b = ctx.bindings.get(node.name)
        return bool(b and b.quantum)
    if isinstance(node, Scalar):
        return False
    if isinstance(node, (Inverse, Transpose)):
        return _uses_quantum(node.x, ctx)
    items = node.factors if isinstance(node, Prod) else [t for _, t in node.terms]
    return any(_uses_quantum(x, ctx) for x in items)


def _first_leg(node):
    if isinstance(node, Atom):
        return node.legs[0] if node.legs else None
    if isinstance(node, (Inverse, Transpose)):
        return _first_leg(node.x)
    if isinstance(node, Scalar):
        return None
    items = node.factors if isinstance(node, Prod) else [t for _, t in node.terms]
    for x in items:
        leg = _first_leg(x)
        if leg is not None:
            return leg
    return None


class _Eval:
    def __init__(self, ctx: Context, L: int, quantum: bool):
        self.ctx = ctx
        self.L = L
        self.legs = (ctx.N,) * L + (tuple(ctx.qlegs) if quantum else ())
        self.quantum = quantum

    def where(self, node):
        return "%d:%d" % node.pos

    def __call__(self, node):
        ctx = self.ctx
        if isinstance(node, Scalar):
            return MatRF.identity(self.legs).scale(node.value)
        if isinstance(node, Atom):
            b = ctx.bindings.get(node.name)
            if b is None:
                raise DslEvalError("%s: unbound name %r" % (self.where(node), node.name))
            if b.needs_arg and node.arg is None:
                raise DslEvalError("%s: %s needs an argument" % (self.where(node), node.name))
            if b.arity is not None and len(node.legs) != b.arity:
                raise DslEvalError("%s: %s acts on %d legs, got %d" % (
                    self.where(node), node.name, b.arity, len(node.legs)))
            m = b.fn(node.arg)
            if m is None:
                return MatRF.identity(self.legs)
            pos = [leg - 1 for leg in node.legs]
            if b.quantum:
                pos += list(range(self.L, self.L + len(ctx.qlegs)))
            want = tuple(self.legs[p] for p in pos)
            if m.legs != want:
                raise DslEvalError("%s: %s has legs %s, expected %s" % (
                    self.where(node), node.name, m.legs, want))
            return kron_embed(m, pos, self.legs)
        if isinstance(node, Inverse):
            m = mat_inverse(self(node.x))
            if m is None:
                raise DslEvalError("%s: singular operator" % self.where(node))
            return m
        if isinstance(node, Transpose):
            leg = _first_leg(node.x)
            if leg is None:
                return self(node.x)
            sign = ORTH if node.sign == "+" else SYMP
            return partial_transpose(self(node.x), leg - 1, sign)
        if isinstance(node, Prod):
            acc = None
            for f in node.factors:
                if isinstance(f, Scalar):
                    acc = MatRF.identity(self.legs).scale(f.value) if acc is None else acc.scale(f.value)
                    continue
                m = self(f)
                acc = m if acc is None else acc * m
            return acc
        if isinstance(node, Sum):
            acc = None
            for sgn, t in node.terms:
                m = self(t)
                if sgn < 0:
                    m = -m
                acc = m if acc is None else acc + m
            return acc
        raise TypeError("not an expression node: %r" % (node,))


def evaluate(stmt: Statement, ctx: Context):
    """(lhs, rhs) as MatRF on the statement's legs."""
    L = max(_legs_of(stmt.lhs) | _legs_of(stmt.rhs) | {0})
    q = _uses_quantum(stmt.lhs, ctx) or _uses_quantum(stmt.rhs, ctx)
    ev = _Eval(ctx, L, q)
    return ev(stmt.lhs), ev(stmt.rhs)


def evaluate_check(stmts, ctx: Context, name="dsl") -> Report:
    rep = Report(name)
    for k, s in enumerate(stmts):
        cid = s.label or "line %d" % s.pos[0]
        t0 = time.perf_counter()
        try:
            lhs, rhs = evaluate(s, ctx)
            res = lhs.diff_witness(rhs)
        except DslEvalError as e:
            res = "error: %s" % e
        rep.add(cid, res, (time.perf_counter() - t0) * 1000)
    return rep


# ------------------------------------------------------------ shipped suites

SUITES = ("projector_so3.idl", "fused_re.idl")


def suite_path(name) -> Path:
    return Path(__file__).with_name("suites") / name


def suite_context(path, q=1) -> Context:
    """Bindings used by the shipped suites.

    RV is R_V(u) lifted to four legs; B is the 1-site extended reflection
    operator (AIII type, (p, q) = (2-q, q)) with one quantum leg."""
    from .reps import rep_for, Y2
    from .rkmat import rv_lifted
    from .twistgen import build_s
    ctx = Context.standard(2, ORTH)
    ctx.bind("RV", rv_lifted, 4)
    t = rep_for(Y2, 1)
    B = build_s(t, "AIII:2,0" if q == 0 else "AIII:1,1")
    ctx.qlegs = t.qlegs
    ctx.bind("B", lambda a: B.value(a), 1, quantum=True)
    ctx.meta.update(pair=str(B.pair), sites=1)
    return ctx
