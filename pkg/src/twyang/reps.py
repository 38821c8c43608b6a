"""Evaluation representations and their tensor products.

A TMat is a function of the spectral argument returning a product of
site factors; each factor acts on the auxiliary leg and its own quantum
legs, so factors of different sites touch disjoint quantum legs.
"""
from __future__ import annotations

from fractions import Fraction

from .polyrat import U, V, RatFunc, point as sym_point, rf
from .report import Report
from .rkmat import Algebra
from .series import TruncSeries, expand_matrf, ser_solve_twisted_normalizer
from .tensorops import (Chain, MatRF, chain_equal, chain_scalar, kron_embed,
                        mat_inverse, partial_transpose, ORTH, SYMP)

__all__ = ["TMat", "from_dense", "evaluation_rep", "tensor_rep", "trivial_rep", "check_rtt",
           "normalize_special", "aux_block", "from_blocks", "Y2", "SP2",
           "SO3", "SO4", "make_points", "rep_for", "NormalizedT", "ScaledOp",
           "qdet2", "qdet2_col", "z_series_scalar"]

Y2 = Algebra("a", 2)
SP2 = Algebra("b", 2, SYMP)
SO3 = Algebra("b", 3, ORTH)
SO4 = Algebra("b", 4, ORTH)

RATIONAL_POINTS = (3, 5, 7, 11, 13, 17, 19, 23)


def make_points(n, mode="symbolic", start=1, seed=None):
    if mode == "symbolic":
        if start + n - 1 > 6:
            raise ValueError("at most 6 symbolic points")
        return [sym_point(start + k) for k in range(n)]
    if mode == "rational":
        if seed is not None:
            import random
            rnd = random.Random(seed)
            return [rf(Fraction(rnd.randint(-97, 97), rnd.randint(1, 13))) for _ in range(n)]
        pts = RATIONAL_POINTS[start - 1:start - 1 + n]
        return [rf(p) for p in pts]
    raise ValueError("points mode must be symbolic or rational")


class TMat:
    """T(u) on C^N ⊗ W.

    ``make(arg)`` returns the site factors as (local MatRF, positions) pairs,
    positions counted in the leg list (N,)+qlegs; the ordered product of the
    embedded factors is T(arg)."""

    def __init__(self, algebra, qlegs, make, points=(), tag=None, disjoint=True):
        self.algebra = algebra
        self.N = algebra.N
        self.qlegs = tuple(qlegs)
        self._make = make
        self.points = list(points)
        self.tag = tag or algebra.name
        self.disjoint = disjoint
        self._cache = {}

    @property
    def legs(self):
        return (self.N,) + self.qlegs

    @property
    def W(self):
        d = 1
        for x in self.qlegs:
            d *= x
        return d

    def local(self, arg=U):
        key = ("l", rf(arg).render())
        if key not in self._cache:
            self._cache[key] = list(self._make(rf(arg)))
        return self._cache[key]

    def _embed(self, pairs):
        if not pairs:
            return [MatRF.identity(self.legs)]
        return [kron_embed(m, pos, self.legs) for m, pos in pairs]

    def factors(self, arg=U):
        key = ("f", rf(arg).render())
        if key not in self._cache:
            self._cache[key] = self._embed(self.local(arg))
        return self._cache[key]

    def chain(self, arg=U) -> Chain:
        return Chain(self.factors(arg))

    def value(self, arg=U) -> MatRF:
        key = ("v", rf(arg).render())
        if key not in self._cache:
            self._cache[key] = self.chain(arg).dense()
        return self._cache[key]

    def transposed(self, arg=U, sign=None) -> Chain:
        """T(arg)^t on the auxiliary leg."""
        sign = self.algebra.sign if sign is None else sign
        if self.disjoint:
            loc = [(partial_transpose(m, 0, sign), pos) for m, pos in reversed(self.local(arg))]
            return Chain(self._embed(loc))
        return Chain([partial_transpose(self.value(arg), 0, sign)])

    def inverse(self, arg=U) -> Chain:
        key = ("i", rf(arg).render())
        if key not in self._cache:
            loc = [(mat_inverse(m), pos) for m, pos in reversed(self.local(arg))]
            self._cache[key] = self._embed(loc)
        return Chain(self._cache[key])

    def embedded(self, arg, aux_pos, total, which="plain"):
        """T(arg) (or its transpose / inverse) with aux on ``aux_pos`` and quantum legs last."""
        nq = len(self.qlegs)
        q0 = len(total) - nq
        c = {"plain": self.chain, "t": self.transposed, "inv": self.inverse}[which](arg)
        return c.embed([aux_pos] + list(range(q0, q0 + nq)), total)

    def __repr__(self):
        return "TMat(%s, W=%s, points=%s)" % (self.tag, self.qlegs, [str(p) for p in self.points])


def from_dense(algebra, qlegs, fn, tag=None, points=()):
    """TMat whose value at ``arg`` is the single dense operator fn(arg)."""
    n = 1 + len(qlegs)
    return TMat(algebra, qlegs, lambda arg: [(fn(arg), list(range(n)))], points, tag, disjoint=False)


def trivial_rep(algebra) -> TMat:
    return TMat(algebra, (), lambda arg: [], tag=algebra.name + "-trivial")


def evaluation_rep(algebra, point) -> TMat:
    """T(u) = R(u - a) acting on C^N (aux) ⊗ C^N (quantum)."""
    if isinstance(algebra, str):
        algebra = Algebra.parse(algebra)
    a = rf(point) if not isinstance(point, str) else RatFunc(rf(point).num)
    N = algebra.N

    def make(arg):
        return [(algebra.R(arg - a), [0, 1])]

    return TMat(algebra, (N,), make, [a])


def tensor_rep(x: TMat, y: TMat) -> TMat:
    """Matrix coproduct: T(u) = T_x(u) T_y(u), quantum spaces tensored (x first)."""
    if x.algebra.kind != y.algebra.kind or x.N != y.N or x.algebra.sign != y.algebra.sign:
        raise ValueError("tag mismatch in tensor_rep")
    nx = len(x.qlegs)

    def shift(pos):
        return [0] + [p + nx for p in pos[1:]]

    def make(arg):
        return list(x.local(arg)) + [(m, shift(pos)) for m, pos in y.local(arg)]

    return TMat(x.algebra, x.qlegs + y.qlegs, make, x.points + y.points,
                tag=x.tag, disjoint=x.disjoint and y.disjoint)


def rep_for(algebra, n_sites, mode="symbolic", start=1, seed=None) -> TMat:
    if isinstance(algebra, str):
        algebra = Algebra.parse(algebra)
    pts = make_points(n_sites, mode, start, seed)
    t = evaluation_rep(algebra, pts[0])
    for p in pts[1:]:
        t = tensor_rep(t, evaluation_rep(algebra, p))
    return t


def check_rtt(t: TMat, R=None) -> Report:
    """R(u-v) T1(u) T2(v) = T2(v) T1(u) R(u-v)."""
    Rf = R or t.algebra.R
    N = t.N
    total = (N, N) + t.qlegs
    r = kron_embed(Rf(U - V), [0, 1], total)
    t1 = t.embedded(U, 0, total)
    t2 = t.embedded(V, 1, total)
    rep = Report("rtt")
    rep.check("%s:%d-site" % (t.tag, len(t.points)), chain_equal, Chain([r]) * t1 * t2, t2 * t1 * r)
    return rep


# ------------------------------------------------------------ blocks

def aux_block(m: MatRF, i: int, j: int, naux: int = 1) -> MatRF:
    """The End(W) entry (i, j) (flat aux indices) of an operator on aux ⊗ W."""
    adim = 1
    for d in m.legs[:naux]:
        adim *= d
    W = m.dim // adim
    rows = {}
    for r in range(i * W, (i + 1) * W):
        row = m.rows.get(r)
        if not row:
            continue
        out = {c - j * W: p for c, p in row.items() if j * W <= c < (j + 1) * W}
        if out:
            rows[r - i * W] = out
    return MatRF(m.legs[naux:] or (1,), rows, m.den)


def from_blocks(aux_legs, blocks) -> MatRF:
    """Inverse of aux_block: blocks[(i, j)] are MatRF on the quantum legs."""
    some = next(iter(blocks.values()))
    qlegs = some.legs if some.legs != (1,) else ()
    W = some.dim
    ents = {}
    for (i, j), b in blocks.items():
        for r, c, x in b.entries():
            ents[(i * W + r, j * W + c)] = x
    return MatRF.from_entries(tuple(aux_legs) + tuple(qlegs), ents)


def qdet2(t: TMat, arg=U):
    """qdet T(u) = t_{-1,-1}(u-1) t_{11}(u) - t_{-1,1}(u-1) t_{1,-1}(u) (operator on W).

    The shift is fixed by T(u/2) T(u/2+1)^t = qdet T(u/2+1)."""
    a = t.value(rf(arg) - 1)
    b = t.value(arg)
    return aux_block(a, 0, 0) * aux_block(b, 1, 1) - aux_block(a, 0, 1) * aux_block(b, 1, 0)


def qdet2_col(t: TMat, arg=U):
    """Column form: t_{-1,-1}(u) t_{11}(u-1) - t_{1,-1}(u) t_{-1,1}(u-1)."""
    a = t.value(arg)
    b = t.value(rf(arg) - 1)
    return aux_block(a, 0, 0) * aux_block(b, 1, 1) - aux_block(a, 1, 0) * aux_block(b, 0, 1)


def z_series_scalar(t: TMat, arg=U):
    """z(u) with T(u+κ)^t T(u) = z(u) I, as a RatFunc (or Witness)."""
    alg = t.algebra
    kap = alg.kappa
    prod = t.transposed(rf(arg) + kap) * t.chain(arg)
    return chain_scalar(prod)


class NormalizedT:
    """g(u)·T(u) with a scalar normalizing series g."""

    def __init__(self, t: TMat, g: TruncSeries, central):
        self.t = t
        self.g = g
        self.central = central

    @property
    def order(self):
        return self.g.order

    def series(self, arg_shift=0):
        """Operator series of g(u)T(u)."""
        return expand_matrf(self.t.value(U), self.order) * self.g


def normalize_special(t: TMat, order: int = 6) -> NormalizedT:
    """Normalize so the central series (qdet for Y(2), z(u) otherwise) is 1 to order D."""
    if t.algebra.kind == "a":
        if t.N != 2:
            raise ValueError("qdet normalization implemented for N=2")
        q = qdet2(t)
        from .tensorops import scalar_multiple_of
        lam = scalar_multiple_of(q, MatRF.identity(q.legs))
        if not isinstance(lam, RatFunc):
            raise ValueError("qdet is not scalar: %s" % lam)
        kap = -1
    else:
        lam = z_series_scalar(t)
        if not isinstance(lam, RatFunc):
            raise ValueError("z(u) is not scalar: %s" % lam)
        kap = t.algebra.kappa
    zeta = TruncSeries.from_rf(lam, order)
    g = ser_solve_twisted_normalizer(zeta, kap)
    return NormalizedT(t, g, lam)


class ScaledOp:
    """φ(u)·M with φ a scalar series and M an exact operator."""

    def __init__(self, phi: TruncSeries, m):
        self.phi = phi
        self.m = m

    def diff(self, other: "ScaledOp", note=""):
        """None if equal to the common order, else a description."""
        from .tensorops import scalar_multiple_of
        m1 = self.m.dense() if isinstance(self.m, Chain) else self.m
        m2 = other.m.dense() if isinstance(other.m, Chain) else other.m
        lam = scalar_multiple_of(m1, m2)
        if not isinstance(lam, RatFunc):
            return lam
        D = min(self.phi.order, other.phi.order)
        lhs = self.phi.truncate(D) * TruncSeries.from_rf(lam, D)
        r = lhs.first_diff(other.phi.truncate(D))
        if r is None:
            return None
        return "%sscalar series differ at u^-%d: %s vs %s" % (
            note + ": " if note else "", r, lhs[r], other.phi[r])
