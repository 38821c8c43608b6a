"""S-matrices of twisted Yangians built on representations, and their relations."""
from __future__ import annotations

from fractions import Fraction

from .polyrat import U, V, RatFunc, rf
from .report import Report
from .reps import TMat, aux_block, qdet2, z_series_scalar
from .rkmat import PairType, p_gamma_theta, reflection_sides, r_matrix
from .tensorops import (Chain, MatRF, Witness, chain_equal, chain_scalar,
                        kron_embed, mat_inverse, partial_transpose, perm_and_q)

__all__ = ["SMat", "build_s", "s_from_dense", "check_reflection_eq", "check_symmetry",
           "symmetry_rhs", "z_w_qdet_sdet", "sdet2", "c_series_extract", "aux_trace"]


class SMat(TMat):
    """S(u) on C^N ⊗ W for a pair type.

    Stored like a TMat (local factors), but the factor list touches the same
    quantum legs twice, so transposes are taken on the dense value."""

    def __init__(self, pair: PairType, qlegs, make, source=None, branch="", tag=None, const=None):
        super().__init__(pair.algebra, qlegs, make, source.points if source else (),
                         tag or str(pair), disjoint=False)
        self.pair = pair
        self.source = source
        self.branch = branch
        self._const = const

    def transposed(self, arg=U, sign=None) -> Chain:
        sign = self.pair.sign if sign is None else sign
        return Chain([partial_transpose(self.value(arg), 0, sign)])

    @property
    def expected_const(self) -> MatRF:
        if self._const is not None:
            return self._const
        if self.pair.family in ("AI", "AII"):
            return MatRF.identity((self.N,))
        return self.pair.G

    def const_term(self) -> MatRF:
        """Value at u = ∞ (aux ⊗ W)."""
        from .series import expand_matrf
        return expand_matrf(self.value(U), 0)[0]

    def check_const(self):
        want = kron_embed(self.expected_const, [0], self.legs)
        return self.const_term().diff_witness(want, "constant term")


def build_s(t: TMat, pair, *, g_override=None, const=None) -> SMat:
    """S(u) = T(u)K(u)T(-u)^-1 (AIII) or T(u-κ/2)K(u)T(-u+κ/2)^t.

    ``g_override`` replaces K: a constant MatRF or a function of the argument."""
    if isinstance(pair, str):
        pair = PairType.parse(pair)
    alg = pair.algebra
    if alg.kind != t.algebra.kind or alg.N != t.N or (alg.kind == "b" and alg.sign != t.algebra.sign):
        raise ValueError("rep %s does not match pair %s" % (t.tag, pair))
    nl = len(t.legs)
    if callable(g_override):
        kfun = g_override
    elif g_override is not None:
        kfun = lambda arg: g_override
    else:
        kfun = pair.K

    if pair.family == "AIII":
        def make(arg):
            inv = [(mat_inverse(m), pos) for m, pos in reversed(t.local(-arg))]
            if any(m is None for m, _ in inv):
                raise ArithmeticError("singular T(-u)")
            return list(t.local(arg)) + [(kfun(arg), [0])] + inv
        branch = "T(u)K(u)T(-u)^-1"
    else:
        kap = 0 if pair.is_gl else pair.kappa
        half = Fraction(kap) / 2
        sign = pair.sign

        def make(arg):
            right = [(partial_transpose(m, 0, sign), pos) for m, pos in reversed(t.local(-arg + half))]
            return list(t.local(arg - half)) + [(kfun(arg), [0])] + right
        branch = "T(u-κ/2)K(u)T(-u+κ/2)^t"
    return SMat(pair, t.qlegs, make, source=t, branch=branch, const=const)


def s_from_dense(pair, qlegs, fn, tag=None, const=None) -> SMat:
    """SMat whose value at ``arg`` is fn(arg) (a MatRF on (N,)+qlegs)."""
    if isinstance(pair, str):
        pair = PairType.parse(pair)
    n = 1 + len(qlegs)
    return SMat(pair, qlegs, lambda arg: [(fn(arg), list(range(n)))], tag=tag, const=const)


def check_reflection_eq(s: SMat, R=None) -> Report:
    pair = s.pair
    N = s.N
    total = (N, N) + s.qlegs
    s1 = s.embedded(U, 0, total)
    s2 = s.embedded(V, 1, total)
    lhs, rhs = reflection_sides(R or pair.R, s1, s2, total, pair.twisted, pair.sign, N)
    rep = Report("reflection")
    rep.check("%s:%d-site" % (s.tag, len(s.qlegs)), chain_equal, lhs, rhs)
    return rep


def aux_trace(m: MatRF, N: int) -> MatRF:
    """Partial trace over the auxiliary leg, as an operator on the quantum legs."""
    out = None
    for i in range(N):
        b = aux_block(m, i, i)
        out = b if out is None else out + b
    return out


def symmetry_rhs(s: SMat, u=U, paren=None):
    """(lhs, rhs) of the symmetry relation as dense operators."""
    pair = s.pair
    N = s.N
    su = s.value(u)
    if pair.family in ("AI", "AII"):
        pm = pair.pm
        smu = s.value(-u)
        lhs = partial_transpose(smu, 0, pair.sign)
        rhs = su + (su - smu).scale(pm / (2 * u))
        return lhs, rhs
    if not pair.bcd:
        raise ValueError("no symmetry relation for %s" % pair)
    kap = pair.kappa
    paren = pair.paren if paren is None else paren
    pm = pair.pm
    sk = s.value(kap - u)
    lhs = partial_transpose(su, 0, pair.sign)
    trk = pair.K(u).trace()
    trs = aux_trace(su, N)
    if s.qlegs:
        tr_full = kron_embed(trs, list(range(1, 1 + len(s.qlegs))), s.legs)
    else:
        tr_full = MatRF.identity(s.legs).scale(trs.entry(0, 0))
    rhs = (sk.scale(paren) + (su - sk).scale(pm / (2 * u - kap))
           + (sk.scale(trk) - tr_full).scale((2 * u - 2 * kap).inv()))
    return lhs, rhs


def check_symmetry(s: SMat, paren=None) -> Report:
    rep = Report("symmetry")
    lhs, rhs = symmetry_rhs(s, U, paren)
    rep.check("%s:%d-site" % (s.tag, len(s.qlegs)), lambda: lhs.diff_witness(rhs, "RES"))
    return rep


# ------------------------------------------------------------ central series

def _scalar_of(op):
    lam = chain_scalar(op)
    if isinstance(lam, Witness):
        raise ArithmeticError("non-scalar product: %s" % lam)
    return lam


def sdet2(s: SMat, arg=U, form=1):
    """Sklyanin determinant of a 2x2 S-matrix (Y^+ for AI, Y^- for AII); None if not scalar."""
    pair = s.pair
    if pair.family not in ("AI", "AII") or s.N != 2:
        raise ValueError("sdet only for N=2 AI/AII")
    up = pair.family == "AI"
    u = rf(arg)
    pre = (2 * u + 1) / (2 * u + (1 if up else -1))
    mp = -1 if up else 1
    a = s.value(u - 1)
    b = s.value(-u)
    if form == 1:
        op = aux_block(a, 0, 0) * aux_block(b, 0, 0) + (aux_block(a, 0, 1) * aux_block(b, 1, 0)).scale(mp)
    else:
        op = aux_block(b, 1, 1) * aux_block(a, 1, 1) + (aux_block(b, 1, 0) * aux_block(a, 0, 1)).scale(mp)
    op = op.scale(pre)
    lam = chain_scalar(op)
    return lam


def z_w_qdet_sdet(obj):
    """Central scalars of a rep or S-matrix with the relations among them.

    Returns (values, report)."""
    rep = Report("central")
    vals = {}
    if isinstance(obj, SMat):
        s = obj
        pair = s.pair
        tag = s.tag
        if pair.bcd or pair.family == "AIII":
            prod_ = s.chain(U) * s.chain(-U)
            lam = _scalar_of(prod_)
            key = "w" if pair.bcd else "f"
            vals[key] = lam
            rep.check("%s:%s-even" % (tag, key), lambda: None if lam == lam.subs({"u": -U}) else
                      "%s(u) is not even" % key)
        if pair.family in ("AI", "AII") and s.N == 2:
            d1 = sdet2(s, U, 1)
            d2 = sdet2(s, U, 2)
            rep.check("%s:sdet-scalar" % tag, lambda: d1 if isinstance(d1, Witness) else
                      (d2 if isinstance(d2, Witness) else None))
            if isinstance(d1, RatFunc):
                vals["sdet"] = d1
                rep.check("%s:sdet-forms" % tag, lambda: None if d1 == d2 else "row/column forms differ")
                t = s.source
                if t is not None and t.algebra.kind == "a":
                    q1 = _scalar_of(qdet2(t, U))
                    q2 = _scalar_of(qdet2(t, 1 - U))
                    want = q1 * q2
                    if pair.family == "AII":
                        want = want * (2 * U + 1) / (2 * U - 1)
                    vals["qdet"] = q1
                    rep.check("%s:qdet->sdet" % tag, lambda: None if d1 == want else
                              "sdet %s vs %s" % (d1, want))
        return vals, rep
    t = obj
    if t.algebra.kind == "a":
        if t.N != 2:
            raise ValueError("qdet only for N=2")
        vals["qdet"] = _scalar_of(qdet2(t))
    else:
        z = z_series_scalar(t)
        if isinstance(z, Witness):
            raise ArithmeticError("z(u) not scalar: %s" % z)
        vals["z"] = z
        kap = t.algebra.kappa
        z2 = _scalar_of(t.chain(U) * t.transposed(U + kap))
        rep.check("%s:z-both-sides" % t.tag, lambda: None if z == z2 else "T T^t differs from T^t T")
    return vals, rep


def c_series_extract(s: SMat):
    """(c(u), report): Q S1(u) R(2u-κ) S2(κ-u)^-1 = p(u)c(u)Q and the mirrored form."""
    pair = s.pair
    if not (pair.bcd or pair.family in ("AI", "AII")):
        raise ValueError("c(u) needs a B-C-D or AI/AII pair")
    N = s.N
    kap = 0 if pair.is_gl else pair.kappa
    total = (N, N) + s.qlegs
    _, Q = perm_and_q(N, pair.sign)
    q12 = kron_embed(Q, [0, 1], total)
    if pair.is_gl:
        Rm = r_matrix("a", N, pair.sign, 2 * U - kap)
    else:
        Rm = pair.R(2 * U - kap)
    r12 = kron_embed(Rm, [0, 1], total)
    s1 = s.embedded(U, 0, total)
    s2i = s.embedded(kap - U, 1, total, "inv")
    left = Chain([q12]) * s1 * r12 * s2i
    right = s2i * r12 * s1 * q12
    p, _, _ = p_gamma_theta(pair, U)
    rep = Report("c-series")
    lam1 = chain_scalar(left, q12)
    lam2 = chain_scalar(right, q12)
    rep.check("%s:left-Q-multiple" % s.tag, lambda: lam1 if isinstance(lam1, Witness) else None)
    rep.check("%s:right-Q-multiple" % s.tag, lambda: lam2 if isinstance(lam2, Witness) else None)
    c = None
    if isinstance(lam1, RatFunc):
        c = lam1 / p
        if isinstance(lam2, RatFunc):
            rep.check("%s:mirror" % s.tag, lambda: None if lam1 == lam2 else
                      "forms differ: %s vs %s" % (lam1, lam2))
    return c, rep
