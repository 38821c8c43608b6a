"""Gauss coordinates of 2x2 operator series and the Drinfeld-type generators.

Everything is checked on representations: a T-matrix (or S-matrix) is
expanded at u = ∞, split into Gauss coordinates, and the coefficient
operators are fed to the presentations of the rank-one Yangian and its two
twisted forms.  Once coefficients are extracted all checks are exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .polyrat import U, RatFunc, rf
from .report import Report
from .reps import TMat, aux_block, from_blocks, normalize_special, tensor_rep
from .series import TruncSeries, expand_matrf
from .tensorops import MatRF
from .twistgen import SMat, build_s

__all__ = ["OpSeries", "GaussData", "DrinfeldGens", "gauss_decompose", "check_gauss_relations",
           "phi_generators", "phi_plus_generators", "phi_minus_generators", "check_coproduct",
           "twisted_sigma", "MIN_ORDER"]

OpSeries = TruncSeries

# smallest truncation order accepted by each generator family
MIN_ORDER = {"phi": 3, "phi+": 3, "phi-": 4}


def _need(order, which):
    if order < MIN_ORDER[which]:
        raise ValueError("%s needs order >= %d, got %d" % (which, MIN_ORDER[which], order))


def _q(x):
    return rf(Fraction(x))


def comm(a, b):
    return a * b - b * a


def anti(a, b):
    return a * b + b * a


def sym3(a, b, c):
    xs = (a, b, c)
    acc = None
    for p in permutations(range(3)):
        t = xs[p[0]] * xs[p[1]] * xs[p[2]]
        acc = t if acc is None else acc + t
    return acc.scale(_q(Fraction(1, 6)))


def _eq(a, b, what=""):
    return a.diff_witness(b, what)


def _ser_eq(a: TruncSeries, b: TruncSeries, what=""):
    r = a.first_diff(b)
    if r is None:
        return None
    x, y = a[r], b[r]
    if isinstance(x, MatRF):
        return x.diff_witness(y, "%s at u^-%d" % (what, r))
    return "%s at u^-%d: %s vs %s" % (what, r, x, y)


# ------------------------------------------------------------ Gauss data

@dataclass
class GaussData:
    """T = F K E with k_{-1} = km, k_1 = kp and k = km^-1 kp."""
    e: TruncSeries
    f: TruncSeries
    km: TruncSeries
    kp: TruncSeries
    k: TruncSeries
    source: TruncSeries = field(repr=False, default=None)

    @property
    def order(self):
        return self.e.order

    def coef(self, name, r):
        """x^{(r)}: the coefficient of u^{-r-1}."""
        s = getattr(self, name)
        if r + 1 > s.order:
            raise ValueError("coefficient %s^(%d) needs order >= %d" % (name, r, r + 1))
        return s[r + 1]

    def reassembled(self) -> TruncSeries:
        kme = self.km * self.e
        blocks = [self.km, kme, self.f * self.km, self.kp + self.f * kme]
        out = []
        for r in range(self.order + 1):
            out.append(from_blocks((2,), {(0, 0): blocks[0][r], (0, 1): blocks[1][r],
                                          (1, 0): blocks[2][r], (1, 1): blocks[3][r]}))
        return TruncSeries(out)

    def check_reassembly(self):
        if self.source is None:
            return None
        return _ser_eq(self.reassembled(), self.source.truncate(self.order), "FKE")


def _split(ser: TruncSeries):
    return [TruncSeries([aux_block(c, i, j) for c in ser.c]) for i, j in ((0, 0), (0, 1), (1, 0), (1, 1))]


def gauss_decompose(m, order: int | None = None) -> GaussData:
    """Gauss coordinates of a 2x2 operator matrix (aux leg first), as series to ``order``."""
    if isinstance(m, MatRF):
        if order is None:
            raise ValueError("order required for an exact matrix")
        m = expand_matrf(m, order)
    elif order is not None:
        m = m.truncate(order)
    if m.c[0].legs[0] != 2:
        raise ValueError("auxiliary leg must have dimension 2")
    a, b, c, d = _split(m)
    one = MatRF.identity(a[0].legs)
    if a[0].diff_witness(one) is not None:
        raise ValueError("non-unit corner: k_{-1} has constant term %r" % a[0])
    ai = a.inv()
    e = ai * b
    f = c * ai
    kp = d - f * a * e
    return GaussData(e, f, a, kp, ai * kp, source=m)


# ------------------------------------------------------------ two-variable series

class _Bi:
    """Coefficients of u^-a v^-b, 0 <= a, b <= D, as a sparse dict."""

    def __init__(self, c, D):
        self.c = {k: x for k, x in c.items() if not x.is_zero()}
        self.D = D

    @classmethod
    def u(cls, s, D):
        return cls({(a, 0): s[a] for a in range(D + 1)}, D)

    @classmethod
    def v(cls, s, D):
        return cls({(0, b): s[b] for b in range(D + 1)}, D)

    @classmethod
    def dd(cls, s, D):
        """(s(u) - s(v)) / (u - v)."""
        out = {}
        for a in range(1, D + 1):
            for b in range(1, D + 1):
                out[(a, b)] = -s[a + b - 1]
        return cls(out, D)

    def __add__(self, o):
        out = dict(self.c)
        for k, x in o.c.items():
            out[k] = out[k] + x if k in out else x
        return _Bi(out, self.D)

    def __neg__(self):
        return _Bi({k: -x for k, x in self.c.items()}, self.D)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, s):
        s = _q(s)
        return _Bi({k: x.scale(s) for k, x in self.c.items()}, self.D)

    def __mul__(self, o):
        out = {}
        D = self.D
        for (a1, b1), x in self.c.items():
            for (a2, b2), y in o.c.items():
                a, b = a1 + a2, b1 + b2
                if a > D or b > D:
                    continue
                t = x * y
                out[(a, b)] = out[(a, b)] + t if (a, b) in out else t
        return _Bi(out, D)

    def diff(self, o, what=""):
        for key in sorted(set(self.c) | set(o.c)):
            x, y = self.c.get(key), o.c.get(key)
            if x is None:
                x = y.scale(rf(0))
            if y is None:
                y = x.scale(rf(0))
            w = x.diff_witness(y, "%s at u^-%d v^-%d" % (what, key[0], key[1]))
            if w is not None:
                return w
        return None


def check_gauss_relations(g: GaussData, order: int | None = None) -> Report:
    """Commutation relations of the Gauss coordinates, cross coefficients up to ``order``."""
    D = g.order // 2 if order is None else order
    if 2 * D - 1 > g.order:
        raise ValueError("relations to order %d need Gauss data to order %d" % (D, 2 * D - 1))
    Bu = lambda s: _Bi.u(s, D)
    Bv = lambda s: _Bi.v(s, D)
    dd = lambda s: _Bi.dd(s, D)

    def bracket(x, y):
        X, Y = Bu(x), Bv(y)
        return X * Y - Y * X

    e, f, km, kp, k = g.e, g.f, g.km, g.kp, g.k
    fu_fv = Bu(f) - Bv(f)
    eu_ev = Bu(e) - Bv(e)
    rels = [
        ("[k,k]=0", bracket(k, k), _Bi({}, D)),
        ("[k1,k1]=0", bracket(kp, kp), _Bi({}, D)),
        ("[k-1,k-1]=0", bracket(km, km), _Bi({}, D)),
        ("[k-1,f]", bracket(km, f), (dd(f) * Bu(km)).scale(2)),
        ("[k-1,e]", bracket(km, e), (Bu(km) * dd(e)).scale(-2)),
        ("[k1,f]", bracket(kp, f), (dd(f) * Bu(kp)).scale(-2)),
        ("[k1,e]", bracket(kp, e), (Bu(kp) * dd(e)).scale(2)),
        ("[k,f]", bracket(k, f), (dd(f) * Bu(k) + Bu(k) * dd(f)).scale(-2)),
        ("[k,e]", bracket(k, e), (dd(e) * Bu(k) + Bu(k) * dd(e)).scale(2)),
        ("[f,f]", bracket(f, f), (dd(f) * fu_fv).scale(-2)),
        ("[e,e]", bracket(e, e), (dd(e) * eu_ev).scale(2)),
        ("[e,f]", bracket(e, f), dd(k).scale(2)),
    ]
    rep = Report("gauss-relations")
    rep.check("reassembly", g.check_reassembly)
    for name, lhs, rhs in rels:
        rep.check(name, lhs.diff, rhs, name)
    return rep


# ------------------------------------------------------------ generators

@dataclass
class DrinfeldGens:
    gens: dict
    report: Report

    def __getitem__(self, k):
        return self.gens[k]


def _yangian_images(g: GaussData):
    """Images of h, e, f, J(h), J(e), J(f) in Y(sp2) (operators on W)."""
    k0, k1 = g.coef("k", 0), g.coef("k", 1)
    e0, e1 = g.coef("e", 0), g.coef("e", 1)
    f0, f1 = g.coef("f", 0), g.coef("f", 1)
    h, q = _q(Fraction(1, 2)), _q(Fraction(1, 4))
    return {
        "h": k0.scale(h),
        "e": f0.scale(h),
        "f": e0.scale(h),
        "J(h)": (k1 - (k0 * k0).scale(h) + anti(e0, f0).scale(h)).scale(q),
        "J(e)": (f1 - anti(f0, k0).scale(q)).scale(q),
        "J(f)": (e1 - anti(e0, k0).scale(q)).scale(q),
    }


def _omega(y):
    """J(x) -> J(x) + x/2 (x unchanged)."""
    h = _q(Fraction(1, 2))
    out = dict(y)
    for x in ("h", "e", "f"):
        out["J(%s)" % x] = y["J(%s)" % x] + y[x].scale(h)
    return out


def casimir(y):
    return anti(y["e"], y["f"]) + (y["h"] * y["h"]).scale(_q(Fraction(1, 2)))


def check_yangian_relations(y, rep: Report, prefix="rel"):
    h, e, f = y["h"], y["e"], y["f"]
    Jh, Je, Jf = y["J(h)"], y["J(e)"], y["J(f)"]
    two = _q(2)
    rep.check(prefix + ":[h,e]=2e", _eq, comm(h, e), e.scale(two))
    rep.check(prefix + ":[h,f]=-2f", _eq, comm(h, f), f.scale(-two))
    rep.check(prefix + ":[e,f]=h", _eq, comm(e, f), h)
    rep.check(prefix + ":[h,J(e)]=2J(e)", _eq, comm(h, Je), Je.scale(two))
    rep.check(prefix + ":[J(h),e]=2J(e)", _eq, comm(Jh, e), Je.scale(two))
    rep.check(prefix + ":[h,J(f)]=-2J(f)", _eq, comm(h, Jf), Jf.scale(-two))
    rep.check(prefix + ":[J(h),f]=-2J(f)", _eq, comm(Jh, f), Jf.scale(-two))
    rep.check(prefix + ":[e,J(f)]=J(h)", _eq, comm(e, Jf), Jh)
    rep.check(prefix + ":[J(e),f]=J(h)", _eq, comm(Je, f), Jh)
    rep.check(prefix + ":JJJ", _eq, comm(Jh, comm(Je, Jf)), (Jf * e - f * Je) * h)


def _kk_identities(g: GaussData, rep: Report):
    k0, k1, k2 = (g.coef("k", r) for r in range(3))
    m0, m1, m2 = (g.coef("km", r).scale(_q(2)) for r in range(3))
    q = lambda x: _q(Fraction(x))
    rep.check("kk:0", _eq, m0, -k0)
    rep.check("kk:1", _eq, m1, -k1 - k0 + (k0 * k0).scale(q("3/4")))
    rep.check("kk:2", _eq, m2, -k2 - k1.scale(q(2)) + (k1 * k0).scale(q("3/2"))
              + (k0 * k0).scale(q("3/2")) - (k0 * k0 * k0).scale(q("5/8")))


def _sp2_gauss(t: TMat, order: int):
    nt = normalize_special(t, order)
    return nt, gauss_decompose(nt.series())


def phi_generators(t: TMat, order: int = 4) -> DrinfeldGens:
    """Drinfeld generators of a special-normalized Y(sp2) rep and their relations."""
    _need(order, "phi")
    nt, g = _sp2_gauss(t, order)
    y = _yangian_images(g)
    rep = Report("phi")
    rep.check("z=1", _ser_eq, TruncSeries.from_rf(nt.central, order) * nt.g * nt.g.shift(2),
              TruncSeries.const(1, order), "z")
    rep.check("reassembly", g.check_reassembly)
    rep.check("km(u+2)=kp^-1", _ser_eq, g.km.shift(2), g.kp.inv(), "k")
    check_yangian_relations(y, rep)
    return DrinfeldGens(y, rep)


# ------------------------------------------------------------ twisted quotients

_PLUS, _MINUS = "CI", "C0"


def twisted_sigma(t: TMat, family: str, order: int):
    """S(u) = T(u-1) G T(1-u)^t and its unitary normalization.

    Returns (S, normalized series, normalized Y(sp2) data).  The normalizer
    is g(u-1) g(1-u) with g the special normalizer of T, so the twisted series
    is exactly the image of the normalized T."""
    nt = normalize_special(t, order)
    if family == _PLUS:
        G = -build_s(t, "CI:1").pair.G
        S = build_s(t, "CI:1", g_override=G, const=G)
    elif family == _MINUS:
        S = build_s(t, "C0:2")
    else:
        raise ValueError("family must be CI or C0")
    g = nt.g
    phi = g.shift(-1) * g.neg_arg().shift(-1)
    sig = expand_matrf(S.value(U), order) * phi
    return S, sig, nt


def _blocks_at(S: SMat, arg):
    m = S.value(arg)
    return {ij: aux_block(m, *ij) for ij in ((0, 0), (0, 1), (1, 0), (1, 1))}


def _symmetry_constraints(S: SMat, family, rep: Report):
    """Entry-wise consequences of the symmetry relation, exact in u."""
    b = _blocks_at(S, U)
    c = _blocks_at(S, 2 - U)
    u = U
    if family == _PLUS:
        rep.check("sym:fk", _eq, b[(1, 0)], c[(1, 0)])
        rep.check("sym:ke", _eq, b[(0, 1)], c[(0, 1)])
        rhs = (b[(0, 0)] + c[(0, 0)].scale(u - 2)).scale(-1 / (u - 1))
        rep.check("sym:k1+fke", _eq, b[(1, 1)], rhs)
    else:
        r = u / (2 - u)
        rep.check("sym:ke", _eq, b[(0, 1)], c[(0, 1)].scale(r))
        rep.check("sym:fk", _eq, b[(1, 0)], c[(1, 0)].scale(r))
        # matrix form; the sign in front is forced by the constant term 1
        rhs = (b[(0, 0)] - c[(0, 0)].scale(u)).scale(1 / (1 - u))
        rep.check("sym:k1+fke", _eq, b[(1, 1)], rhs)


def _unitarity_k1(gs: GaussData, family, rep: Report, order):
    km = gs.km
    D = order
    inv_u1 = TruncSeries.from_rf(1 / (U + 1), D)
    if family == _PLUS:
        rhs = km.neg_arg() * inv_u1 - km.shift(2) * TruncSeries.from_rf((U + 2) / (U + 1), D)
    else:
        rhs = km.neg_arg() * inv_u1 + km.shift(2) * TruncSeries.from_rf(U / (U + 1), D)
    rep.check("unit:k1^-1", _ser_eq, gs.kp.inv(), rhs, "k1^-1")


def _iota_series(gs: GaussData, gt: GaussData, family, rep: Report):
    """The displayed images of k(u+1), f(u+1)k(u+1), k(u+1)e(u+1)."""
    km, e, f = gt.km, gt.e, gt.f
    kmn, en, fn = km.neg_arg(), e.neg_arg(), f.neg_arg()
    km_inv_2mu = km.inv().neg_arg().shift(-2)          # k_{-1}^{-1}(2-u)
    km_inv_up2 = km.inv().shift(2)                      # k_{-1}^{-1}(u+2)
    s = 1 if family == _PLUS else -1
    a = km * e * fn * kmn
    b = km * fn * kmn * en
    lhs_k = gs.km.shift(1)
    lhs_fk = (gs.f * gs.km).shift(1)
    lhs_ke = (gs.km * gs.e).shift(1)
    rep.check("iota:k(u+1)", _ser_eq, lhs_k, a * s + b + km * km_inv_2mu, "k(u+1)")
    rep.check("iota:fk(u+1)", _ser_eq, lhs_fk,
              f * a * s + f * b + f * km * km_inv_2mu + km_inv_up2 * fn * kmn * s, "fk(u+1)")
    rep.check("iota:ke(u+1)", _ser_eq, lhs_ke, (km * e * kmn) * (-s) - km * kmn * en, "ke(u+1)")


def phi_plus_generators(t: TMat, order: int = 4) -> DrinfeldGens:
    """Generators k, E, F of the orthogonal twisted quotient realized on an sp2 rep."""
    _need(order, "phi+")
    S, sig, nt = twisted_sigma(t, _PLUS, order)
    gs = gauss_decompose(sig)
    gt = gauss_decompose(nt.series())
    y = _yangian_images(gt)
    q = lambda x: _q(Fraction(x))
    sk0, sk1 = gs.coef("km", 0), gs.coef("km", 1)
    sf0, sf1 = gs.coef("f", 0), gs.coef("f", 1)
    se0, se1 = gs.coef("e", 0), gs.coef("e", 1)
    K = sk0.scale(q("-1/2"))
    E = sf1.scale(q("1/8"))
    F = se1.scale(q("-1/8"))
    rep = Report("phi+")
    one = TruncSeries.const(MatRF.identity(sig[0].legs), order)
    rep.check("w=1", _ser_eq, sig * sig.neg_arg(), one, "S(u)S(-u)")
    rep.check("reassembly", gs.check_reassembly)
    two = q(2)
    rep.check("rel:[k,E]=2E", _eq, comm(K, E), E.scale(two))
    rep.check("rel:[k,F]=-2F", _eq, comm(K, F), F.scale(-two))
    rep.check("rel:EEFE", _eq, comm(E, comm(E, comm(F, E))), (E * K * E).scale(q(12)))
    rep.check("rel:FFFE", _eq, comm(F, comm(F, comm(F, E))), (F * K * F).scale(q(12)))
    _symmetry_constraints(S, _PLUS, rep)
    _unitarity_k1(gs, _PLUS, rep, order)
    _iota_series(gs, gt, _PLUS, rep)

    m0 = gt.coef("km", 0)
    k0, e0, f0 = gt.coef("k", 0), gt.coef("e", 0), gt.coef("f", 0)
    e1, f1 = gt.coef("e", 1), gt.coef("f", 1)
    zero = MatRF.zero(K.legs)
    rep.check("iota:f0->0", _eq, sf0, zero)
    rep.check("iota:e0->0", _eq, se0, zero)
    rep.check("iota:k0->2km0", _eq, sk0, m0.scale(two))
    # the e(u)f(-u) and f(-u)e(-u) terms contribute [f0, e0] at this order
    rep.check("iota:k1", _eq, sk1, (m0 * m0 + m0.scale(two)).scale(two) + comm(f0, e0))
    rep.check("iota:k1=2km0^2", _eq, sk1, (m0 * m0).scale(two))
    rep.check("iota:f1(km)", _eq, sf1, f1.scale(two) + m0 * f0 + (f0 * m0).scale(q(3)))
    rep.check("iota:e1(km)", _eq, se1, e1.scale(-two) - comm(m0, e0))
    rep.check("iota:k0->-k0", _eq, sk0, -k0)
    rep.check("iota:f1", _eq, sf1, f1.scale(two) - anti(k0, f0) + f0.scale(two))
    rep.check("iota:e1", _eq, se1, e1.scale(-two) - e0.scale(two))

    h, e, f = y["h"], y["e"], y["f"]
    rep.check("comp:k0", _eq, sk0, h.scale(-two))
    rep.check("comp:e1", _eq, se1, y["J(f)"].scale(q(-8)) - anti(f, h).scale(two) - f.scale(q(4)))
    rep.check("comp:f1", _eq, sf1, y["J(e)"].scale(q(8)) - anti(e, h).scale(two) + e.scale(q(4)))
    w = _omega(y)
    quarter = q("1/4")
    rep.check("square:k", _eq, K, w["h"])
    rep.check("square:E", _eq, E, w["J(e)"] - anti(e, h).scale(quarter))
    rep.check("square:F", _eq, F, w["J(f)"] + anti(f, h).scale(quarter))
    return DrinfeldGens({"k": K, "E": E, "F": F}, rep)


def _phi_minus_of_g(y, which):
    """φ⁻(G(x)) = [J(x'), J(x'')] + ([J(x), C] - x)/4 evaluated on Yangian images y."""
    half = _q(Fraction(1, 2))
    C = casimir(y)
    J = {"h": y["J(h)"], "e": y["J(e)"], "f": y["J(f)"]}
    if which == "h":
        a, b = J["e"], J["f"]
    elif which == "e":
        a, b = J["h"].scale(half), J["e"]
    else:
        a, b = J["f"], J["h"].scale(half)
    return comm(a, b) + (comm(J[which], C) - y[which]).scale(_q(Fraction(1, 4)))


def gh_image(k0, k2, C, literal=False):
    """Image of G(h).

    ``literal`` gives the variant -k2/8 - (4k0 + 4C - C k0)/8, which differs
    from [e, G(f)] by 2h - 2C (h = -k0/2) and breaks [e, G(f)] = G(h).  The
    default is -k2/8 + (4k0 + 4C + C k0)/8 = [e, G(f)]."""
    q = lambda x: _q(Fraction(x))
    four = q(4)
    if literal:
        return k2.scale(q("-1/8")) - (k0.scale(four) + C.scale(four) - C * k0).scale(q("1/8"))
    return k2.scale(q("-1/8")) + (k0.scale(four) + C.scale(four) + C * k0).scale(q("1/8"))


def phi_minus_generators(t: TMat, order: int = 4, literal_gh=False) -> DrinfeldGens:
    """Generators x, G(x) of the symplectic twisted quotient realized on an sp2 rep."""
    _need(order, "phi-")
    S, sig, nt = twisted_sigma(t, _MINUS, order)
    gs = gauss_decompose(sig)
    gt = gauss_decompose(nt.series())
    y = _yangian_images(gt)
    q = lambda x: _q(Fraction(x))
    sk = [gs.coef("km", r) for r in range(3)]
    se = [gs.coef("e", r) for r in range(3)]
    sf = [gs.coef("f", r) for r in range(3)]
    sC = (anti(se[0], sf[0]) + (sk[0] * sk[0]).scale(q(2))).scale(q("1/8"))
    four = q(4)
    h = sk[0].scale(q("-1/2"))
    e = sf[0].scale(q("1/4"))
    f = se[0].scale(q("1/4"))
    Gh = gh_image(sk[0], sk[2], sC, literal=literal_gh)
    Ge = sf[2].scale(q("1/16")) - (sf[0].scale(four) + (sk[0] * sf[0]).scale(four)
                                   + sk[0] * sk[0] * sf[0] - sC * sf[0]).scale(q("1/16"))
    Gf = se[2].scale(q("1/16")) - (se[0].scale(four) + (se[0] * sk[0]).scale(four)
                                   + se[0] * sk[0] * sk[0] - sC * se[0]).scale(q("1/16"))
    x = {"h": h, "e": e, "f": f, "G(h)": Gh, "G(e)": Ge, "G(f)": Gf}

    rep = Report("phi-")
    one = TruncSeries.const(MatRF.identity(sig[0].legs), order)
    rep.check("w=1", _ser_eq, sig * sig.neg_arg(), one, "S(u)S(-u)")
    rep.check("reassembly", gs.check_reassembly)
    two = q(2)
    rep.check("rel:[h,e]=2e", _eq, comm(h, e), e.scale(two))
    rep.check("rel:[h,f]=-2f", _eq, comm(h, f), f.scale(-two))
    rep.check("rel:[e,f]=h", _eq, comm(e, f), h)
    rep.check("rel:[h,G(e)]=2G(e)", _eq, comm(h, Ge), Ge.scale(two))
    rep.check("rel:[G(h),e]=2G(e)", _eq, comm(Gh, e), Ge.scale(two))
    rep.check("rel:[h,G(f)]=-2G(f)", _eq, comm(h, Gf), Gf.scale(-two))
    rep.check("rel:[G(h),f]=-2G(f)", _eq, comm(Gh, f), Gf.scale(-two))
    rep.check("rel:[e,G(f)]=G(h)", _eq, comm(e, Gf), Gh)
    rep.check("rel:[G(e),f]=G(h)", _eq, comm(Ge, f), Gh)
    rep.check("rel:GGG", _eq, comm(Gh, comm(Ge, Gf)), (sym3(e, Gf, Gh) - sym3(f, Ge, Gh)).scale(four))
    _kk_identities(gt, rep)
    _symmetry_constraints(S, _MINUS, rep)
    _unitarity_k1(gs, _MINUS, rep, order)
    _iota_series(gs, gt, _MINUS, rep)

    k = [gt.coef("k", r) for r in range(3)]
    te = [gt.coef("e", r) for r in range(3)]
    tf = [gt.coef("f", r) for r in range(3)]
    k0, e0, f0 = k[0], te[0], tf[0]
    ef = anti(e0, f0)
    rep.check("iota:f0", _eq, sf[0], f0.scale(two))
    rep.check("iota:f1", _eq, sf[1], (f0.scale(two) + f0 * k0).scale(two))
    rep.check("iota:e0", _eq, se[0], e0.scale(two))
    rep.check("iota:e1", _eq, se[1], (e0.scale(two) + k0 * e0).scale(two))
    rep.check("iota:k0", _eq, sk[0], -k0)
    rep.check("iota:k1", _eq, sk[1], ef - k0.scale(two) + (k0 * k0).scale(q("1/2")))
    rep.check("iota:k2", _eq, sk[2], -k[2] + comm(te[1], f0) - e0 * tf[1] - tf[1] * e0 + k0 * k[1]
              + (k0 * k0).scale(two) - (k0 * k0 * k0).scale(q("1/2")) + (e0 * f0).scale(two)
              - k0.scale(q(3)))
    I = MatRF.identity(k0.legs)
    rep.check("iota:e2", _eq, se[2], te[2].scale(two)
              - (comm(k0, te[1]) + e0 * k[1] + (k[1] * e0).scale(q(3))).scale(q("1/2"))
              - ((ef - k0.scale(four) - k0 * k0 - I.scale(q(5))) * e0).scale(two))
    rep.check("iota:f2", _eq, sf[2], tf[2].scale(two)
              - (comm(f0, k[1]) + k0 * tf[1] + (tf[1] * k0).scale(q(3))).scale(q("1/2"))
              - f0 * (ef - k0.scale(q(6)) - (k0 * k0).scale(two) - I.scale(two)))

    # composites through the Yangian images
    w = _omega(y)
    C = casimir(y)
    hy, ey, fy = y["h"], y["e"], y["f"]
    corr_h = (hy.scale(two) - C.scale(two) + C * hy).scale(four)
    rep.check("comp:k2:JJ", _eq, sk[2], comm(y["J(e)"], y["J(f)"]).scale(q(-8))
              - (y["J(h)"] + comm(y["J(h)"], C).scale(q("1/4"))).scale(q(8)) - corr_h)
    rep.check("comp:k2", _eq, sk[2], _phi_minus_of_g(w, "h").scale(q(-8)) - corr_h)
    rep.check("comp:e2", _eq, se[2], _phi_minus_of_g(w, "f").scale(q(16))
              + (fy.scale(two) - (fy * hy).scale(four) + (fy * hy * hy).scale(two) - C * fy).scale(q(8)))
    rep.check("comp:f2", _eq, sf[2], _phi_minus_of_g(w, "e").scale(q(16))
              + (ey.scale(two) - (hy * ey).scale(four) + (hy * hy * ey).scale(two) - C * ey).scale(q(8)))
    for name in ("h", "e", "f"):
        rep.check("square:" + name, _eq, x[name], w[name])
    for name in ("h", "e", "f"):
        rep.check("square:G(%s)" % name, _eq, x["G(%s)" % name], _phi_minus_of_g(w, name))
    return DrinfeldGens(x, rep)


# ------------------------------------------------------------ coproduct

def _kron(a: MatRF, b: MatRF, legs):
    if a.legs == (1,):
        return b.scale(a.entry(0, 0)) if a.nnz() else MatRF.zero(legs)
    if b.legs == (1,):
        return a.scale(b.entry(0, 0)) if b.nnz() else MatRF.zero(legs)
    return a.kron(b)


def check_coproduct(ta: TMat, tb: TMat, order: int = 3) -> Report:
    """Drinfeld coproduct against the matrix coproduct T = T_a T_b."""
    _need(order, "phi")
    tab = tensor_rep(ta, tb)
    ya = _yangian_images(gauss_decompose(expand_matrf(ta.value(U), order)))
    yb = _yangian_images(gauss_decompose(expand_matrf(tb.value(U), order)))
    yab = _yangian_images(gauss_decompose(expand_matrf(tab.value(U), order)))
    legs = next(iter(yab.values())).legs
    Ia = MatRF.identity(next(iter(ya.values())).legs)
    Ib = MatRF.identity(next(iter(yb.values())).legs)
    L = lambda m: _kron(m, Ib, legs)
    R = lambda m: _kron(Ia, m, legs)
    omega = _kron(ya["e"], yb["f"], legs) + _kron(ya["f"], yb["e"], legs) \
        + _kron(ya["h"], yb["h"], legs).scale(_q(Fraction(1, 2)))
    rep = Report("coproduct")
    for x in ("h", "e", "f"):
        rep.check("D(%s)" % x, _eq, yab[x], L(ya[x]) + R(yb[x]))
    for x in ("h", "e", "f"):
        J = "J(%s)" % x
        rhs = L(ya[J]) + R(yb[J]) + comm(L(ya[x]), omega).scale(_q(Fraction(1, 2)))
        rep.check("D(%s)" % J, _eq, yab[J], rhs)
    return rep
