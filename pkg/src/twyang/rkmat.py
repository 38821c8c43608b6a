"""R-matrices, K-matrices and symmetric-pair data."""
from __future__ import annotations

import re
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .polyrat import U, V, RatFunc, rf
from .report import Report
from .tensorops import (ORTH, SYMP, Chain, Isometry, MatRF, chain_equal,
                        kron_embed, lift_isometry, partial_transpose,
                        perm_and_q, restrict_isometry, signed_labels)

__all__ = [
    "PairType", "Algebra", "r_matrix", "r_gl", "k_matrix", "check_qybe",
    "check_scalar_reflection", "special_r_identities",
    "rv_matrix_and_factorizations", "p_gamma_theta", "v_isometry", "rv_matrix",
    "rv_lifted", "K2", "PAIR_TYPES", "ALGEBRAS", "check_p_identity", "rv_factorization",
]

_FAMILIES = ("AI", "AII", "AIII", "CI", "DIII", "CII", "BDI", "BD0", "C0")


@lru_cache(maxsize=None)
def _pq(N, sign):
    return perm_and_q(N, sign)


@dataclass(frozen=True)
class Algebra:
    """gl_N (kind a R) or so_N / sp_N (kind b R)."""
    kind: str  # 'a' | 'b'
    N: int
    sign: str = ORTH
    kappa_override: Fraction | None = None
    drop_q: bool = False

    @property
    def kappa(self):
        if self.kappa_override is not None:
            return Fraction(self.kappa_override)
        if self.kind == "a":
            return Fraction(0)
        return Fraction(self.N, 2) + (-1 if self.sign == ORTH else 1)

    @property
    def name(self):
        if self.kind == "a":
            return "gl%d" % self.N
        return ("so%d" if self.sign == ORTH else "sp%d") % self.N

    def R(self, arg) -> MatRF:
        return r_matrix(self.kind, self.N, self.sign, arg, kappa=self.kappa, drop_q=self.drop_q)

    @classmethod
    def parse(cls, s: str) -> "Algebra":
        m = re.fullmatch(r"\s*(gl|so|sp)(\d+)\s*", s)
        if not m:
            raise ValueError("unknown algebra %r" % s)
        fam, N = m.group(1), int(m.group(2))
        if fam == "gl":
            return cls("a", N)
        if fam == "sp" and N % 2:
            raise ValueError("sp needs even N")
        return cls("b", N, ORTH if fam == "so" else SYMP)

    def __str__(self):
        return self.name


ALGEBRAS = ("gl2", "gl3", "gl4", "sp2", "so3", "so4")


def r_matrix(kind, N, sign, arg, kappa=None, drop_q=False) -> MatRF:
    """I - P/arg (kind a) or I - P/arg + Q/(arg - kappa) (kind b) on C^N ⊗ C^N."""
    arg = rf(arg)
    if arg.is_zero():
        raise ZeroDivisionError("R-matrix at zero argument")
    P, Q = _pq(N, sign if kind == "b" else ORTH)
    I = MatRF.identity((N, N))
    out = I - P.scale(arg.inv())
    if kind == "b":
        if kappa is None:
            kappa = Fraction(N, 2) + (-1 if sign == ORTH else 1)
        if not drop_q:
            d = arg - kappa
            if d.is_zero():
                raise ZeroDivisionError("R-matrix pole at kappa")
            out = out + Q.scale(d.inv())
    elif kind != "a":
        raise ValueError("kind must be a or b")
    return out


def r_gl(arg, N=2) -> MatRF:
    """R°(arg) = I - P/arg on C^N ⊗ C^N."""
    return r_matrix("a", N, ORTH, arg)


def K2() -> MatRF:
    """K = E11 - E-1,-1 on C^2."""
    return MatRF.diag((2,), [-1, 1])


@dataclass(frozen=True)
class PairType:
    family: str
    N: int
    p: int | None = None
    q: int | None = None
    kappa_override: Fraction | None = None
    paren_override: int | None = None
    eps_flip: bool = False

    def __post_init__(self):
        f, N, p, q = self.family, self.N, self.p, self.q
        if f not in _FAMILIES:
            raise ValueError("unknown family %r" % f)
        if N < 1:
            raise ValueError("N must be positive")
        if f in ("AII", "CI", "DIII", "C0", "CII") and N % 2:
            raise ValueError("%s needs even N" % f)
        if f == "AIII" and (p is None or q is None or p + q != N or q < 0 or p < q and False):
            raise ValueError("AIII needs p+q=N")
        if f == "CII":
            if p is None or q is None or p % 2 or q % 2 or p <= 0 or q <= 0 or p + q != N or p < q:
                raise ValueError("CII needs even p>=q>0 with p+q=N")
        if f == "BDI":
            if p is None or q is None or p + q != N or q <= 0 or p < q:
                raise ValueError("BDI needs p>=q>0, p+q=N")
            if N % 2 and p == q:
                raise ValueError("BDI with odd N needs p>q")

    # ------------------------------------------------------------ parsing
    @classmethod
    def parse(cls, s: str) -> "PairType":
        m = re.fullmatch(r"\s*([A-Z0]+)\s*:\s*(\d+)\s*(?:,\s*(\d+))?\s*", s)
        if not m:
            raise ValueError("bad pair type %r" % s)
        fam, a, b = m.group(1), int(m.group(2)), m.group(3)
        b = None if b is None else int(b)
        if fam == "BCD0":
            fam = "BD0"
        if fam in ("DI", "BI", "BDI"):
            if b is None:
                raise ValueError("BDI needs p,q")
            return cls("BDI", a + b, a, b)
        if fam in ("CII", "AIII"):
            if b is None:
                raise ValueError("%s needs p,q" % fam)
            return cls(fam, a + b, a, b)
        if b is not None:
            raise ValueError("%s takes one parameter" % fam)
        if fam in ("CI", "DIII"):
            return cls(fam, 2 * a)
        if fam in ("AI", "AII", "BD0", "C0"):
            return cls(fam, a)
        raise ValueError("unknown family %r" % fam)

    def __str__(self):
        f = self.family
        if f in ("BDI", "CII", "AIII"):
            return "%s:%d,%d" % (f, self.p, self.q)
        if f in ("CI", "DIII"):
            return "%s:%d" % (f, self.N // 2)
        return "%s:%d" % (f, self.N)

    # ------------------------------------------------------------ data
    @property
    def is_gl(self):
        return self.family in ("AI", "AII", "AIII")

    @property
    def bcd(self):
        return not self.is_gl

    @property
    def sign(self):
        """θ-sign: orthogonal or symplectic (t+ or t- for AI/AII)."""
        if self.family in ("AII", "CI", "CII", "C0"):
            return SYMP
        return ORTH

    @property
    def algebra(self) -> Algebra:
        if self.is_gl:
            return Algebra("a", self.N)
        return Algebra("b", self.N, self.sign, kappa_override=self.kappa_override)

    @property
    def kappa(self):
        if self.kappa_override is not None:
            return Fraction(self.kappa_override)
        return self.algebra.kappa

    @property
    def paren(self):
        """The '(±)' flag of the symmetry relation: -1 for CI and DIII, else +1."""
        if self.paren_override is not None:
            return self.paren_override
        return -1 if self.family in ("CI", "DIII") else 1

    @property
    def pm(self):
        """The plain ± sign: +1 orthogonal, -1 symplectic."""
        return 1 if self.sign == ORTH else -1

    @property
    def twisted(self):
        """True when the twisted reflection equation (transposed middle R) applies."""
        return self.family in ("AI", "AII")

    def with_(self, **kw):
        return replace(self, **kw)

    @property
    def G(self) -> MatRF:
        return _gmatrix(self)

    @property
    def eps(self):
        """Diagonal of the constant term for type AIII (ε_i)."""
        if self.family != "AIII":
            raise ValueError("ε only for AIII")
        g = self.G
        return [g.entry(i, i).to_field() for i in range(self.N)]

    def K(self, arg=U) -> MatRF:
        return k_matrix(self, arg)

    def R(self, arg) -> MatRF:
        return self.algebra.R(arg)


def _gmatrix(pt: PairType) -> MatRF:
    N, f = pt.N, pt.family
    labs = signed_labels(N)
    ent = {}

    def put(i, j, x):
        ent[(labs.index(i), labs.index(j))] = x

    n = N // 2
    if f in ("AI", "AII", "BD0", "C0"):
        for i in labs:
            put(i, i, 1)
    elif f == "AIII":
        for k, i in enumerate(labs):
            put(i, i, 1 if k < pt.p else -1)
        if pt.eps_flip:
            i = labs[-1]
            ent[(N - 1, N - 1)] = -ent[(N - 1, N - 1)]
    elif f in ("CI", "DIII"):
        for i in range(1, n + 1):
            put(i, i, 1)
            put(-i, -i, -1)
    elif f == "CII":
        for i in range(1, n + 1):
            s = -1 if i <= pt.q // 2 else 1
            put(i, i, s)
            put(-i, -i, s)
    elif f == "BDI":
        p, q = pt.p, pt.q
        if N % 2 == 0:
            for i in range(1, (p - q) // 2 + 1):
                put(i, i, 1)
                put(-i, -i, 1)
            for i in range((p - q) // 2 + 1, n + 1):
                put(-i, i, 1)
                put(i, -i, 1)
        else:
            h = (p - q - 1) // 2
            for i in range(-h, h + 1):
                put(i, i, 1)
            for i in range((p - q + 1) // 2, (N - 1) // 2 + 1):
                put(-i, i, 1)
                put(i, -i, 1)
    return MatRF.from_entries((N,), ent)


def k_matrix(pt: PairType, arg=U) -> MatRF:
    """K(arg) for the pair type."""
    f = pt.family
    N = pt.N
    if f in ("AI", "AII"):
        return MatRF.identity((N,))
    G = pt.G
    if f in ("BDI", "CII") and pt.p > pt.q:
        c = Fraction(4, pt.p - pt.q)
        x = rf(arg) * c
        return (MatRF.identity((N,)) - G.scale(x)).scale((1 - x).inv())
    return G


# ---------------------------------------------------------------- checks

def check_qybe(alg, *, R=None) -> Report:
    """R12(u)R13(u+v)R23(v) = R23(v)R13(u+v)R12(u) exactly."""
    if isinstance(alg, str):
        alg = Algebra.parse(alg)
    Rf = R or alg.R
    N = alg.N
    legs = (N, N, N)
    r12 = kron_embed(Rf(U), [0, 1], legs)
    r13 = kron_embed(Rf(U + V), [0, 2], legs)
    r23 = kron_embed(Rf(V), [1, 2], legs)
    rep = Report("qybe")
    rep.check(alg.name, chain_equal, Chain([r12, r13, r23]), Chain([r23, r13, r12]))
    return rep


def reflection_sides(R, K1u, K2v, legs, twisted, sign, N):
    """Both sides of RE (or REt when twisted) as chains on ``legs``."""
    emb = lambda m: kron_embed(m, [0, 1], legs)
    r_minus = emb(R(U - V))
    if twisted:
        r_mid = emb(partial_transpose(R(-U - V), 0, sign))
    else:
        r_mid = emb(R(U + V))
    lhs = Chain([r_minus]) * K1u * r_mid * K2v
    rhs = Chain.of(K2v) * r_mid * K1u * r_minus
    return lhs, rhs


def check_scalar_reflection(pt: PairType, *, R=None) -> Report:
    if isinstance(pt, str):
        pt = PairType.parse(pt)
    N = pt.N
    legs = (N, N)
    Rf = R or pt.R
    K1 = kron_embed(pt.K(U), [0], legs)
    K2v = kron_embed(pt.K(V), [1], legs)
    lhs, rhs = reflection_sides(Rf, K1, K2v, legs, pt.twisted, pt.sign, N)
    rep = Report("scalar-k")
    rep.check(str(pt), chain_equal, lhs, rhs)
    return rep


def special_r_identities() -> Report:
    rep = Report("special-r")
    u = U
    sp2 = Algebra("b", 2, SYMP)
    R = sp2.R
    Ro = r_gl
    I4 = MatRF.identity((2, 2))
    P, Qp = _pq(2, ORTH)
    _, Qm = _pq(2, SYMP)
    K = K2()
    K1 = kron_embed(K, [0], (2, 2))
    K2_ = kron_embed(K, [1], (2, 2))
    half = Fraction(1, 2)
    rep.check("sp-gl:1", lambda: R(u).diff_witness(((u - 1) / (u - 2)) * (I4 - P.scale(2 / u))))
    rep.check("sp-gl:2", lambda: R(u).diff_witness(Ro(u / 2).scale((u - 1) / (u - 2))))
    rep.check("sp-gl:3", lambda: R(u).diff_witness(
        partial_transpose(Ro(1 - u / 2), 0, SYMP).scale((u - 1) / u)))
    rep.check("sp-gl:P+Q", lambda: (P + Qm).diff_witness(I4))
    rep.check("so-gl:K1QK1", lambda: (K1 * Qp * K1).diff_witness(Qm))
    rep.check("so-gl:K2QK2", lambda: (K2_ * Qp * K2_).diff_witness(Qm))
    rep.check("so-gl:K2QK1", lambda: (K2_ * Qp * K1).diff_witness(-Qm))
    target = partial_transpose(Ro(1 - u / 2), 0, ORTH).scale((u - 1) / u)
    rep.check("so-gl:K1RK1", lambda: (K1 * R(u) * K1).diff_witness(target))
    rep.check("so-gl:K2RK2", lambda: (K2_ * R(u) * K2_).diff_witness(target))
    rep.check("so-gl:KKR", lambda: (K1 * K2_ * Ro(u)).diff_witness(Ro(u) * K1 * K2_))
    proj = Ro(-1).scale(half)
    rep.check("proj:idem", lambda: (proj * proj).diff_witness(proj))
    rep.check("proj:Rt2", lambda: (proj * partial_transpose(Ro(2), 0, SYMP)).diff_witness(proj))
    rep.check("proj:P", lambda: (proj * P).diff_witness(proj))
    rep.check("unit:t-", lambda: (partial_transpose(Ro(-4 * u + 1), 0, SYMP)
                                  * partial_transpose(Ro(4 * u + 1), 0, SYMP)).diff_witness(I4))
    rep.check("unit:RR", lambda: (Ro(u) * Ro(-u)).diff_witness(I4.scale(1 - u ** -2)))
    rep.check("3ids:proj-t-", lambda: (proj * partial_transpose(Ro(-4 * u + 1), 0, SYMP)).diff_witness(proj))
    rep.check("3ids:t-", lambda: partial_transpose(Ro(-4 * u + 1), 0, SYMP).diff_witness(
        Ro(4 * u).scale(4 * u / (4 * u - 1))))
    rep.check("3ids:projR4u", lambda: (Ro(4 * u) * proj).diff_witness(proj.scale((4 * u - 1) / (4 * u))))
    return rep


# ---------------------------------------------------------------- R_V

def v_isometry() -> Isometry:
    """v-1 = e-1⊗e-1, v0 = (e-1⊗e1 + e1⊗e-1)/√2, v1 = -e1⊗e1."""
    h = "1/2*r2"
    return Isometry([[1, 0, 0, 0], [0, h, h, 0], [0, 0, 0, -1]], (2, 2))


def rv_matrix(arg=U) -> MatRF:
    """R_V(u) = (2u-1)/(2u+1) (I - P_V/u + Q_V/(u-1/2)) on V⊗V."""
    arg = rf(arg)
    return r_matrix("b", 3, ORTH, arg).scale((2 * arg - 1) / (2 * arg + 1))


def rv_lifted(arg=U) -> MatRF:
    """R_V(u) as an operator on (C^2)^{⊗4}: ι R_V ι^t on legs (1,2),(3,4)."""
    iota = v_isometry()
    m = lift_isometry(rv_matrix(arg), iota, 0)
    return lift_isometry(m, iota, 2)


def _ro4(a, b, arg):
    return kron_embed(r_gl(arg), [a, b], (2, 2, 2, 2))


def rv_factorization(which: int, arg=U):
    """The four-leg product forms of R_V(u) (as a Chain on (C^2)^{⊗4})."""
    u = rf(arg)
    p12, p34 = _ro4(0, 1, -1), _ro4(2, 3, -1)
    if which == 0:
        fs = [p12, p34, _ro4(0, 3, 2 * u - 1), _ro4(0, 2, 2 * u), _ro4(1, 3, 2 * u), _ro4(1, 2, 2 * u + 1)]
    elif which == 1:
        fs = [_ro4(1, 2, 2 * u + 1), _ro4(1, 3, 2 * u), _ro4(0, 2, 2 * u), _ro4(0, 3, 2 * u - 1), p12, p34]
    elif which == 2:
        fs = [p12, p34, _ro4(0, 2, 2 * u - 1), _ro4(0, 3, 2 * u), _ro4(1, 2, 2 * u), _ro4(1, 3, 2 * u + 1)]
    elif which == 3:
        fs = [p12, p34, _ro4(1, 2, 2 * u - 1), _ro4(1, 3, 2 * u), _ro4(0, 2, 2 * u), _ro4(0, 3, 2 * u + 1)]
    else:
        raise ValueError("factorization index 0..3")
    return Chain(fs, Fraction(1, 4))


def rv_matrix_and_factorizations() -> Report:
    rep = Report("rv")
    iota = v_isometry()
    RV = rv_matrix(U)
    # restriction of the 4-leg forms to V⊗V
    for k in range(4):
        f = rv_factorization(k).dense()
        r = restrict_isometry(restrict_isometry(f, iota, [0, 1]), iota, [1, 2])
        rep.check("rv:%d" % k, r.diff_witness, RV)
    lifted = rv_lifted(U)
    for k in range(4):
        rep.check("rv:%d-lifted" % k, chain_equal, rv_factorization(k), Chain([lifted]))
    p12, p34 = _ro4(0, 1, -1), _ro4(2, 3, -1)
    q = Fraction(1, 4)
    rep.check("RRR=R:right", lambda: (lifted * p12 * p34).scale(q).diff_witness(lifted))
    rep.check("RRR=R:left", lambda: (p12 * p34 * lifted).scale(q).diff_witness(lifted))
    # QYBE for R_V on V⊗V⊗V
    legs = (3, 3, 3)
    a = kron_embed(rv_matrix(U), [0, 1], legs)
    b = kron_embed(rv_matrix(U + V), [0, 2], legs)
    c = kron_embed(rv_matrix(V), [1, 2], legs)
    rep.check("rv:qybe", chain_equal, Chain([a, b, c]), Chain([c, b, a]))
    # projector onto V
    proj = r_gl(-1).scale(Fraction(1, 2))
    rep.check("proj:restrict", restrict_isometry(proj, iota).diff_witness, MatRF.identity((3,)))
    rep.check("proj:equals-iota", proj.diff_witness, iota.projector())
    return rep


# ---------------------------------------------------------------- scalars

def p_gamma_theta(pt: PairType, arg=U):
    """(p, γ, θ); entries not defined for the family are None."""
    if isinstance(pt, str):
        pt = PairType.parse(pt)
    u = rf(arg)
    p = g = th = None
    f = pt.family
    if pt.bcd:
        kap = pt.kappa
        trK = pt.K(u).trace()
        p = pt.paren - pt.pm / (2 * u - kap) + trK / (2 * u - 2 * kap)
    elif f in ("AI", "AII"):
        pm = 1 if f == "AI" else -1
        p = rf(pt.paren) - pm / (2 * u)
        g = rf(1) if f == "AI" else (2 * u + 1) / (2 * u - pt.N + 1)
    else:
        N, q = pt.N, pt.q
        th = rf((-1) ** q)
        for i in range(1, q + 1):
            th = th * (2 * (u - N + i))
        for i in range(1, N - q + 1):
            th = th * (2 * (u - N + i))
        for i in range(1, N + 1):
            th = th / (2 * u - 2 * N + i + 1)
    return p, g, th


def check_p_identity(pt: PairType):
    """p(u)p(κ-u) = 1 - (2u-κ)^-2; None or a residual string."""
    p, _, _ = p_gamma_theta(pt, U)
    kap = 0 if pt.is_gl else pt.kappa
    p2, _, _ = p_gamma_theta(pt, kap - U)
    lhs = p * p2
    rhs = 1 - (2 * U - kap) ** -2
    if lhs == rhs:
        return None
    return "residual %s" % (lhs - rhs)


PAIR_TYPES = (
    "AI:2", "AII:2", "AIII:2,0", "AIII:1,1", "CI:1", "CI:2", "DIII:2",
    "BD0:2", "BD0:3", "BD0:4", "C0:2", "C0:4", "BDI:2,1", "BDI:3,1", "BDI:2,2", "CII:2,2",
)
