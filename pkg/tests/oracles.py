"""Reference values computed independently with sympy, then frozen.

Each frozen string is re-derived by tests/test_oracles.py, so a drift in
either the oracle or the frozen value shows up as a failure."""
import sympy as sp

u = sp.Symbol("u")

FROZEN = {
    # θ(u) for gl_2 with q = 0
    "theta_N2_q0": "2*u/(2*u - 1)",
    # Sklyanin determinant of S = I for the two twisted Yangians of gl_2
    "sdet_identity_plus": "1",
    "sdet_identity_minus": "(2*u + 1)/(2*u - 1)",
    # p(u) for the (sp2, gl1) pair and the product p(u)p(κ-u)
    "p_CI1": "(3 - 2*u)/(2*u - 2)",
    "p_product_CI1": "1 - 1/(2*u - 2)**2",
    # z(u) of a 1-site sp2 evaluation rep at the point a1 (T = R(u - a1))
    "z_sp2_eval": "(u - a1 - 1)*(u - a1 + 1)/(u - a1)**2",
    # qdet of a 1-site gl2 evaluation rep T(u) = I - P/(u - a1)
    "qdet_gl2_eval": "(u - a1 - 2)/(u - a1 - 1)",
}


def theta(N, q):
    th = sp.Integer(-1) ** q
    for i in range(1, q + 1):
        th *= 2 * (u - N + i)
    for i in range(1, N - q + 1):
        th *= 2 * (u - N + i)
    for i in range(1, N + 1):
        th /= 2 * u - 2 * N + i + 1
    return sp.factor(th)


def sdet_identity(plus):
    # sdet S = γ(u) [s11(u-1)s11(-u) ∓ s12(u-1)s21(-u)] with S = I
    pre = (2 * u + 1) / (2 * u + (1 if plus else -1))
    S = sp.eye(2)
    return sp.simplify(pre * (S[0, 0] * S[0, 0] + (-1 if plus else 1) * S[0, 1] * S[1, 0]))


def p_of(arg, paren, pm, kappa, trK):
    return paren - sp.Rational(pm) / (2 * arg - kappa) + trK / (2 * arg - 2 * kappa)


def p_ci1():
    # CI, n = 1: (±) = -1, symplectic, κ = 2, K = diag(1, -1)
    K = sp.diag(1, -1)
    return sp.factor(p_of(u, -1, -1, 2, K.trace()))


def p_product_ci1():
    return sp.factor(p_ci1() * p_ci1().subs(u, 2 - u))


def sp2_r(x):
    """Kind-b R for sp2 in the (-1, 1) label ordering: I - P/x + Q/(x - κ)."""
    P = sp.zeros(4)
    for i in range(2):
        for j in range(2):
            P[2 * i + j, 2 * j + i] = 1
    # Q = Σ θ_i θ_j E_{ij} ⊗ E_{-i,-j} with θ = (-1, 1) for labels (-1, 1)
    th = (-1, 1)
    Q = sp.zeros(4)
    for i in range(2):
        for j in range(2):
            Q[2 * i + (1 - i), 2 * j + (1 - j)] = th[i] * th[j]
    return sp.eye(4) - P / x + Q / (x - 2)


def z_sp2_eval():
    # T(u) = R(u - a), z(u) from T(u+κ)^t T(u) = z(u) I, transpose taken on the auxiliary leg
    a = sp.Symbol("a1")
    T = sp2_r(u - a)
    Tk = sp2_r(u + 2 - a)
    th = (-1, 1)

    def ptrans(M):
        out = sp.zeros(4)
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        out[2 * i + k, 2 * j + l] = th[i] * th[j] * M[2 * (1 - j) + k, 2 * (1 - i) + l]
        return out

    prod = sp.simplify(ptrans(Tk) * T)
    z = sp.factor(prod[0, 0])
    assert sp.simplify(prod - z * sp.eye(4)) == sp.zeros(4)
    return z


def qdet_gl2_eval():
    a = sp.Symbol("a1")
    P = sp.zeros(4)
    for i in range(2):
        for j in range(2):
            P[2 * i + j, 2 * j + i] = 1
    T = lambda x: sp.eye(4) - P / (x - a)
    blk = lambda x, i, j: T(x)[2 * i:2 * i + 2, 2 * j:2 * j + 2]
    q = sp.simplify(blk(u - 1, 0, 0) * blk(u, 1, 1) - blk(u - 1, 0, 1) * blk(u, 1, 0))
    assert sp.simplify(q - q[0, 0] * sp.eye(2)) == sp.zeros(2)
    return sp.factor(q[0, 0])


def compute_all():
    return {
        "theta_N2_q0": theta(2, 0),
        "sdet_identity_plus": sdet_identity(True),
        "sdet_identity_minus": sdet_identity(False),
        "p_CI1": p_ci1(),
        "p_product_CI1": p_product_ci1(),
        "z_sp2_eval": z_sp2_eval(),
        "qdet_gl2_eval": qdet_gl2_eval(),
    }


def frozen_sympy(name):
    return sp.sympify(FROZEN[name], locals={"u": u, "a1": sp.Symbol("a1")})
