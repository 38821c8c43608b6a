"""Matrices over RatFunc with a tensor-leg structure.

A MatRF stores sparse polynomial numerators over one common denominator.
Indices are flattened row-major over the legs; a leg of dimension n is
labelled -m..-1,(0),1..m in that order.
"""
from __future__ import annotations

from functools import reduce
from itertools import product as iproduct
from math import prod

from .polyrat import (ONE, ZERO, RatFunc, const, exact_div, is_alg, rf,
                      rationalize, red, norm_factor)
from .scalars import FieldElem

__all__ = [
    "MatRF", "Chain", "Isometry", "signed_labels", "kron_embed",
    "partial_transpose", "mat_inverse", "perm_and_q", "f_basis_check",
    "restrict_isometry", "lift_isometry", "scalar_multiple_of", "Witness",
    "chain_equal", "chain_scalar", "ORTH", "SYMP", "matrix_unit",
]

ORTH = "orth"
SYMP = "symp"

_GCD_DEG = 10


def signed_labels(n: int):
    m = n // 2
    labs = list(range(-m, 0))
    if n % 2:
        labs.append(0)
    labs += list(range(1, m + 1))
    return labs


def _sgn(lab):
    return -1 if lab < 0 else 1


def _theta(i, j, sign):
    if sign == ORTH:
        return 1
    return _sgn(i) * _sgn(j)


class Witness:
    """First offending entry of a failed comparison."""

    __slots__ = ("row", "col", "residual", "legs", "note")

    def __init__(self, row, col, residual, legs=None, note=""):
        self.row = row
        self.col = col
        self.residual = residual
        self.legs = legs
        self.note = note

    def coords(self):
        if not self.legs:
            return (self.row, self.col)
        return (_label_tuple(self.row, self.legs), _label_tuple(self.col, self.legs))

    def __str__(self):
        r, c = self.coords()
        s = "entry %s,%s residual %s" % (r, c, self.residual)
        if self.note:
            s = self.note + ": " + s
        return s

    __repr__ = __str__


def _digits(idx, legs):
    out = []
    for d in reversed(legs):
        idx, r = divmod(idx, d)
        out.append(r)
    return out[::-1]


def _label_tuple(idx, legs):
    return tuple(signed_labels(d)[k] for k, d in zip(_digits(idx, legs), legs))


def _strides(legs):
    s = [1] * len(legs)
    for k in range(len(legs) - 2, -1, -1):
        s[k] = s[k + 1] * legs[k + 1]
    return s


def _add_into(acc, j, t):
    x = acc.get(j)
    acc[j] = t if x is None else x + t


class MatRF:
    __slots__ = ("legs", "rows", "den", "_alg", "_cols")

    def __init__(self, legs, rows, den=ONE, normalize=False):
        self.legs = tuple(legs)
        self.rows = rows
        if not den.is_one() and is_alg(den):
            c = norm_factor(den)
            den = red(den * c)
            self.rows = rows = {i: {j: red(p * c) for j, p in r.items()} for i, r in rows.items()}
        lc = den.leading_coefficient()
        if lc != 1:
            inv = 1 / lc
            den = den * inv
            self.rows = {i: {j: p * inv for j, p in r.items()} for i, r in self.rows.items()}
        self.den = den
        self._alg = None
        self._cols = None
        if normalize:
            self._normalize()

    # ---------------------------------------------------------- basics
    @property
    def dim(self):
        return prod(self.legs)

    @property
    def alg(self):
        if self._alg is None:
            self._alg = any(is_alg(p) for r in self.rows.values() for p in r.values())
        return self._alg

    @classmethod
    def identity(cls, legs):
        n = prod(legs)
        return cls(legs, {i: {i: ONE} for i in range(n)})

    @classmethod
    def zero(cls, legs):
        return cls(legs, {})

    @classmethod
    def from_entries(cls, legs, entries):
        """entries: {(i, j): scalar or RatFunc}."""
        ents = {k: rf(v) for k, v in entries.items()}
        ents = {k: v for k, v in ents.items() if v}
        den = ONE
        for v in ents.values():
            if not v.den.is_one():
                g = den.gcd(v.den)
                den = den * (v.den / g)
        rows = {}
        for (i, j), v in ents.items():
            num = v.num if v.den == den else v.num * (den / v.den)
            rows.setdefault(i, {})[j] = num
        return cls(legs, rows, den)

    @classmethod
    def from_rows(cls, legs, rows):
        """rows: list of lists of scalars/RatFunc."""
        return cls.from_entries(legs, {(i, j): x for i, r in enumerate(rows)
                                       for j, x in enumerate(r) if x != 0})

    @classmethod
    def diag(cls, legs, values):
        return cls.from_entries(legs, {(i, i): x for i, x in enumerate(values)})

    def entry(self, i, j) -> RatFunc:
        p = self.rows.get(i, {}).get(j)
        if p is None:
            return RatFunc(0)
        return RatFunc(p, self.den)

    def __getitem__(self, ij):
        return self.entry(*ij)

    def label_index(self, labels):
        """Flat index from a tuple of signed labels (one per leg)."""
        idx = 0
        for d, lab in zip(self.legs, labels):
            idx = idx * d + signed_labels(d).index(lab)
        return idx

    def at(self, rlabels, clabels) -> RatFunc:
        return self.entry(self.label_index(rlabels), self.label_index(clabels))

    def entries(self):
        for i, r in self.rows.items():
            for j, p in r.items():
                yield i, j, RatFunc(p, self.den)

    def nnz(self):
        return sum(len(r) for r in self.rows.values())

    def cols(self):
        if self._cols is None:
            c = {}
            for i, r in self.rows.items():
                for j, p in r.items():
                    c.setdefault(j, []).append((i, p))
            self._cols = c
        return self._cols

    def to_lists(self):
        n = self.dim
        return [[self.entry(i, j) for j in range(n)] for i in range(n)]

    def __repr__(self):
        return "MatRF(legs=%s, nnz=%d)" % (self.legs, self.nnz())

    def pretty(self):
        return "\n".join("  ".join(str(x) for x in row) for row in self.to_lists())

    # ---------------------------------------------------------- arithmetic
    def _check_legs(self, o):
        if self.legs != o.legs:
            raise ValueError("leg mismatch %s vs %s" % (self.legs, o.legs))

    def __add__(self, o):
        if not isinstance(o, MatRF):
            o = MatRF.identity(self.legs).scale(o)
        self._check_legs(o)
        if self.den == o.den:
            a, b, den = ONE, ONE, self.den
        else:
            g = self.den.gcd(o.den)
            a = o.den / g
            b = self.den / g
            den = self.den * a
        rows = {}
        for i, r in self.rows.items():
            rows[i] = {j: p * a for j, p in r.items()} if not a.is_one() else dict(r)
        for i, r in o.rows.items():
            acc = rows.setdefault(i, {})
            for j, p in r.items():
                _add_into(acc, j, p * b if not b.is_one() else p)
        rows = _prune(rows)
        return MatRF(self.legs, rows, den)

    def __radd__(self, o):
        return self + o

    def __neg__(self):
        return MatRF(self.legs, {i: {j: -p for j, p in r.items()} for i, r in self.rows.items()}, self.den)

    def __sub__(self, o):
        if not isinstance(o, MatRF):
            o = MatRF.identity(self.legs).scale(o)
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def scale(self, s):
        s = rf(s)
        if s.is_zero():
            return MatRF.zero(self.legs)
        n, d = s.num, s.den
        need = self.alg and is_alg(n)
        rows = {}
        for i, r in self.rows.items():
            if n.is_one():
                rows[i] = dict(r)
            else:
                rows[i] = {j: (red(p * n) if need else p * n) for j, p in r.items()}
        return MatRF(self.legs, rows, self.den * d, normalize=not d.is_one())

    def __mul__(self, o):
        if isinstance(o, Chain):
            return Chain([self]) * o
        if not isinstance(o, MatRF):
            return self.scale(o)
        self._check_legs(o)
        need = self.alg and o.alg
        orows = o.rows
        rows = {}
        for i, r in self.rows.items():
            acc = {}
            for k, a in r.items():
                br = orows.get(k)
                if not br:
                    continue
                for j, b in br.items():
                    t = a * b
                    x = acc.get(j)
                    acc[j] = t if x is None else x + t
            if need:
                acc = {j: red(p) for j, p in acc.items()}
            acc = {j: p for j, p in acc.items() if not p.is_zero()}
            if acc:
                rows[i] = acc
        out = MatRF(self.legs, rows, self.den * o.den)
        if out.den.total_degree() > _GCD_DEG:
            out._normalize()
        return out

    def __rmul__(self, o):
        return self.scale(o)

    def __truediv__(self, s):
        return self.scale(rf(s).inv())

    def _normalize(self):
        """Divide out a common factor of all numerators and the denominator."""
        if self.den.is_constant():
            return self
        g = self.den
        for r in self.rows.values():
            for p in r.values():
                g = g.gcd(p)
                if g.is_constant():
                    return self
        if not self.rows:
            self.den = ONE
            return self
        self.rows = {i: {j: p / g for j, p in r.items()} for i, r in self.rows.items()}
        den = self.den / g
        lc = den.leading_coefficient()
        if lc != 1:
            inv = 1 / lc
            den = den * inv
            self.rows = {i: {j: p * inv for j, p in r.items()} for i, r in self.rows.items()}
        self.den = den
        self._cols = None
        return self

    def normalized(self):
        m = MatRF(self.legs, self.rows, self.den)
        return m._normalize()

    # ---------------------------------------------------------- comparison
    def diff_witness(self, o, note=""):
        """None if equal, else a Witness for the first differing entry."""
        if isinstance(o, Chain):
            return chain_equal(Chain([self]), o, note)
        if not isinstance(o, MatRF):
            o = MatRF.identity(self.legs).scale(o)
        self._check_legs(o)
        d1, d2 = self.den, o.den
        same = d1 == d2
        keys = sorted(set(self.rows) | set(o.rows))
        for i in keys:
            r1 = self.rows.get(i, {})
            r2 = o.rows.get(i, {})
            for j in sorted(set(r1) | set(r2)):
                a = r1.get(j, ZERO)
                b = r2.get(j, ZERO)
                if same:
                    diff = a - b
                else:
                    diff = red(a * d2 - b * d1)
                if not diff.is_zero():
                    res = RatFunc(a, d1) - RatFunc(b, d2)
                    return Witness(i, j, res, self.legs, note)
        return None

    def equals(self, o):
        return self.diff_witness(o) is None

    def __eq__(self, o):
        if isinstance(o, (MatRF, Chain)):
            return self.diff_witness(o) is None
        return NotImplemented

    __hash__ = None

    def is_zero(self):
        return not self.rows

    # ---------------------------------------------------------- structure
    def transpose(self):
        rows = {}
        for i, r in self.rows.items():
            for j, p in r.items():
                rows.setdefault(j, {})[i] = p
        return MatRF(self.legs, rows, self.den)

    def partial_transpose(self, leg, sign=ORTH):
        return partial_transpose(self, leg, sign)

    def embed(self, positions, total_legs):
        return kron_embed(self, positions, total_legs)

    def kron(self, o):
        n = len(self.legs)
        tot = self.legs + o.legs
        return kron_embed(self, list(range(n)), tot) * kron_embed(o, list(range(n, len(tot))), tot)

    def inverse(self):
        return mat_inverse(self)

    def subs(self, mapping):
        """Substitute variables (var -> RatFunc) in every entry."""
        return _mat_subs(self, mapping)

    def trace(self) -> RatFunc:
        acc = ZERO
        for i, r in self.rows.items():
            p = r.get(i)
            if p is not None:
                acc = acc + p
        return RatFunc(acc, self.den)

    def relabel_legs(self, legs):
        if prod(legs) != self.dim:
            raise ValueError("dimension mismatch")
        return MatRF(legs, self.rows, self.den)


def _prune(rows):
    out = {}
    for i, r in rows.items():
        r = {j: p for j, p in r.items() if not p.is_zero()}
        if r:
            out[i] = r
    return out


def _mat_subs(m, mapping):
    from .polyrat import subs_rf
    ents = {}
    for i, r in m.rows.items():
        for j, p in r.items():
            ents[(i, j)] = p
    den = subs_rf(RatFunc(m.den, reduce=False), mapping)
    out = {}
    for k, p in ents.items():
        out[k] = subs_rf(RatFunc(p, reduce=False), mapping)
    # recombine on a common denominator
    res = MatRF.from_entries(m.legs, out)
    return res.scale(den.inv())


# ------------------------------------------------------------------ chains

class Chain:
    """Lazy product of MatRF factors on a common leg structure, times a scalar."""

    __slots__ = ("factors", "scalar", "legs")

    def __init__(self, factors, scalar=None):
        factors = list(factors)
        if not factors:
            raise ValueError("empty chain")
        self.legs = factors[0].legs
        for f in factors:
            if f.legs != self.legs:
                raise ValueError("leg mismatch in chain")
        self.factors = factors
        self.scalar = rf(1) if scalar is None else rf(scalar)

    @classmethod
    def of(cls, x):
        return x if isinstance(x, Chain) else cls([x])

    def __mul__(self, o):
        if isinstance(o, Chain):
            return Chain(self.factors + o.factors, self.scalar * o.scalar)
        if isinstance(o, MatRF):
            return Chain(self.factors + [o], self.scalar)
        return Chain(self.factors, self.scalar * rf(o))

    def __rmul__(self, o):
        if isinstance(o, MatRF):
            return Chain([o] + self.factors, self.scalar)
        return Chain(self.factors, self.scalar * rf(o))

    def scale(self, s):
        return Chain(self.factors, self.scalar * rf(s))

    def embed(self, positions, total_legs):
        return Chain([kron_embed(f, positions, total_legs) for f in self.factors], self.scalar)

    def dense(self) -> MatRF:
        m = reduce(lambda a, b: a * b, self.factors)
        if not self.scalar == 1:
            m = m.scale(self.scalar)
        return m

    def inverse(self):
        return Chain([mat_inverse(f) for f in reversed(self.factors)], self.scalar.inv())

    def column(self, j):
        """(numerator vector {row: poly}, denominator) of column j."""
        vec = {j: ONE}
        den = ONE
        algv = False
        for f in reversed(self.factors):
            cols = f.cols()
            need = algv and f.alg
            out = {}
            for k, x in vec.items():
                for i, p in cols.get(k, ()):
                    t = p * x
                    y = out.get(i)
                    out[i] = t if y is None else y + t
            if need:
                out = {i: red(p) for i, p in out.items()}
            vec = {i: p for i, p in out.items() if not p.is_zero()}
            den = den * f.den
            algv = algv or f.alg
        s = self.scalar
        if not s.num.is_one():
            vec = {i: red(p * s.num) for i, p in vec.items()}
        den = den * s.den
        return vec, den

    def __eq__(self, o):
        return chain_equal(self, Chain.of(o)) is None

    __hash__ = None


def chain_equal(lhs, rhs, note=""):
    """Column-by-column exact comparison; None or Witness."""
    lhs, rhs = Chain.of(lhs), Chain.of(rhs)
    if lhs.legs != rhs.legs:
        raise ValueError("leg mismatch")
    n = prod(lhs.legs)
    for j in range(n):
        vl, dl = lhs.column(j)
        vr, dr = rhs.column(j)
        same = dl == dr
        for i in sorted(set(vl) | set(vr)):
            a = vl.get(i, ZERO)
            b = vr.get(i, ZERO)
            diff = (a - b) if same else red(a * dr - b * dl)
            if not diff.is_zero():
                return Witness(i, j, RatFunc(a, dl) - RatFunc(b, dr), lhs.legs, note)
    return None


def chain_scalar(op, ref=None):
    """λ with op = λ·ref (ref defaults to the identity), or a Witness."""
    op = Chain.of(op)
    n = prod(op.legs)
    if ref is None:
        lam = None
        for j in range(n):
            v, d = op.column(j)
            for i, p in v.items():
                if i != j:
                    return Witness(i, j, RatFunc(p, d), op.legs, "not diagonal")
            val = RatFunc(v.get(j, ZERO), d)
            if lam is None:
                lam = val
            elif not val == lam:
                return Witness(j, j, val - lam, op.legs, "not scalar")
        return lam
    ref = ref.dense() if isinstance(ref, Chain) else ref
    if ref.legs != op.legs:
        raise ValueError("leg mismatch")
    rcols = ref.cols()
    lam = None
    for j in range(n):
        v, d = op.column(j)
        want = dict(rcols.get(j, ()))
        for i in sorted(set(v) | set(want)):
            val = RatFunc(v.get(i, ZERO), d)
            r = want.get(i)
            if r is None:
                if not val.num.is_zero():
                    return Witness(i, j, val, op.legs, "not a scalar multiple")
                continue
            r = RatFunc(r, ref.den)
            if lam is None:
                lam = val / r
            elif not val == lam * r:
                return Witness(i, j, val - lam * r, op.legs, "not a scalar multiple")
    if lam is None:
        raise ValueError("reference is zero")
    return lam


# ------------------------------------------------------------------ legs

def kron_embed(op: MatRF, positions, total_legs) -> MatRF:
    """op acting on the legs ``positions`` (0-based) of ``total_legs``."""
    total_legs = tuple(total_legs)
    positions = list(positions)
    if len(positions) != len(op.legs):
        raise ValueError("leg count mismatch")
    for p, d in zip(positions, op.legs):
        if total_legs[p] != d:
            raise ValueError("dimension mismatch on leg %d" % p)
    if len(set(positions)) != len(positions):
        raise ValueError("repeated leg")
    if tuple(positions) == tuple(range(len(total_legs))):
        return op if op.legs == total_legs else op.relabel_legs(total_legs)
    st = _strides(total_legs)
    off_op = []
    for idx in range(op.dim):
        dg = _digits(idx, op.legs)
        off_op.append(sum(d * st[p] for d, p in zip(dg, positions)))
    rest = [k for k in range(len(total_legs)) if k not in positions]
    off_rest = [0]
    for k in rest:
        off_rest = [o + d * st[k] for o in off_rest for d in range(total_legs[k])]
    rows = {}
    for i, r in op.rows.items():
        oi = off_op[i]
        items = [(off_op[j], p) for j, p in r.items()]
        for m in off_rest:
            rows[oi + m] = {oj + m: p for oj, p in items}
    return MatRF(total_legs, rows, op.den)


def partial_transpose(op: MatRF, leg: int, sign=ORTH) -> MatRF:
    """(E_ij)^t = θ_ij E_{-j,-i} on one leg; θ = 1 (t+) or sgn i sgn j (t-)."""
    if sign not in (ORTH, SYMP):
        raise ValueError("theta sign must be orth or symp")
    legs = op.legs
    n = legs[leg]
    if sign == SYMP and n % 2:
        raise ValueError("symplectic transpose on odd leg")
    st = _strides(legs)[leg]
    labs = signed_labels(n)
    rows = {}
    for i, r in op.rows.items():
        a = (i // st) % n
        base_i = i - a * st
        for j, p in r.items():
            b = (j // st) % n
            base_j = j - b * st
            # new row component -b, new col component -a
            ni = base_i + (n - 1 - b) * st
            nj = base_j + (n - 1 - a) * st
            if sign == SYMP and _sgn(labs[a]) * _sgn(labs[b]) < 0:
                p = -p
            rows.setdefault(ni, {})[nj] = p
    return MatRF(legs, rows, op.den)


# ------------------------------------------------------------------ inverse

def _bareiss_inverse(rows_dense, n):
    """Fraction-free Gauss-Jordan on [A | I]; returns (det, adj) with A·adj = det·I."""
    M = [list(r) + [ONE if k == i else ZERO for k in range(n)] for i, r in enumerate(rows_dense)]
    prev = ONE
    sign = 1
    for k in range(n):
        piv = None
        for r in range(k, n):
            if not M[r][k].is_zero():
                piv = r
                break
        if piv is None:
            return ZERO, None
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        akk = M[k][k]
        rowk = M[k]
        for i in range(n):
            if i == k:
                continue
            rowi = M[i]
            aik = rowi[k]
            for j in range(2 * n):
                if j == k:
                    continue
                x = red(akk * rowi[j] - aik * rowk[j])
                if not prev.is_one():
                    x = exact_div(x, prev) if not x.is_zero() else x
                rowi[j] = x
            rowi[k] = ZERO
        # rows above already scaled consistently; keep pivot row as is but
        # bring it to the same scale as the others
        if not prev.is_one():
            for j in range(2 * n):
                if j != k:
                    rowk[j] = rowk[j]  # unchanged by construction
        prev = akk
    # now M[i][i] = det for all i after full elimination (up to pivot scaling)
    return prev, M


def _blocks(op: MatRF):
    """Connected components of the sparsity pattern (index sets closed under rows/cols)."""
    n = op.dim
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, r in op.rows.items():
        for j in r:
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    comps = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return list(comps.values())


def _invert_block(A, n):
    det, M = _bareiss_inverse(A, n)
    if M is None or det.is_zero():
        raise ZeroDivisionError("singular matrix (zero determinant)")
    for i in range(n):
        if not red(M[i][i] - det).is_zero():
            raise ArithmeticError("inconsistent fraction-free diagonal")
    return det, [[M[i][n + j] for j in range(n)] for i in range(n)]


def mat_inverse(op: MatRF) -> MatRF:
    """Exact inverse by fraction-free elimination, block by block."""
    ents = {}
    for comp in _blocks(op):
        k = len(comp)
        A = [[op.rows.get(i, {}).get(j, ZERO) for j in comp] for i in comp]
        det, adj = _invert_block(A, k)
        # block inverse = op.den * adj / det
        for a, i in enumerate(comp):
            for b, j in enumerate(comp):
                p = adj[a][b]
                if not p.is_zero():
                    ents[(i, j)] = RatFunc(red(p * op.den), det)
    return MatRF.from_entries(op.legs, ents)._normalize()


# ------------------------------------------------------------------ P, Q, F

def matrix_unit(n, i, j, legs=None):
    labs = signed_labels(n)
    return MatRF(legs or (n,), {labs.index(i): {labs.index(j): ONE}})


def perm_and_q(N: int, sign=ORTH):
    """P = sum E_ij ⊗ E_ji and Q = sum θ_ij E_ij ⊗ E_{-i,-j} on C^N ⊗ C^N."""
    if sign == SYMP and N % 2:
        raise ValueError("symplectic requires even N")
    labs = signed_labels(N)
    pos = {l: k for k, l in enumerate(labs)}
    prow, qrow = {}, {}
    for i in labs:
        for j in labs:
            # P: (i,j) -> row (i,j), col (j,i)
            prow.setdefault(pos[i] * N + pos[j], {})[pos[j] * N + pos[i]] = ONE
            th = _theta(i, j, sign)
            qrow.setdefault(pos[i] * N + pos[-i], {})[pos[j] * N + pos[-j]] = const(th)
    P = MatRF((N, N), prow)
    Q = MatRF((N, N), qrow)
    pm = 1 if sign == ORTH else -1
    I = MatRF.identity((N, N))
    assert (P * P).equals(I)
    assert (P * Q).equals(Q.scale(pm)) and (Q * P).equals(Q.scale(pm))
    assert (Q * Q).equals(Q.scale(N))
    return P, Q


def f_basis_check(N: int, sign=ORTH) -> bool:
    labs = signed_labels(N)
    E = {(i, j): matrix_unit(N, i, j) for i in labs for j in labs}
    F = {(i, j): E[i, j] - E[-j, -i].scale(_theta(i, j, sign)) for i in labs for j in labs}
    Z = MatRF.zero((N,))
    for i in labs:
        for j in labs:
            if not (F[i, j] + F[-j, -i].scale(_theta(i, j, sign))).equals(Z):
                return False
    for i, j, k, l in iproduct(labs, repeat=4):
        lhs = F[i, j] * F[k, l] - F[k, l] * F[i, j]
        rhs = Z
        if j == k:
            rhs = rhs + F[i, l]
        if i == l:
            rhs = rhs - F[k, j]
        if j == -l:
            rhs = rhs + F[k, -i].scale(_theta(i, j, sign))
        if i == -k:
            rhs = rhs - F[-j, l].scale(_theta(i, j, sign))
        if not lhs.equals(rhs):
            return False
    return True


# ------------------------------------------------------------------ isometries

class Isometry:
    """Columns of a subspace embedding; the bilinear pairing is used (no conjugation)."""

    def __init__(self, columns, ambient_legs):
        self.ambient_legs = tuple(ambient_legs)
        self.columns = [[FieldElem.parse(x) if isinstance(x, str) else
                         (x if isinstance(x, FieldElem) else FieldElem(x)) for x in c]
                        for c in columns]
        n = prod(self.ambient_legs)
        for c in self.columns:
            if len(c) != n:
                raise ValueError("column length mismatch")
        k = len(self.columns)
        for a in range(k):
            for b in range(k):
                s = FieldElem(0)
                for x, y in zip(self.columns[a], self.columns[b]):
                    s = s + x * y
                if s != (1 if a == b else 0):
                    raise ValueError("columns are not orthonormal for the bilinear pairing")
        # sparse rows: ambient index -> {column: poly}
        self._rows = {}
        for b, c in enumerate(self.columns):
            for a, x in enumerate(c):
                if x:
                    self._rows.setdefault(a, {})[b] = const(x)

    @property
    def k(self):
        return len(self.columns)

    def projector(self):
        """ι ι^t on the ambient space."""
        n = prod(self.ambient_legs)
        rows = {}
        for a, ra in self._rows.items():
            for c in range(n):
                rc = self._rows.get(c, {})
                acc = ZERO
                for b, x in ra.items():
                    y = rc.get(b)
                    if y is not None:
                        acc = acc + x * y
                acc = red(acc)
                if not acc.is_zero():
                    rows.setdefault(a, {})[c] = acc
        return MatRF(self.ambient_legs, rows)


def _split_index(legs, positions):
    """Maps flat index -> (ambient index over positions, rest tuple digits)."""
    others = [k for k in range(len(legs)) if k not in positions]
    amb_legs = [legs[p] for p in positions]
    out = []
    for idx in range(prod(legs)):
        d = _digits(idx, legs)
        a = 0
        for p, dl in zip(positions, amb_legs):
            a = a * dl + d[p]
        out.append((a, tuple(d[o] for o in others)))
    return out, others


def restrict_isometry(op: MatRF, iota: Isometry, positions=None) -> MatRF:
    """ι^t · op · ι acting on the legs ``positions`` (default: leading legs)."""
    if positions is None:
        positions = list(range(len(iota.ambient_legs)))
    positions = list(positions)
    if tuple(op.legs[p] for p in positions) != iota.ambient_legs:
        raise ValueError("dimension mismatch for restriction")
    split, others = _split_index(op.legs, positions)
    first = positions[0]
    new_legs = []
    for k in range(len(op.legs)):
        if k == first:
            new_legs.append(iota.k)
        elif k in others:
            new_legs.append(op.legs[k])
    # position of the new leg among new_legs
    new_pos = sorted(others + [first]).index(first)
    new_others = [k for k in range(len(new_legs)) if k != new_pos]
    nst = _strides(new_legs)

    def flat(b, rest):
        return b * nst[new_pos] + sum(d * nst[k] for d, k in zip(rest, new_others))

    rows = {}
    irows = iota._rows
    for i, r in op.rows.items():
        ai, resti = split[i]
        ci = irows.get(ai)
        if not ci:
            continue
        for j, p in r.items():
            aj, restj = split[j]
            cj = irows.get(aj)
            if not cj:
                continue
            for b, x in ci.items():
                xi = x * p
                fi = flat(b, resti)
                acc = rows.setdefault(fi, {})
                for bb, y in cj.items():
                    _add_into(acc, flat(bb, restj), xi * y)
    rows = {i: {j: red(p) for j, p in r.items()} for i, r in rows.items()}
    return MatRF(new_legs, _prune(rows), op.den, normalize=True)


def lift_isometry(op: MatRF, iota: Isometry, position=0) -> MatRF:
    """ι · op · ι^t: replace leg ``position`` by the ambient legs of ι."""
    legs = op.legs
    new_legs = list(legs[:position]) + list(iota.ambient_legs) + list(legs[position + 1:])
    na = len(iota.ambient_legs)
    amb = prod(iota.ambient_legs)
    # columns of iota: b -> {a: poly}
    icol = {}
    for a, r in iota._rows.items():
        for b, x in r.items():
            icol.setdefault(b, {})[a] = x
    st_old = _strides(legs)
    st_new = _strides(new_legs)
    k = legs[position]

    def split(idx):
        d = _digits(idx, legs)
        return d[position], d[:position], d[position + 1:]

    def flat(a, pre, post):
        ad = _digits(a, iota.ambient_legs)
        dg = list(pre) + ad + list(post)
        return sum(x * s for x, s in zip(dg, st_new))

    rows = {}
    for i, r in op.rows.items():
        bi, prei, posti = split(i)
        for j, p in r.items():
            bj, prej, postj = split(j)
            for a, x in icol.get(bi, {}).items():
                fi = flat(a, prei, posti)
                acc = rows.setdefault(fi, {})
                xp = x * p
                for c, y in icol.get(bj, {}).items():
                    _add_into(acc, flat(c, prej, postj), xp * y)
    rows = {i: {j: red(p) for j, p in r.items()} for i, r in rows.items()}
    return MatRF(tuple(new_legs), _prune(rows), op.den)


def scalar_multiple_of(op, reference):
    """λ with op = λ·reference, or a Witness for the first offending entry."""
    if isinstance(op, Chain):
        op = op.dense()
    if isinstance(reference, Chain):
        reference = reference.dense()
    if reference.is_zero():
        raise ValueError("reference is zero")
    i0 = min(reference.rows)
    j0 = min(reference.rows[i0])
    lam = op.entry(i0, j0) / reference.entry(i0, j0)
    w = op.diff_witness(reference.scale(lam))
    if w is not None:
        w.note = "not a scalar multiple"
        return w
    return lam
