from twyang.polyrat import U, V, rf
from twyang.tensorops import (ORTH, SYMP, Chain, MatRF, chain_equal, f_basis_check, kron_embed,
                              mat_inverse, partial_transpose, perm_and_q, signed_labels)


def test_signed_labels():
    assert signed_labels(2) == [-1, 1]
    assert signed_labels(3) == [-1, 0, 1]


def test_perm_and_q():
    P, Q = perm_and_q(2, SYMP)
    assert (P * P).equals(MatRF.identity((2, 2)))
    # Q² = N Q
    assert (Q * Q).equals(Q.scale(2))
    for sign in (ORTH, SYMP):
        assert f_basis_check(2, sign)


def test_inverse_exact():
    m = MatRF.from_rows((3,), [[U, rf(1), rf(0)], [rf(2), V, rf(1)], [rf(0), rf(1), U + V]])
    assert (m * mat_inverse(m)).equals(MatRF.identity((3,)))


def test_partial_transpose_involution():
    m = MatRF.from_rows((2,), [[U, rf(1)], [rf(2), V]])
    for sign in (ORTH, SYMP):
        t = partial_transpose(partial_transpose(m, 0, sign), 0, sign)
        assert t.equals(m)


def test_kron_embed_commutes_on_disjoint_legs():
    a = MatRF.from_rows((2,), [[U, rf(1)], [rf(0), rf(1)]])
    b = MatRF.from_rows((2,), [[rf(1), V], [rf(3), rf(1)]])
    legs = (2, 2, 2)
    a0, b2 = kron_embed(a, [0], legs), kron_embed(b, [2], legs)
    assert chain_equal(Chain([a0, b2]), Chain([b2, a0])) is None
    assert chain_equal(Chain([a0]), Chain([b2])) is not None
