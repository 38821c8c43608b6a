import pytest

from twyang import isomaps
from twyang.reps import Y2, rep_for


@pytest.fixture(scope="module")
def t1():
    return rep_for(Y2, 1)


@pytest.mark.parametrize("fn", ["psi1", "psi2", "psi2_hat"])
def test_psi_maps(t1, fn):
    T, rep = getattr(isomaps, fn)(t1)
    assert rep.ok, rep.summary()


def test_sp2_maps(t1):
    assert isomaps.sp2_twisted_maps(t1, 4).ok


@pytest.mark.parametrize("q", [0, 1])
def test_so3_maps(t1, q):
    assert isomaps.so3_twisted_maps(t1, q, 4).ok


def test_psi3_and_embeddings():
    tA, tB = rep_for(Y2, 1, start=1), rep_for(Y2, 1, start=2)
    assert isomaps.psi3(tA, tB)[1].ok
    for which in ("DIII", "D0", "DI"):
        assert isomaps.so4_embeddings(tA, tB, which, 4).ok


def test_transport():
    a1, a2, b1, b2 = (rep_for(Y2, 1, start=k) for k in (1, 2, 3, 4))
    assert isomaps.transport_commutes("psi1", a1, a2).ok
    assert isomaps.transport_commutes("psi3", a1, a2, b1, b2).ok


def test_a_matrix_orthogonal():
    from twyang.rkmat import PairType
    from twyang.tensorops import ORTH, MatRF, partial_transpose
    A = isomaps._a_matrix()
    assert (A * partial_transpose(A, 0, ORTH)).equals(MatRF.identity((4,)))
    G = PairType.parse("BDI:2,2").G
    assert (A * G * partial_transpose(A, 0, ORTH)).equals(isomaps.G_PRIME_SO4)
