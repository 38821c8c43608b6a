from fractions import Fraction

import pytest

from twyang.polyrat import U
from twyang.rkmat import (ALGEBRAS, PAIR_TYPES, ORTH, Algebra, PairType, check_p_identity,
                          check_qybe, check_scalar_reflection, p_gamma_theta,
                          rv_matrix_and_factorizations, special_r_identities)


@pytest.mark.parametrize("alg", ALGEBRAS)
def test_qybe(alg):
    assert check_qybe(alg).ok


def test_qybe_rejects_wrong_kappa():
    r = check_qybe(Algebra("b", 3, ORTH, kappa_override=Fraction(3, 2)))
    assert not r.ok and r.failures[0].witness


@pytest.mark.parametrize("pair", PAIR_TYPES)
def test_scalar_reflection(pair):
    assert check_scalar_reflection(pair).ok


@pytest.mark.parametrize("pair", [p for p in PAIR_TYPES if PairType.parse(p).bcd])
def test_p_identity(pair):
    assert check_p_identity(PairType.parse(pair)) is None


def test_pair_parse_roundtrip():
    for p in PAIR_TYPES:
        assert str(PairType.parse(p)) == p
    assert PairType.parse("CI:1").N == 2
    assert PairType.parse("AIII:1,1").q == 1


@pytest.mark.parametrize("bad", ["XX:2", "CI", "BDI:2", "AII:3", "CII:1,1", "BDI:1,2"])
def test_pair_parse_rejects(bad):
    with pytest.raises(ValueError):
        PairType.parse(bad)


def test_theta_small_case():
    assert p_gamma_theta("AIII:2,0", U)[2] == 2 * U / (2 * U - 1)


def test_special_r_and_rv():
    assert special_r_identities().ok
    assert rv_matrix_and_factorizations().ok
