import pytest

from twyang.polyrat import U
from twyang.reps import SP2, Y2, rep_for, trivial_rep
from twyang.rkmat import PAIR_TYPES, PairType
from twyang.twistgen import (build_s, c_series_extract, check_reflection_eq, check_symmetry,
                             sdet2, z_w_qdet_sdet)
from twyang.isomaps import gamma2

ONE_SITE = [p for p in PAIR_TYPES if PairType.parse(p).N <= 3]


@pytest.mark.parametrize("pair", ONE_SITE)
def test_reflection_and_const(pair):
    pt = PairType.parse(pair)
    S = build_s(rep_for(pt.algebra, 1), pt)
    assert S.check_const() is None
    assert check_reflection_eq(S).ok
    if pt.family != "AIII":
        assert check_symmetry(S).ok
        assert c_series_extract(S)[1].ok
    assert z_w_qdet_sdet(S)[1].ok


def test_symmetry_flag_matters():
    S = build_s(rep_for(SP2, 1), "CI:1")
    assert check_symmetry(S).ok
    bad = check_symmetry(S, paren=1)
    assert not bad.ok and bad.failures[0].witness


def test_sdet_forms_on_two_sites():
    t = rep_for(Y2, 2)
    for pair in ("AI:2", "AII:2"):
        vals, rep = z_w_qdet_sdet(build_s(t, pair))
        assert rep.ok and "sdet" in vals


def test_sdet_of_identity():
    from test_oracles import frozen_rf
    assert sdet2(build_s(trivial_rep(Y2), "AI:2"), U) == frozen_rf("sdet_identity_plus")
    assert sdet2(build_s(trivial_rep(Y2), "AII:2"), U) == frozen_rf("sdet_identity_minus")
    assert frozen_rf("sdet_identity_minus") == gamma2(U)


def test_mismatched_rep_rejected():
    with pytest.raises(ValueError):
        build_s(rep_for(Y2, 1), "CI:1")
