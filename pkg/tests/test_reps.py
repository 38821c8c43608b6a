import pytest

from twyang.polyrat import U, rf
from twyang.series import TruncSeries
from twyang.reps import (SO3, SP2, Y2, check_rtt, make_points, normalize_special, qdet2,
                         rep_for, tensor_rep, trivial_rep, z_series_scalar)
from twyang.rkmat import ALGEBRAS, ORTH, Algebra
from twyang.tensorops import chain_scalar


@pytest.mark.parametrize("alg", ALGEBRAS)
def test_rtt_one_site(alg):
    assert check_rtt(rep_for(alg, 1)).ok


@pytest.mark.parametrize("alg", ["gl2", "sp2", "so3"])
def test_rtt_two_sites(alg):
    assert check_rtt(rep_for(alg, 2)).ok


def test_rational_points_are_seeded():
    assert make_points(3, "rational", seed=5) == make_points(3, "rational", seed=5)
    assert check_rtt(rep_for("so3", 2, "rational", seed=2)).ok


def test_dropped_q_breaks_rtt():
    r = check_rtt(rep_for(SO3, 1), R=Algebra("b", 3, ORTH, drop_q=True).R)
    assert not r.ok


def test_trivial_and_tensor():
    t = tensor_rep(rep_for(Y2, 1), trivial_rep(Y2))
    assert check_rtt(t).ok
    assert chain_scalar(qdet2(trivial_rep(Y2))) == 1


def test_qdet_of_evaluation_rep():
    from test_oracles import frozen_rf
    assert chain_scalar(qdet2(rep_for(Y2, 1), U)) == frozen_rf("qdet_gl2_eval")


def test_normalized_contraction():
    # g(u)g(u+2)z(u) = 1 with g = 1 + O(u^-1)
    nt = normalize_special(rep_for(SP2, 1), 5)
    g = nt.g
    z = TruncSeries.from_rf(z_series_scalar(rep_for(SP2, 1)), 5)
    assert g[0] == 1
    assert (g * g.shift(2) * z).equals(TruncSeries.const(rf(1), 5))
