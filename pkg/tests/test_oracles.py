import sympy as sp

import oracles
from twyang.polyrat import parse_rf
from twyang.reps import SP2, rep_for, z_series_scalar
from twyang.rkmat import SYMP, p_gamma_theta, r_matrix
from twyang.polyrat import U


def frozen_rf(name):
    return parse_rf(oracles.FROZEN[name].replace("**", "^"))


def test_frozen_values_rederive():
    got = oracles.compute_all()
    for name in oracles.FROZEN:
        assert sp.simplify(got[name] - oracles.frozen_sympy(name)) == 0, name


def test_sp2_r_matches_sympy():
    m = r_matrix("b", 2, SYMP, U)
    S = oracles.sp2_r(oracles.u)
    for i in range(4):
        for j in range(4):
            x = sp.sympify(m.entry(i, j).render().replace("^", "**"))
            assert sp.simplify(x - S[i, j]) == 0


def test_p_and_z_against_frozen():
    assert p_gamma_theta("CI:1", U)[0] == frozen_rf("p_CI1")
    assert z_series_scalar(rep_for(SP2, 1)) == frozen_rf("z_sp2_eval")
