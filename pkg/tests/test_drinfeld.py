import pytest

from twyang import drinfeld as dr
from twyang.polyrat import U
from twyang.reps import SP2, Y2, rep_for
from twyang.series import expand_matrf
from twyang.tensorops import matrix_unit


@pytest.fixture(scope="module", params=[1, 2])
def t(request):
    return rep_for(SP2, request.param)


def test_gauss_relations(t):
    g = dr.gauss_decompose(t.value(U), 8)
    assert g.check_reassembly() is None
    rep = dr.check_gauss_relations(g, 4)
    assert rep.ok, rep.summary()
    assert len(rep) >= 10


def test_gauss_needs_enough_terms(t):
    g = dr.gauss_decompose(t.value(U), 5)
    with pytest.raises(ValueError):
        dr.check_gauss_relations(g, 4)


def test_leading_coefficients_y2():
    # T(u) = I - P/(u - a): the u^-1 coefficients of e and f are -E
    g = dr.gauss_decompose(expand_matrf(rep_for(Y2, 1).value(U), 3))
    assert g.coef("f", 0).equals(matrix_unit(2, -1, 1).scale(-1))
    assert g.coef("e", 0).equals(matrix_unit(2, 1, -1).scale(-1))


@pytest.mark.parametrize("fn", ["phi_generators", "phi_plus_generators", "phi_minus_generators"])
def test_generator_families(t, fn):
    rep = getattr(dr, fn)(t, 4).report
    assert rep.ok, rep.summary()


def test_gh_alternative_form_fails():
    rep = dr.phi_minus_generators(rep_for(SP2, 2), 4, literal_gh=True).report
    bad = {c.case_id for c in rep.failures}
    assert "rel:[e,G(f)]=G(h)" in bad
    assert "rel:GGG" in bad
    assert "square:G(h)" in bad


def test_minimum_order():
    with pytest.raises(ValueError):
        dr.phi_minus_generators(rep_for(SP2, 1), 3)


def test_coproduct():
    a, b = rep_for(SP2, 1, start=1), rep_for(SP2, 1, start=2)
    assert dr.check_coproduct(a, b, 3).ok
