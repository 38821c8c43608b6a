import pytest

from twyang.polyrat import ParseError, U, V, parse_rf, rf, rf_expand_at_infinity, rf_subst_affine


def test_arith_and_normal_form():
    x = parse_rf("(u^2-1)/(u+1)")
    assert x == U - 1
    assert (U / V) * (V / U) == 1
    assert (1 / (U - 1) - 1 / U) == 1 / (U * (U - 1))


def test_implicit_multiplication_and_roundtrip():
    assert parse_rf("2u") == 2 * U
    for s in ("2u/(2u-1)", "(u+v)^2/(u-3/2)", "1/2*i*u + r2", "u^-2"):
        x = parse_rf(s)
        assert parse_rf(x.render()) == x


def test_subs_and_affine():
    x = U / (U - 1)
    assert x.subs({"u": V}) == V / (V - 1)
    assert rf_subst_affine(x, "u", 2, 1) == (2 * U + 1) / (2 * U)


def test_expand_at_infinity():
    # u/(u-1) = 1 + u^-1 + u^-2 + ...
    assert rf_expand_at_infinity(U / (U - 1), "u", 3) == [rf(1)] * 4
    c = rf_expand_at_infinity((U + 2) / U, "u", 2)
    assert c == [rf(1), rf(2), rf(0)]


@pytest.mark.parametrize("bad", ["(u+1", "u+*2", "u^v", "w+1"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_rf(bad)
