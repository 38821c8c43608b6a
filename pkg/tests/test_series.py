from twyang.polyrat import U, rf
from twyang.series import TruncSeries, expand_matrf
from twyang.tensorops import MatRF


def test_inverse_and_product():
    s = TruncSeries.from_rf(U / (U - 1), 5)
    one = s * s.inv()
    assert one.equals(TruncSeries.const(rf(1), 5))


def test_shift_matches_substitution():
    x = (U + 3) / (U - 2)
    s = TruncSeries.from_rf(x, 6)
    assert s.shift(1).equals(TruncSeries.from_rf(x.subs({"u": U + 1}), 6))
    assert s.neg_arg().equals(TruncSeries.from_rf(x.subs({"u": -U}), 6))
    assert s.scale_arg(2).equals(TruncSeries.from_rf(x.subs({"u": 2 * U}), 6))


def test_first_diff_locates_order():
    a = TruncSeries.from_rf(1 + 1 / U, 4)
    b = TruncSeries.from_rf(1 + 1 / U + 1 / U ** 3, 4)
    assert a.first_diff(a) is None
    assert a.first_diff(b) is not None


def test_matrix_coefficients():
    m = MatRF.from_rows((2,), [[U / (U - 1), 1 / U], [rf(0), rf(1)]])
    s = expand_matrf(m, 3)
    assert s[0].equals(MatRF.identity((2,)))
    assert s[1].entry(0, 1) == 1 and s[1].entry(0, 0) == 1
