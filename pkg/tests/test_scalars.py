import pytest

from twyang.scalars import FieldElem, as_field


def test_field_basics():
    i, r2 = FieldElem.i(), FieldElem.sqrt2()
    assert i * i == -1
    assert r2 * r2 == 2
    assert (1 + i) * (1 + i).inv() == 1
    assert (r2 + i).inv() * (r2 + i) == 1


def test_parse_render_roundtrip():
    for s in ("1/2*r2", "1/2*i", "3", "-2/3 + 1/2*i*r2"):
        x = FieldElem.parse(s)
        assert FieldElem.parse(x.render()) == x


def test_conjugations():
    x = FieldElem.parse("1 + i + r2")
    assert x.conj_i().conj_i() == x
    assert (x * x.conj_i()).conj_i() == x * x.conj_i()


def test_zero_inverse():
    with pytest.raises(ZeroDivisionError):
        FieldElem.parse("0").inv()


def test_as_field_rational():
    assert as_field(3).is_rational()
