import pytest

from twyang.identdsl import (SUITES, Atom, Context, DslSyntaxError, Prod, evaluate_check, parse,
                             parse_file, render, suite_context, suite_path)
from twyang.tensorops import ORTH, SYMP

SRC = """# involution
P[1,2]*P[1,2] == I[];

# Yang-Baxter
R[1,2](u)*R[1,3](u+v)*R[2,3](v) == R[2,3](v)*R[1,3](u+v)*R[1,2](u);
"""


def test_parse_structure():
    st = parse(SRC)
    assert [s.label for s in st] == ["involution", "Yang-Baxter"]
    lhs = st[1].lhs
    assert isinstance(lhs, Prod) and all(isinstance(f, Atom) for f in lhs.factors)
    assert lhs.factors[1].legs == (1, 3)


def test_render_roundtrip():
    st = parse(SRC)
    assert parse(render(st)) == st


@pytest.mark.parametrize("src,line,col", [
    ("P[1,2] == I[]", 1, 14),         # missing ';'
    ("P[1,1] == I[];", 1, 5),          # repeated leg
    ("\nR[1,2](u+) == I[];", 2, 10),   # bad argument
    ("P[1,2] = I[];", 1, 8),
])
def test_syntax_errors_have_positions(src, line, col):
    with pytest.raises(DslSyntaxError) as e:
        parse(src)
    assert (e.value.line, e.value.col) == (line, col)
    assert str(e.value).startswith("%d:%d:" % (line, col))


def test_evaluate_passes_and_fails():
    ctx = Context.standard(2, ORTH)
    assert evaluate_check(parse(SRC), ctx).ok
    bad = parse("R[1,2](u)*R[2,3](v) == R[2,3](v)*R[1,2](u);")
    rep = evaluate_check(bad, ctx)
    assert not rep.ok and rep.failures[0].witness


def test_kind_b_binding():
    ctx = Context.standard(2, SYMP)
    src = "Rb[1,2](u)*Rb[1,3](u+v)*Rb[2,3](v) == Rb[2,3](v)*Rb[1,3](u+v)*Rb[1,2](u);"
    assert evaluate_check(parse(src), ctx).ok


def test_unknown_operator():
    rep = evaluate_check(parse("Z[1] == I[];"), Context.standard(2, ORTH))
    assert not rep.ok


@pytest.mark.parametrize("name", SUITES)
def test_shipped_suites(name):
    path = suite_path(name)
    rep = evaluate_check(parse_file(path), suite_context(path))
    assert rep.ok, rep.summary()
