from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gacalc import Multivector, RationalFunction, Session, evaluate_text, get_algebra, parse, render, tokenize
from gacalc.parser import EvalError, ParseError


def test_token_count_and_kinds():
    assert len(tokenize("(1+2*e12)*(5-e12)")) == 13
    toks = tokenize("pow(A,-1)")
    assert [t.kind for t in toks] == ["name", "(", "name", ",", "op", "num", ")"]
    assert [t.column for t in toks][:3] == [1, 4, 5]


@pytest.mark.parametrize("text, column, message", [
    ("2..5", 2, "malformed number"),
    ("1 # 2", 3, "illegal character"),
    ("exp(-x/2*e12)", 7, "division operator not defined; use inv()"),
    ("(1+e1", 1, "unbalanced"),
    ("e1+)", 4, "unexpected"),
    ("foo(e1)", 1, "unknown function"),
    ("grade(e1)", 1, "argument"),
    ("3e1", 2, "unexpected"),
    ("", 1, ""),
])
def test_parse_errors_carry_columns(text, column, message):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.column == column
    assert message in str(info.value)


def test_precedence():
    assert render(parse("a*b^c")) == render(parse("(a*b)^c"))
    assert render(parse("a*b^c")) != render(parse("a*(b^c)"))
    assert render(parse("~a*b")) == render(parse("(~a)*b"))
    assert render(parse("a+b*c")) == render(parse("a+(b*c)"))
    assert render(parse("a-b-c")) == render(parse("(a-b)-c"))


@pytest.mark.parametrize("sig, text, expected", [
    ("2,0,0", "(1+2*e12)*(5-e12)", "( 7 )*e0+( 9 )*e12"),
    ("2,0,0", "grade(1+e1+e2+e12,1)", "( 1 )*e1+( 1 )*e2"),
    ("2,0,0", "norm(3*e1+4*e2)", "( 5 )*e0"),
    ("2,0,0", "complement(1+e1+e2+e12)", "( 1 )*e0+( 1 )*e1+( -1 )*e2+( 1 )*e12"),
    ("2,0,0", "(2+3*e1+2*e2+4*e12)|(1-2*e1+e2+3*e12)", "( -14 )*e0+( -3 )*e1+( 21 )*e2+( 10 )*e12"),
    ("2,0,0", "(2+3*e1+2*e2+4*e12)^(1-2*e1+e2+3*e12)", "( 2 )*e0+( -1 )*e1+( 4 )*e2+( 17 )*e12"),
    ("2,0,0", "rev(e12)", "( -1 )*e12"),
    ("2,0,0", "0", "0"),
    ("2,0,1", "hodge(e1)", "( 1 )*e23"),
])
def test_listing_evaluations(sig, text, expected):
    assert evaluate_text(text, Session(sig)).to_text() == expected


def test_rational_session_inverse_listing():
    s = Session("0,2,0", scalars="rational")
    out = evaluate_text("(0.2+0.4*e1+0.4*e2+0.8*e12)*inv(0.5-0.5*e1+0.5*e2+0.5*e12)", s)
    assert out == Multivector(get_algebra(0, 2, 0), [F(1, 2), F(1, 2), F(7, 10), F(-1, 10)])
    assert evaluate_text("pow(0.5-0.5*e1+0.5*e2+0.5*e12, -1)", s).exact


def test_cga_session():
    s = Session(cga=3)
    assert evaluate_text("pull(push(e1+e2))", s).to_text() == "( 1 )*e1+( 1 )*e2"
    assert evaluate_text("push(e1+e2)", s).to_text() == "( 1 )*n0+( 1 )*e1+( 1 )*e2+( 1 )*ni"
    assert evaluate_text("n0|ni", s).to_text() == "( -1 )*e0"


def test_ratfun_session():
    s = Session("2,0,0", scalars="ratfun")
    out = evaluate_text("inv(s+e1)", s)
    ss = RationalFunction.s()
    expected = Multivector(get_algebra(2), [ss / (ss * ss - 1), -1 / (ss * ss - 1),
                                            RationalFunction(), RationalFunction()])
    assert out == expected


@pytest.mark.parametrize("text, start, end", [
    ("x+e1", 1, 2),
    ("e1+inv(1+e1)", 4, 13),
    ("2*log(-1)", 3, 10),
    ("hodge(e1)", 1, 10),
    ("e1+e3", 4, 6),
])
def test_evaluation_errors_carry_spans(text, start, end):
    with pytest.raises(EvalError) as info:
        evaluate_text(text, Session("2,0,0"))
    assert (info.value.start, info.value.end) == (start, end)


names = st.sampled_from(["e1", "e2", "e12", "a", "x0"])
numbers = st.one_of(st.integers(0, 99).map(str), st.tuples(st.integers(0, 9), st.integers(0, 99)).map(
    lambda t: f"{t[0]}.{t[1]}"))


def expressions():
    leaves = st.one_of(names, numbers)

    def extend(children):
        return st.one_of(
            st.tuples(children, st.sampled_from(["+", "-", "*", "|", "^"]), children).map(
                lambda t: f"{t[0]}{t[1]}{t[2]}"),
            children.map(lambda c: f"({c})"),
            st.tuples(st.sampled_from(["-", "~"]), children).map(lambda t: f"{t[0]}{t[1]}"),
            st.tuples(st.sampled_from(["exp", "rev", "norm"]), children).map(lambda t: f"{t[0]}({t[1]})"),
            st.tuples(children, st.integers(0, 3)).map(lambda t: f"grade({t[0]},{t[1]})"),
        )
    return st.recursive(leaves, extend, max_leaves=12)


@settings(max_examples=200, deadline=None)
@given(expressions())
def test_render_round_trip(text):
    tree = parse(text)
    again = parse(render(tree))
    assert again == tree
    assert render(again) == render(tree)
