from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncorder import errors
from ncorder.combinat import UniPoly
from ncorder.ncalg import LEFT, RIGHT, NCPoly, Relation, make_word
from ncorder.parser import parse_expr, parse_nc, parse_relation, tokenize
from ncorder.scalars import default_space

S = default_space()
alpha, eps, lam, mu = S.symbols("alpha", "epsilon", "lambda", "mu")
A, B = NCPoly.gen(LEFT), NCPoly.gen(RIGHT)


def test_order_is_kept():
    assert parse_nc("B A") == B * A
    assert parse_nc("BA") == B * A
    assert parse_nc("B*A - A*B") == B * A - A * B
    assert parse_nc("A B^2 A") == A * B * B * A


def test_coefficients_and_parameters():
    assert parse_nc("3/4*A") == A.scale(Fraction(3, 4))
    assert parse_nc("(alpha/(lambda - 1))*B") == B.scale(alpha / (lam - 1))
    assert parse_nc("-lambda A^2 + 0.5") == NCPoly.monomial(make_word([(LEFT, 2)]), -lam) + NCPoly.scalar(Fraction(1, 2))
    with pytest.raises(errors.ExpressionSyntaxError):
        parse_nc("lambda^-1")
    assert parse_nc("lambda^(-2)") == NCPoly.scalar(1 / lam**2)


def test_exponents():
    assert parse_nc("A^(1/2)") == NCPoly.monomial(make_word([(LEFT, Fraction(1, 2))]))
    assert parse_nc("(A^(1/2))^2") == NCPoly.monomial(make_word([(LEFT, 1)]))
    assert parse_nc("(A+B)^2") == A * A + A * B + B * A + B * B


def test_parse_expr_kinds():
    assert parse_expr("alpha + epsilon*A - lambda*A^2") == UniPoly({0: alpha, 1: eps, 2: -lam}, "A")
    assert parse_expr("h*B^2").var == "B"
    assert isinstance(parse_expr("A^2 + B^2"), NCPoly)
    assert parse_expr("7") == UniPoly({0: 7}, "A")


def test_parse_relation():
    assert parse_relation("alpha") == Relation.left(UniPoly({0: alpha}, "A"))
    assert parse_relation("epsilon*B").kind == "right"
    assert parse_relation("lambda*A^2 + mu*B^2").kind == "bivariate"
    assert parse_relation("free").kind == "free"
    with pytest.raises(ValueError):
        parse_relation("A^3 + B")


@pytest.mark.parametrize("src,line,col", [
    ("A +", 1, 4),
    ("A $ B", 1, 3),
    ("(A + B", 1, 7),
    ("A\n  + * B", 2, 5),
    ("", 1, 1),
    ("A B)", 1, 4),
])
def test_syntax_errors_carry_position(src, line, col):
    with pytest.raises(errors.ExpressionSyntaxError) as info:
        parse_nc(src)
    assert (info.value.line, info.value.column) == (line, col)


@pytest.mark.parametrize("src", ["B^(1/2)", "A^(-1)", "(A+B)^(1/2)", "(A+B)^(-1)", "2^(1/2)"])
def test_exponent_kind_errors(src):
    with pytest.raises(errors.ExponentKindError):
        parse_nc(src)


def test_unknown_names():
    with pytest.raises(errors.ExpressionSyntaxError):
        parse_nc("zeta*A")
    with pytest.raises(errors.ExpressionSyntaxError):
        parse_nc("C*A")
    with pytest.raises(errors.ExpressionSyntaxError):
        parse_nc("A/B")
    with pytest.raises(errors.ExpressionSyntaxError):
        parse_nc("A/0")


def test_tokens_split_generator_runs():
    assert [t.text for t in tokenize("ABBA^2")] == ["A", "B", "B", "A", "^", "2", ""]
    assert [t.text for t in tokenize("alpha")] == ["alpha", ""]


SCALARS = st.one_of(
    st.fractions(max_denominator=9).filter(bool).map(lambda q: max(min(q, 50), -50)),
    st.sampled_from([alpha, -lam, eps / (1 - lam * mu), (alpha + 1) / 3, mu**2]),
)
WORDS = st.lists(st.tuples(st.sampled_from([LEFT, RIGHT]), st.integers(1, 3)), max_size=4).map(make_word)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.dictionaries(WORDS, SCALARS, max_size=5))
def test_print_parse_round_trip(terms):
    x = NCPoly(terms)
    assert parse_nc(str(x)) == x


@settings(max_examples=100, deadline=None, derandomize=True)
@given(st.dictionaries(st.fractions(0, 4, max_denominator=3), SCALARS, max_size=4))
def test_unipoly_round_trip(terms):
    p = UniPoly(terms, "A")
    assert parse_expr(str(p)) == p
