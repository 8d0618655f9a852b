from fractions import Fraction
from math import factorial

import pytest

from ncorder import errors
from ncorder.combinat import UniPoly
from ncorder.ncalg import LEFT, RIGHT, Algebra, NCPoly, Relation, make_word
from ncorder.scalars import default_space
from ncorder.series import (
    ASeries,
    TSeries,
    exp_element,
    exp_pow_B,
    expo_general,
    first_difference,
    lift,
    s_exp,
    s_int,
    s_log,
    s_mul,
    s_pow_scalar,
    scalar_series,
)

S = default_space()
alpha, lam = S.symbols("alpha", "lambda")
A, B = NCPoly.gen(LEFT), NCPoly.gen(RIGHT)

WEYL = Algebra(Relation.left(UniPoly.constant(alpha, "A")))
JORDAN = Algebra(Relation.left(UniPoly.monomial(2, Fraction(-2), "A")))
FREE = Algebra(Relation.free(), degree_cap=8)
COMM = Algebra(Relation.left(UniPoly({}, "A")))


def test_weyl_exponential_splits():
    # e^((A+B)t) = e^(At) e^(Bt) e^(alpha t^2 / 2)
    N = 8
    lhs = exp_element(A + B, WEYL, N)
    gauss = scalar_series([alpha**k / (2**k * factorial(k)) if j == 2 * k else 0
                           for j in range(N + 1) for k in [j // 2]], WEYL, N)
    rhs = s_mul(s_mul(exp_element(A, WEYL, N), exp_element(B, WEYL, N)), gauss)
    assert first_difference(lhs, rhs) is None
    assert lhs == rhs


def test_first_difference_reports_word():
    N = 3
    x = exp_element(A + B, WEYL, N)
    y = s_mul(exp_element(A, WEYL, N), exp_element(B, WEYL, N))
    k, word, a, b = first_difference(x, y)
    assert (k, word) == (2, "1")
    assert a - b == alpha / 2


@pytest.mark.parametrize("ctx", [WEYL, JORDAN, FREE], ids=["weyl", "jordan", "free"])
def test_exp_log_roundtrip(ctx):
    N = 10 if ctx is not FREE else 6
    y = TSeries([0, A + B, B.scale(Fraction(1, 3)) + A * A], ctx, N)
    assert s_log(s_exp(y)) == y
    x = s_exp(y)
    assert s_exp(s_log(x)) == x


def test_constant_term_checks():
    with pytest.raises(errors.ConstantTermError):
        s_exp(TSeries([1, A], WEYL, 3))
    with pytest.raises(errors.ConstantTermError):
        s_log(TSeries([2, A], WEYL, 3))


def test_context_mismatch():
    with pytest.raises(errors.ContextMismatch):
        TSeries([1], WEYL, 2) + TSeries([1], JORDAN, 2)


def test_scalar_power_routes():
    x = s_exp(TSeries([0, A, B], JORDAN, 6))
    half = s_pow_scalar(x, Fraction(1, 2))
    assert s_mul(half, half) == x
    assert s_pow_scalar(x, 3, route="binomial") == s_mul(s_mul(x, x), x)
    with pytest.raises(ValueError):
        s_pow_scalar(x, 2, route="other")


def test_exp_pow_commutative_case():
    # with [B, A] = 0, (e^(tA))^B = e^(tAB)
    N = 6
    got = exp_pow_B(ASeries([0, UniPoly.monomial(1, 1, "A")], N), COMM)
    assert got == exp_element(A * B, COMM, N)


def test_expo_general_matches_exp_pow():
    N = 5
    phi = ASeries([0, UniPoly.monomial(1, 1, "A"), UniPoly.constant(alpha, "A")], N)
    base = lift(phi.exp(), WEYL)
    assert expo_general(base, B) == exp_pow_B(phi, WEYL)


def test_aseries_algebra():
    N = 6
    t = ASeries([0, 1], N)
    e = t.exp()
    assert e.coeffs == ASeries.from_scalars([Fraction(1, factorial(k)) for k in range(N + 1)], N).coeffs
    assert e.derivative() == e.truncate(N - 1)
    one_plus = ASeries([1, UniPoly.monomial(1, 1, "A")], N)
    root = one_plus.pow_rational(Fraction(1, 2))
    assert root * root == one_plus
    assert t.compose(UniPoly({2: 1, 0: 1}, "x")) == ASeries([1, 0, 1], N)
    assert s_int(e.derivative().truncate(N)).coeffs[1:] == e.coeffs[1:]


def test_truncated_flag_propagates():
    ctx = Algebra(Relation.free(), degree_cap=2)
    x = exp_element(A + B, ctx, 4)
    assert x.truncated


def test_series_string_mentions_order():
    x = exp_element(A, WEYL, 2)
    assert "O(t^3)" in str(x)
    assert make_word([(LEFT, 1)]) in x.coeffs[1].terms
