from fractions import Fraction
from math import comb, factorial

import pytest
from sympy.functions.combinatorial.numbers import stirling as sympy_stirling

from bruteforce import lah_closed, stirling1_unsigned_table, stirling2_table
from ncorder import combinat as C
from ncorder.combinat import UniPoly
from ncorder.ncalg import LEFT, RIGHT, Algebra, NCPoly, Relation, make_word, product_power

S_VALUES = (Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-1), Fraction(3))


def test_small_known_values():
    assert C.stirling2(5, 2) == 15
    assert C.stirling1(5, 2) == 50
    assert C.stirling1(5, 2, signed=True) == -50
    assert C.stirling1(4, 3, signed=True) == -6
    assert C.lah(4, 2) == 36
    assert C.double_factorial(7) == 105
    assert C.double_factorial(-1) == C.double_factorial(0) == 1


def test_out_of_range_is_zero():
    for f in (C.stirling2, C.stirling2_closed, C.stirling1, C.lah, C.lah_recurrence):
        assert f(3, 4) == 0 and f(-1, 0) == 0 and f(3, -1) == 0
    assert C.stirling2(0, 0) == C.stirling1(0, 0) == C.lah(0, 0) == 1


def test_stirling_against_sympy_and_tables():
    s2, c1 = stirling2_table(20), stirling1_unsigned_table(20)
    for n in range(21):
        for k in range(n + 1):
            assert C.stirling2(n, k) == s2[n][k] == sympy_stirling(n, k, kind=2)
            assert C.stirling2_closed(n, k) == s2[n][k]
            assert C.stirling1(n, k) == c1[n][k] == sympy_stirling(n, k, kind=1)
            assert C.stirling1(n, k, signed=True) == sympy_stirling(n, k, kind=1, signed=True)


def test_falling_factorial_generates_signed_first_kind():
    for n in range(13):
        poly = C.falling_factorial_poly(n)
        assert all(poly.coeff(k) == C.stirling1(n, k, signed=True) for k in range(n + 1))


def test_lah_forms_agree():
    for n in range(15):
        for k in range(n + 1):
            assert C.lah(n, k) == C.lah_recurrence(n, k) == lah_closed(n, k)


def test_binomial_generalized():
    assert C.binomial(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert C.binomial(5, 2) == 10
    assert C.binomial(-1, 3) == -1
    assert C.binomial(7, -1) == 0


def test_power_series_helpers():
    f = C.ps_exp_minus_one(6, scale=2)
    assert f == [0, 2, 2, Fraction(4, 3), Fraction(2, 3), Fraction(4, 15), Fraction(4, 45)]
    assert all(isinstance(c, Fraction) for c in C.ps_exp_minus_one(4, scale=0))
    inv = C.ps_inverse([Fraction(1), Fraction(-1)], 5)
    assert inv == [1] * 6
    with pytest.raises(ZeroDivisionError):
        C.ps_inverse([Fraction(0), Fraction(1)], 3)


@pytest.mark.parametrize("s", S_VALUES)
def test_generalized_stirling_gf(s):
    for n in range(11):
        for k in range(min(n, 5) + 1):
            assert C.gen_stirling(s, n, k) == C.gen_stirling_gf(s, n, k)


@pytest.mark.parametrize("s", [Fraction(2), Fraction(1, 2), Fraction(-1), Fraction(3), Fraction(2, 3)])
def test_generalized_stirling_closed_forms(s):
    for n in range(9):
        for k in range(n + 1):
            v = C.gen_stirling(s, n, k)
            assert C.gen_stirling_double_sum(s, n, k) == v
            assert C.gen_stirling_binomial_form(s, n, k) == v


def test_closed_forms_refuse_degenerate_s():
    for s in (0, 1):
        with pytest.raises(ValueError):
            C.gen_stirling_double_sum(s, 3, 1)
        with pytest.raises(ValueError):
            C.gen_stirling_binomial_form(s, 3, 1)


def test_generalized_stirling_specialisations():
    for n in range(10):
        for k in range(n + 1):
            assert C.gen_stirling(0, n, k) == C.stirling2(n, k)
            assert C.gen_stirling(1, n, k) == C.stirling1(n, k)


def test_second_order_closed_form():
    for n in range(13):
        for k in range(n):
            expect = comb(n - 1 + k, 2 * k) * C.double_factorial(2 * k - 1)
            assert C.gen_stirling(2, n, n - k) == expect


def test_stirling_lah_convolution():
    for n in range(13):
        for k in range(n + 1):
            assert sum(C.stirling1(n, j) * C.stirling2(j, k) for j in range(n + 1)) == C.lah(n, k)


@pytest.mark.parametrize("s", [0, 1, 2, 3])
def test_generalized_stirling_normal_orders_product(s):
    # (AB)^n = sum_k S_s(n,k) A^(s(n-k)+k) B^k under [B, A] = A^s
    ctx = Algebra(Relation.left(UniPoly.monomial(s, 1, "A")))
    for n in range(7):
        expect = NCPoly({make_word([(LEFT, s * (n - k) + k), (RIGHT, k)]): C.gen_stirling(s, n, k)
                         for k in range(n + 1)})
        assert product_power(n, ctx) == expect


def test_bracket_and_bessel():
    assert C.bracket_eval(Fraction(1, 2), 0) == C.bracket_eval(5, 1) == 1
    assert C.bracket_eval(Fraction(1, 3), 4) == Fraction(2, 3) * Fraction(1, 3) * 0
    assert C.bracket_eval(2, 3) == (1 - 2) * (1 - 4)
    for n in range(10):
        assert C.bessel_poly(n) == C.bessel_poly_factorial_form(n)
    assert C.bessel_poly(3) == UniPoly({0: 1, 1: 6, 2: 15, 3: 15}, "x")


def test_frakF_special_cases():
    assert C.frakF_coeffs(0, 4) == [0] + [Fraction(1, factorial(n)) for n in range(1, 5)]
    assert C.frakF_coeffs(1, 4) == [0, 1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)]
    # s = 2: 1 - sqrt(1 - 2t)
    assert C.frakF_coeffs(2, 3) == [0, 1, Fraction(1, 2), Fraction(1, 2)]
