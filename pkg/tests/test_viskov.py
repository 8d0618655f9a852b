from fractions import Fraction
from math import factorial

import pytest

from ncorder.combinat import UniPoly
from ncorder.ncalg import LEFT, RIGHT, Algebra, NCPoly, Relation
from ncorder.scalars import default_space
from ncorder.series import ASeries, exp_element, exp_pow_B, first_difference, lift, s_exp, s_mul
from ncorder.viskov import (
    CauchyProblem,
    antinormal_sides,
    phi_gamma,
    residual,
    solve_alpha,
    viskov_antinormal_check,
    viskov_check,
)

eps, lam, h = default_space().symbols("epsilon", "lambda", "h")


def P(*pairs):
    return UniPoly(dict(pairs), "A")


ONE, X = P((0, 1)), P((1, 1))
PS = {"1": ONE, "1+x^2": P((0, 1), (2, 1)), "eps x": P((1, eps)), "-lam x^2": P((2, -lam)), "h x^3": P((3, h))}
FG = {"(1,0)": (ONE, P()), "(x,0)": (X, P()), "(1,x)": (ONE, X), "(x,x^2)": (X, P((2, 1)))}


def test_jordan_flow_is_geometric():
    alpha = solve_alpha(CauchyProblem(P((2, -lam)), ONE, P(), order=5))
    assert alpha.coeffs == [P((k + 1, (-lam) ** k)) for k in range(6)]


def test_weyl_product_flow():
    # p = 1, f = x: alpha = A e^t, phi = A (e^t - 1)
    cp = CauchyProblem(ONE, X, P(), order=6)
    phi, gamma = phi_gamma(cp)
    assert phi.coeffs == [P()] + [P((1, Fraction(1, factorial(k)))) for k in range(1, 7)]
    assert not any(gamma.coeffs)


@pytest.mark.parametrize("p", PS, ids=str)
@pytest.mark.parametrize("fg", FG, ids=str)
def test_residual_vanishes(p, fg):
    f, g = FG[fg]
    cp = CauchyProblem(PS[p], f, g, order=5)
    assert not any(residual(cp, solve_alpha(cp)).coeffs)


@pytest.mark.parametrize("p", PS, ids=str)
@pytest.mark.parametrize("fg", FG, ids=str)
def test_both_orderings(p, fg):
    f, g = FG[fg]
    cp = CauchyProblem(PS[p], f, g, order=4)
    normal = viskov_check(cp)
    anti = viskov_antinormal_check(cp)
    assert normal.passed, normal.summary()
    assert anti.passed, anti.summary()


def test_detects_wrong_flow():
    cp = CauchyProblem(P((1, eps)), ONE, X, order=4)
    lhs, rhs, via_l = antinormal_sides(cp)
    assert lhs == rhs == via_l
    # the flow of a different p must not reproduce the same exponential
    ctx = Algebra(Relation.left(P((1, eps))))
    phi, gamma = phi_gamma(CauchyProblem(P((1, 2 * eps)), ONE, X, order=4))
    wrong = s_mul(s_exp(lift(gamma, ctx)), exp_pow_B(phi, ctx))
    right = exp_element(NCPoly.gen(RIGHT) + NCPoly.gen(LEFT), ctx, 4)
    assert first_difference(wrong, right) is not None


def test_validation():
    with pytest.raises(ValueError):
        CauchyProblem(ONE, ONE, P(), order=0)
    with pytest.raises(ValueError):
        CauchyProblem(ONE, ONE, P(), initial="C")
    cp = CauchyProblem(1, 1, 0, order=2)
    assert cp.p == UniPoly({0: 1}, "A")
    assert cp.mirrored().initial == "B"
    assert isinstance(solve_alpha(cp), ASeries)
