import pickle
from fractions import Fraction

import pytest

from ncorder import errors
from ncorder.scalars import (
    ParamRat,
    ParamSpace,
    default_space,
    demote,
    instantiate,
    normalize,
    rational_sqrt,
    roots_of_quadratic,
    scalar_latex,
    scalar_str,
    substitute,
)

S = default_space()
alpha, eps, lam, mu = S.symbols("alpha", "epsilon", "lambda", "mu")


def test_spaces_are_interned():
    assert ParamSpace(("a", "b")) is ParamSpace(["a", "b"])
    assert default_space() is S
    assert pickle.loads(pickle.dumps(S)) is S


def test_duplicate_names_rejected():
    with pytest.raises(ValueError):
        ParamSpace(("a", "a"))


def test_unknown_parameter():
    with pytest.raises(errors.UnknownParameter):
        S.symbol("zeta")


def test_field_arithmetic_is_canonical():
    x = (lam**2 - 1) / (lam - 1)
    assert x == lam + 1
    assert (alpha / lam) * lam == alpha
    assert 1 / (1 / (alpha + eps)) == alpha + eps
    assert (2 * lam) / (4 * lam * mu) == 1 / (2 * mu)
    assert normalize(x) == x


def test_mixes_with_fractions():
    x = Fraction(1, 2) * alpha + 1
    assert x - alpha / 2 == 1
    assert demote(x - alpha / 2) == Fraction(1)
    assert isinstance(demote(x - alpha / 2), Fraction)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        alpha / (lam - lam)


def test_instantiate_and_substitute():
    x = (alpha + eps) / (1 - lam * mu)
    assert instantiate(x, {"alpha": 1, "epsilon": 2, "lambda": 2, "mu": Fraction(1, 4)}) == 6
    partial = substitute(x, {"lambda": 1, "mu": 2})
    assert partial == -(alpha + eps)
    assert substitute(x, {"alpha": 1, "epsilon": -1, "lambda": 0, "mu": 0}) == 0
    with pytest.raises(errors.MissingBinding):
        instantiate(x, {"alpha": 1})
    with pytest.raises(errors.PoleAtEnv):
        instantiate(x, {"alpha": 1, "epsilon": 1, "lambda": 1, "mu": 1})
    with pytest.raises(errors.PoleAtEnv):
        substitute(x, {"lambda": 1, "mu": 1})


def test_printing():
    assert scalar_str(Fraction(-3, 4)) == "-3/4"
    assert scalar_latex(Fraction(-3, 4)) == "-\\frac{3}{4}"
    assert scalar_str(S.const(5)) == "5"
    assert "lambda" in scalar_str(lam / (1 - lam))
    assert isinstance(alpha, ParamRat) and hash(alpha + 1) == hash(1 + alpha)


def test_rational_roots():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(errors.IrrationalRoots):
        rational_sqrt(2)
    assert roots_of_quadratic(1, -3, 2) == (1, 2)
    assert roots_of_quadratic(-1, 0, 1) == (-1, 1)
    with pytest.raises(errors.IrrationalRoots):
        roots_of_quadratic(1, 0, -2)
    with pytest.raises(errors.DegreeError):
        roots_of_quadratic(0, 1, 1)
