from fractions import Fraction

import pytest

from ncorder.bch import X, Y, bch_log, bracket, dynkin_series, dynkin_term, nested_bracket
from ncorder.ncalg import LEFT, RIGHT
from ncorder.series import first_difference


def test_low_degrees_by_hand():
    log = bch_log(3)
    assert log.coeffs[1] == X + Y
    assert log.coeffs[2] == bracket(X, Y).scale(Fraction(1, 2))
    third = X * X * Y - 2 * X * Y * X + Y * X * X + Y * Y * X - 2 * Y * X * Y + X * Y * Y
    assert log.coeffs[3] == third.scale(Fraction(1, 12))


@pytest.mark.parametrize("order", [1, 2, 3, 4, 5, 6])
def test_log_equals_dynkin(order):
    assert first_difference(bch_log(order), dynkin_series(order)) is None


def test_nested_bracket_expansion():
    assert nested_bracket((LEFT, RIGHT)) == X * Y - Y * X
    assert nested_bracket((LEFT, LEFT, RIGHT)) == bracket(X, bracket(X, Y))


def test_degree_four_term():
    # -1/24 [Y, [X, [X, Y]]]
    expect = bracket(Y, bracket(X, bracket(X, Y))).scale(Fraction(-1, 24))
    assert dynkin_term(4) == expect


def test_order_bounds():
    with pytest.raises(ValueError):
        bch_log(0)
    with pytest.raises(ValueError):
        dynkin_series(7)
    assert bch_log(7, max_order=7).order == 7
