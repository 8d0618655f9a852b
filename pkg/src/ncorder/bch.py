"""log(e^{Xt} e^{Yt}) in the free algebra, via series and via Dynkin's sum."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .ncalg import LEFT, RIGHT, Algebra, NCPoly, Relation, letters_word
from .series import TSeries, exp_element, s_log, s_mul

BCH_NAMES = ("X", "Y")
BCH_MAX_ORDER = 6

X = NCPoly.gen(LEFT)
Y = NCPoly.gen(RIGHT)


def free_algebra(order: int) -> Algebra:
    return Algebra(Relation.free(), degree_cap=order, names=BCH_NAMES)


def _check_order(order: int, max_order: int) -> None:
    if order < 1:
        raise ValueError("order must be at least 1")
    if order > max_order:
        raise ValueError(f"order {order} exceeds the configured maximum {max_order}")


def bch_log(order: int, max_order: int = BCH_MAX_ORDER) -> TSeries:
    """log(exp(Xt) exp(Yt)) computed with series exp/log."""
    _check_order(order, max_order)
    ctx = free_algebra(order)
    return s_log(s_mul(exp_element(X, ctx, order), exp_element(Y, ctx, order)))


@lru_cache(maxsize=None)
def nested_bracket(letters: tuple[int, ...]) -> NCPoly:
    """[z1, [z2, ... [z_{n-1}, z_n]]] expanded into words."""
    if len(letters) == 1:
        return NCPoly.monomial(letters_word(letters))
    inner = nested_bracket(letters[1:])
    z = NCPoly.monomial(letters_word(letters[:1]))
    return z * inner - inner * z


def _pair_sequences(total: int):
    """Sequences of (m, n) with m + n >= 1 summing to ``total``."""
    if total == 0:
        yield ()
        return
    for size in range(1, total + 1):
        for m in range(size + 1):
            for rest in _pair_sequences(total - size):
                yield ((m, size - m),) + rest


def dynkin_term(n: int) -> NCPoly:
    """Degree-n part of Dynkin's double sum."""
    out = NCPoly.zero()
    for seq in _pair_sequences(n):
        letters: list[int] = []
        denom = 1
        for m, k in seq:
            letters += [LEFT] * m + [RIGHT] * k
            denom *= math.factorial(m) * math.factorial(k)
        if n >= 2 and letters[-1] == letters[-2]:
            continue
        j = len(seq)
        coeff = Fraction((-1) ** (j - 1), j * n * denom)
        out = out + nested_bracket(tuple(letters)).scale(coeff)
    return out


def dynkin_series(order: int, max_order: int = BCH_MAX_ORDER) -> TSeries:
    _check_order(order, max_order)
    ctx = free_algebra(order)
    return TSeries([NCPoly.zero()] + [dynkin_term(n) for n in range(1, order + 1)], ctx, order)


def bracket(x: NCPoly, y: NCPoly) -> NCPoly:
    """Free commutator xy - yx."""
    return x * y - y * x
