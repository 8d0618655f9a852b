"""Combinatorial number families and commutative one-variable polynomials.

Every family has at least two independent routes (a recurrence and a closed
form or a generating function) so the tests can play them against each other.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .scalars import ParamRat, Scalar, scalar_latex, scalar_str


def _exp_key(e) -> int | Fraction:
    """Canonical exponent: int when integral, Fraction otherwise."""
    if isinstance(e, int):
        return e
    e = Fraction(e)
    return e.numerator if e.denominator == 1 else e


class UniPoly:
    """Commutative polynomial in one indeterminate with rational exponents.

    Negative and fractional exponents are allowed (Laurent/Puiseux-style
    monomials), which is what ``A^{s-1}``-type expressions need.
    """

    __slots__ = ("terms", "var")

    def __init__(self, terms: Mapping | None = None, var: str = "x"):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[_exp_key(e)] = Fraction(c) if isinstance(c, int) else c
        self.terms = clean
        self.var = var

    @classmethod
    def monomial(cls, exponent=1, coeff: Scalar = 1, var: str = "x") -> "UniPoly":
        return cls({exponent: coeff}, var)

    @classmethod
    def constant(cls, c: Scalar, var: str = "x") -> "UniPoly":
        return cls({0: c}, var)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Scalar], var: str = "x") -> "UniPoly":
        return cls(dict(enumerate(coeffs)), var)

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly(self.terms, var)

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly({0: other}, self.var)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly({e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly({e: c * other for e, c in self.terms.items()}, self.var)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _exp_key(e1 + e2)
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return UniPoly(out, self.var)

    def __rmul__(self, other):
        return UniPoly({e: other * c for e, c in self.terms.items()}, self.var)

    def __truediv__(self, scalar):
        if isinstance(scalar, int):
            scalar = Fraction(scalar)
        return UniPoly({e: c / scalar for e, c in self.terms.items()}, self.var)

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("negative powers only for monomials")
            (e, c), = self.terms.items()
            return UniPoly({-e * (-n): c ** n}, self.var)
        result = UniPoly({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k) -> "UniPoly":
        """Multiply by x^k."""
        return UniPoly({_exp_key(e + k): c for e, c in self.terms.items()}, self.var)

    def derivative(self) -> "UniPoly":
        return UniPoly({_exp_key(e - 1): c * e for e, c in self.terms.items() if e != 0}, self.var)

    def __call__(self, value):
        total = 0
        for e, c in self.terms.items():
            if isinstance(e, Fraction):
                raise ValueError("cannot evaluate a fractional exponent at a scalar")
            total = total + c * value ** e
        return total

    # -- inspection -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            if not isinstance(other, (int, Fraction, ParamRat)):
                return NotImplemented
            other = UniPoly({0: other}, self.var)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coeff(self, e) -> Scalar:
        return self.terms.get(_exp_key(e), 0)

    def exponents(self) -> list:
        return sorted(self.terms)

    def degree(self):
        return max(self.terms) if self.terms else None

    def min_exponent(self):
        return min(self.terms) if self.terms else None

    def has_integer_exponents(self, nonnegative: bool = True) -> bool:
        return all(
            isinstance(e, int) and (e >= 0 or not nonnegative) for e in self.terms
        )

    def map_coeffs(self, fn) -> "UniPoly":
        return UniPoly({e: fn(c) for e, c in self.terms.items()}, self.var)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in self.exponents():
            c = self.terms[e]
            parts.append(_term_str(c, _power_str(self.var, e)))
        return _join_terms(parts)

    __repr__ = __str__

    def latex(self):
        if not self.terms:
            return "0"
        parts = []
        for e in self.exponents():
            mono = _power_latex(self.var, e)
            parts.append(_term_str(self.terms[e], mono, scalar_latex))
        return _join_terms(parts)


def _power_str(var: str, e) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    if isinstance(e, Fraction) or e < 0:
        return f"{var}^({e})"
    return f"{var}^{e}"


def _power_latex(var: str, e) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{{{e}}}"


def _term_str(c, mono: str, fmt=scalar_str) -> str:
    s = fmt(c)
    if not mono:
        return s
    if s == "1":
        return mono
    if s == "-1":
        return "-" + mono
    simple = s.lstrip("-").replace("/", "").isdigit() or s.lstrip("-").startswith("\\frac")
    if simple:
        return f"{s}*{mono}" if fmt is scalar_str else f"{s}{mono}"
    return f"({s})*{mono}" if fmt is scalar_str else f"\\left({s}\\right){mono}"


def _join_terms(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# ---------------------------------------------------------------------------
# elementary helpers
# ---------------------------------------------------------------------------

def binomial(x, k: int):
    """Generalized binomial coefficient ``(x)_k / k!`` for any scalar ``x``."""
    if k < 0:
        return Fraction(0)
    if isinstance(x, int) and x >= 0:
        return Fraction(math.comb(x, k))
    return falling(x, k) / math.factorial(k)


def falling(x, k: int):
    """Falling factorial ``x (x-1) ... (x-k+1)``."""
    out = Fraction(1)
    for i in range(k):
        out = out * (x - i)
    return out


def double_factorial(m: int) -> int:
    """``m!!`` with the convention ``(-1)!! = 0!! = 1``."""
    if m < -1:
        raise ValueError("double factorial defined for m >= -1")
    return math.prod(range(m, 0, -2)) if m > 0 else 1


# ---------------------------------------------------------------------------
# Stirling numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _stirling2_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling2_row(n - 1) + (0,)
    return tuple((prev[k - 1] if k else 0) + k * prev[k] for k in range(n + 1))


@lru_cache(maxsize=None)
def _stirling1_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling1_row(n - 1) + (0,)
    return tuple((prev[k - 1] if k else 0) + (n - 1) * prev[k] for k in range(n + 1))


def stirling2(n: int, k: int) -> Fraction:
    """Stirling number of the second kind S(n, k) by the triangle recurrence."""
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    return Fraction(_stirling2_row(n)[k])


def stirling2_closed(n: int, k: int) -> Fraction:
    """(1/k!) sum_i (-1)^(k-i) C(k,i) i^n."""
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    total = sum((-1) ** (k - i) * math.comb(k, i) * i**n for i in range(k + 1))
    return Fraction(total, math.factorial(k))


def stirling1(n: int, k: int, signed: bool = False) -> Fraction:
    """Stirling number of the first kind; unsigned c(n,k) unless ``signed``."""
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    c = _stirling1_row(n)[k]
    if signed and (n - k) % 2:
        c = -c
    return Fraction(c)


def falling_factorial_poly(n: int, var: str = "x") -> UniPoly:
    """(x)_n expanded by multiplying out the linear factors."""
    poly = UniPoly.constant(Fraction(1), var)
    for i in range(n):
        poly = poly * UniPoly({1: Fraction(1), 0: Fraction(-i)}, var)
    return poly


def lah(n: int, k: int) -> Fraction:
    """Unsigned Lah number C(n-1, k-1) n!/k!."""
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    if k == 0:
        return Fraction(1 if n == 0 else 0)
    return Fraction(math.comb(n - 1, k - 1) * math.factorial(n), math.factorial(k))


@lru_cache(maxsize=None)
def _lah_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _lah_row(n - 1) + (0,)
    return tuple((prev[k - 1] if k else 0) + (n - 1 + k) * prev[k] for k in range(n + 1))


def lah_recurrence(n: int, k: int) -> Fraction:
    """L(n+1,k) = L(n,k-1) + (n+k) L(n,k)."""
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    return Fraction(_lah_row(n)[k])


# ---------------------------------------------------------------------------
# truncated scalar power series (lists of coefficients)
# ---------------------------------------------------------------------------

def ps_mul(a: list, b: list, order: int) -> list:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def ps_pow(a: list, k: int, order: int) -> list:
    out = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(k):
        out = ps_mul(out, a, order)
    return out


def ps_exp_minus_one(order: int, scale=1) -> list:
    """Coefficients of e^(scale t) - 1."""
    return [Fraction(0)] + [scale**n * Fraction(1, math.factorial(n)) for n in range(1, order + 1)]


def ps_neg_log_one_minus(order: int) -> list:
    """Coefficients of -log(1 - t)."""
    return [Fraction(0)] + [Fraction(1, n) for n in range(1, order + 1)]


def ps_binomial(a, order: int, scale=1) -> list:
    """Coefficients of (1 + scale t)^a."""
    return [binomial(a, n) * scale**n for n in range(order + 1)]


def ps_inverse(a: list, order: int) -> list:
    """Reciprocal of a series with nonzero constant term."""
    if not a or not a[0]:
        raise ZeroDivisionError("series has no constant term")
    out = [Fraction(1) / a[0]]
    for n in range(1, order + 1):
        acc = 0
        for i in range(1, min(n, len(a) - 1) + 1):
            acc = acc + a[i] * out[n - i]
        out.append(-acc / a[0])
    return out


# ---------------------------------------------------------------------------
# generalized Stirling numbers
# ---------------------------------------------------------------------------

def gen_stirling(s, n: int, k: int) -> Fraction:
    """𝔖_s(n,k) = sum_{j=k}^{n} c(n,j) S(j,k) s^(n-j) (1-s)^(j-k)."""
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    s = Fraction(s)
    return sum(
        (stirling1(n, j) * stirling2(j, k) * s ** (n - j) * (1 - s) ** (j - k) for j in range(k, n + 1)),
        Fraction(0),
    )


def gen_stirling_double_sum(s, n: int, k: int) -> Fraction:
    """The double-sum closed form, only meaningful for s not in {0, 1}."""
    s = Fraction(s)
    if s in (0, 1):
        raise ValueError("the double-sum form degenerates at s = 0 and s = 1")
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    total = Fraction(0)
    for j in range(k + 1):
        inner = sum(
            (stirling1(n, i) * s ** (n - i) * Fraction(j) ** i / (1 - s) ** (k - i) for i in range(n + 1)),
            Fraction(0),
        )
        total += (-1) ** (k - j) * math.comb(k, j) * inner
    return total / math.factorial(k)


def gen_stirling_binomial_form(s, n: int, k: int) -> Fraction:
    """n! s^n/(k!(1-s)^k) sum_j (-1)^(k-j) C(k,j) C(n + j(1/s - 1) - 1, n)."""
    s = Fraction(s)
    if s in (0, 1):
        raise ValueError("the binomial form degenerates at s = 0 and s = 1")
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    total = sum(
        ((-1) ** (k - j) * math.comb(k, j) * binomial(n + j * (1 / s - 1) - 1, n) for j in range(k + 1)),
        Fraction(0),
    )
    return math.factorial(n) * s**n / (math.factorial(k) * (1 - s) ** k) * total


def frakF_coeffs(s, order: int) -> list[Fraction]:
    """Taylor coefficients of the generating function 𝔉_s(t) up to t^order."""
    s = Fraction(s)
    if s == 0:
        return ps_exp_minus_one(order)
    if s == 1:
        return ps_neg_log_one_minus(order)
    a = 1 - 1 / s
    inner = ps_binomial(a, order, scale=-s)
    return [Fraction(0)] + [-inner[n] / (s - 1) for n in range(1, order + 1)]


def frakF_series(s, order: int, var: str = "t") -> UniPoly:
    """𝔉_s(t) truncated at t^order, as a polynomial in ``var``."""
    return UniPoly.from_coeffs(frakF_coeffs(s, order), var)


def gen_stirling_gf(s, n: int, k: int) -> Fraction:
    """n! [t^n] 𝔉_s(t)^k / k!, by series powering."""
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    f = frakF_coeffs(s, n)
    return ps_pow(f, k, n)[n] * math.factorial(n) / math.factorial(k)


# ---------------------------------------------------------------------------
# [x]_n and Bessel polynomials
# ---------------------------------------------------------------------------

def bracket_eval(x, n: int):
    """[x]_n = prod_{i=1}^{n-1} (1 - i x); equals 1 for n in {0, 1}."""
    out = Fraction(1)
    for i in range(1, n):
        out = out * (1 - i * x)
    return out


def bessel_poly(n: int, var: str = "x") -> UniPoly:
    """Bessel polynomial y_n = sum_k C(n+k, 2k) (2k-1)!! x^k."""
    return UniPoly(
        {k: Fraction(math.comb(n + k, 2 * k) * double_factorial(2 * k - 1)) for k in range(n + 1)},
        var,
    )


def bessel_poly_factorial_form(n: int, var: str = "x") -> UniPoly:
    """y_n = sum_k (n+k)!/((n-k)! k!) (x/2)^k."""
    return UniPoly(
        {
            k: Fraction(math.factorial(n + k), math.factorial(n - k) * math.factorial(k) * 2**k)
            for k in range(n + 1)
        },
        var,
    )
