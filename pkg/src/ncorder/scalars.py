"""Exact scalars: rationals and rational functions in commuting parameters.

Plain numbers are :class:`fractions.Fraction`.  Symbolic coefficients are
:class:`ParamRat` values, a reduced quotient of two sparse polynomials over
QQ living in a :class:`ParamSpace` (an ordered, fixed tuple of parameter
names).  Every algorithm in the package is written against the common
arithmetic protocol (``+ - * /``, integer ``**``, ``== 0``), so concrete and
symbolic runs share one code path.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Union

from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from .errors import (
    DegreeError,
    DivisionByZero,
    IrrationalRoots,
    MissingBinding,
    PoleAtEnv,
    UnknownParameter,
)

DEFAULT_PARAMS = ("alpha", "epsilon", "lambda", "mu", "sigma", "h", "r", "rho")

_SPACES: dict[tuple[str, ...], "ParamSpace"] = {}


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


class ParamSpace:
    """An ordered set of parameter names with its polynomial ring.

    Instances are interned by their name tuple, so ``ParamSpace(names)`` is
    cheap and two spaces with the same names are the same object.
    """

    names: tuple[str, ...]

    def __new__(cls, names=DEFAULT_PARAMS):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        space = _SPACES.get(names)
        if space is None:
            space = super().__new__(cls)
            space.names = names
            space.ring = PolyRing(names, QQ, grlex)
            space._index = {n: i for i, n in enumerate(names)}
            _SPACES[names] = space
        return space

    def __repr__(self) -> str:
        return f"ParamSpace({self.names!r})"

    def __reduce__(self):
        return (ParamSpace, (self.names,))

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def symbol(self, name: str) -> "ParamRat":
        try:
            i = self._index[name]
        except KeyError:
            raise UnknownParameter(
                f"parameter {name!r} is not declared; declared: {', '.join(self.names)}"
            ) from None
        return ParamRat(self, self.ring.gens[i])

    def symbols(self, *names: str) -> tuple["ParamRat", ...]:
        return tuple(self.symbol(n) for n in names)

    def const(self, value) -> "ParamRat":
        return ParamRat(self, self.ring.ground_new(_to_qq(value)))


def default_space() -> ParamSpace:
    return ParamSpace(DEFAULT_PARAMS)


class ParamRat:
    """Reduced rational function ``num/den`` with a monic denominator.

    Monic means the leading coefficient of ``den`` under graded
    lexicographic order is 1, which makes equality structural.
    """

    __slots__ = ("space", "num", "den")

    def __init__(self, space: ParamSpace, num, den=None):
        ring = space.ring
        if den is None:
            den = ring.one
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            num, den = ring.zero, ring.one
        elif den != ring.one:
            if not den.is_ground:
                num, den = num.cancel(den)
            lc = den.LC
            if lc != 1:
                num = num.quo_ground(lc)
                den = den.quo_ground(lc)
        self.space = space
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, space: ParamSpace, num, den) -> "ParamRat":
        obj = object.__new__(cls)
        obj.space = space
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def unreduced(cls, space: ParamSpace, num, den) -> "ParamRat":
        """Build without cancelling; only :func:`normalize` should see these."""
        if not den:
            raise DivisionByZero("zero denominator")
        return cls._raw(space, num, den)

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, ParamRat):
            if other.space is not self.space:
                raise ValueError(
                    f"mixing parameter spaces {self.space.names} and {other.space.names}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return ParamRat._raw(self.space, self.space.ring.ground_new(_to_qq(other)), self.space.ring.one)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        one = self.space.ring.one
        if self.den == one and o.den == one:
            return ParamRat._raw(self.space, self.num + o.num, one)
        if self.den == o.den:
            return ParamRat(self.space, self.num + o.num, self.den)
        return ParamRat(self.space, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return ParamRat._raw(self.space, -self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        one = self.space.ring.one
        if self.den == one and o.den == one:
            return ParamRat._raw(self.space, self.num * o.num, one)
        return ParamRat(self.space, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "ParamRat":
        if not self.num:
            raise DivisionByZero("division by zero rational function")
        return ParamRat(self.space, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return ParamRat._raw(self.space, self.num**n, self.den**n)

    # -- comparison -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if isinstance(other, (int, Fraction, ParamRat)) else None
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant())
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    # -- inspection -------------------------------------------------------
    def is_constant(self) -> bool:
        return self.num.is_ground and self.den == self.space.ring.one

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return _to_fraction(self.num.LC) if self.num else Fraction(0)

    def free_symbols(self) -> set[str]:
        used = set()
        for poly in (self.num, self.den):
            for monom in poly.itermonoms():
                used.update(self.space.names[i] for i, e in enumerate(monom) if e)
        return used

    def __str__(self) -> str:
        num = _poly_str(self.num)
        if self.den == self.space.ring.one:
            return num
        den = _poly_str(self.den)
        if len(self.num) > 1:
            num = f"({num})"
        if len(self.den) > 1 or not self.den.is_monomial:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"ParamRat({self})"

    def latex(self) -> str:
        from sympy import latex

        return latex(self.num.as_expr() / self.den.as_expr())


def _poly_str(poly) -> str:
    return str(poly).replace("**", "^")


Scalar = Union[int, Fraction, ParamRat]
ParamEnv = Mapping[str, Fraction]


def normalize(x: ParamRat) -> ParamRat:
    """Canonical reduced form (idempotent)."""
    if not x.den:
        raise DivisionByZero("zero denominator")
    return ParamRat(x.space, x.num, x.den)


def _eval_poly(poly, names, env: ParamEnv) -> Fraction:
    total = Fraction(0)
    for monom, coeff in poly.items():
        term = _to_fraction(coeff)
        for name, e in zip(names, monom):
            if e:
                if name not in env:
                    raise MissingBinding(name)
                term *= Fraction(env[name]) ** e
        total += term
    return total


def instantiate(x: Scalar, env: ParamEnv) -> Fraction:
    """Exact value of ``x`` with every parameter bound by ``env``."""
    if not isinstance(x, ParamRat):
        return Fraction(x)
    names = x.space.names
    den = _eval_poly(x.den, names, env)
    num = _eval_poly(x.num, names, env)
    if den == 0:
        raise PoleAtEnv(f"denominator of {x} vanishes at {dict(env)}")
    return num / den


def substitute(x: Scalar, env: ParamEnv) -> Scalar:
    """Bind the parameters present in ``env``; the rest stay symbolic."""
    if not isinstance(x, ParamRat):
        return x
    space = x.space
    ring = space.ring
    bound = [(i, Fraction(env[n])) for i, n in enumerate(space.names) if n in env]
    if not bound:
        return x

    def sub(poly):
        out = {}
        for monom, coeff in poly.items():
            c = _to_fraction(coeff)
            m = list(monom)
            for i, v in bound:
                if m[i]:
                    c *= v ** m[i]
                    m[i] = 0
            key = tuple(m)
            out[key] = out.get(key, Fraction(0)) + c
        return ring.from_dict({k: _to_qq(v) for k, v in out.items() if v})

    den = sub(x.den)
    if not den:
        raise PoleAtEnv(f"denominator of {x} vanishes at {dict(env)}")
    result = ParamRat(space, sub(x.num), den)
    return result.constant() if result.is_constant() else result


def demote(x: Scalar) -> Scalar:
    """Turn constant ParamRat values into Fractions."""
    if isinstance(x, ParamRat) and x.is_constant():
        return x.constant()
    if isinstance(x, int):
        return Fraction(x)
    return x


def scalar_str(x: Scalar) -> str:
    return str(demote(x))


def scalar_latex(x: Scalar) -> str:
    x = demote(x)
    if isinstance(x, ParamRat):
        return x.latex()
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return f"{sign}\\frac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def rational_sqrt(q) -> Fraction:
    root = _rational_sqrt(Fraction(q))
    if root is None:
        raise IrrationalRoots(f"{q} is not the square of a rational")
    return root


def roots_of_quadratic(a, b, c) -> tuple[Fraction, Fraction]:
    """Rational roots ``r <= rho`` of ``a X^2 + b X + c``."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0:
        raise DegreeError("leading coefficient is zero")
    disc = b * b - 4 * a * c
    root = _rational_sqrt(disc)
    if root is None:
        raise IrrationalRoots(f"discriminant {disc} is not a rational square")
    x1 = (-b - root) / (2 * a)
    x2 = (-b + root) / (2 * a)
    return (x1, x2) if x1 <= x2 else (x2, x1)
