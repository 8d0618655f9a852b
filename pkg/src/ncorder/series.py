"""Truncated power series in t.

:class:`TSeries` has NCPoly coefficients kept normal-ordered under an
:class:`~ncorder.ncalg.Algebra`; :class:`ASeries` has commutative
:class:`~ncorder.combinat.UniPoly` coefficients in a single generator and
carries flows such as ``alpha(t)`` of the Cauchy problem.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .combinat import UniPoly, binomial, stirling1
from .errors import ConstantTermError, ContextMismatch, TruncationError
from .ncalg import LEFT, RIGHT, Algebra, NCPoly, word_sort_key, word_str
from .scalars import Scalar, scalar_str

GEN_OF_VAR = {"A": LEFT, "B": RIGHT, "C": LEFT, "D": RIGHT}


def _inv_fact(n: int) -> Fraction:
    return Fraction(1, math.factorial(n))


def _same_ctx(a: Algebra, b: Algebra) -> bool:
    return a is b or (
        a.relation == b.relation and a.basis == b.basis and a.degree_cap == b.degree_cap
    )


class TSeries:
    """``sum_k coeffs[k] t^k + O(t^(order+1))`` with normal-ordered coefficients."""

    __slots__ = ("coeffs", "ctx", "order")

    def __init__(self, coeffs: Sequence[NCPoly], ctx: Algebra, order: int, normalize: bool = True):
        cs = [c if isinstance(c, NCPoly) else NCPoly.scalar(c) for c in coeffs[: order + 1]]
        cs += [NCPoly.zero()] * (order + 1 - len(cs))
        if normalize:
            cs = [ctx.normal_order(c) for c in cs]
        self.coeffs = cs
        self.ctx = ctx
        self.order = order

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, ctx: Algebra, order: int) -> "TSeries":
        return cls([], ctx, order, normalize=False)

    @classmethod
    def one(cls, ctx: Algebra, order: int) -> "TSeries":
        return cls.monomial(NCPoly.one(), 0, ctx, order)

    @classmethod
    def monomial(cls, x: NCPoly, k: int, ctx: Algebra, order: int) -> "TSeries":
        """``x t^k``."""
        coeffs = [NCPoly.zero()] * k + [x]
        return cls(coeffs, ctx, order)

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "TSeries") -> None:
        if not _same_ctx(self.ctx, other.ctx):
            raise ContextMismatch(f"{self.ctx!r} vs {other.ctx!r}")
        if self.order != other.order:
            raise ContextMismatch(f"orders {self.order} and {other.order} differ")

    def __add__(self, other):
        if not isinstance(other, TSeries):
            other = TSeries.monomial(NCPoly.scalar(other), 0, self.ctx, self.order)
        self._check(other)
        return TSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.ctx, self.order, False)

    __radd__ = __add__

    def __neg__(self):
        return TSeries([-a for a in self.coeffs], self.ctx, self.order, False)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TSeries):
            return s_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c: Scalar) -> "TSeries":
        return TSeries([a.scale(c) for a in self.coeffs], self.ctx, self.order, False)

    def __truediv__(self, c):
        c = Fraction(c) if isinstance(c, int) else c
        return self.scale(1 / c)

    def __pow__(self, n: int):
        out = TSeries.one(self.ctx, self.order)
        for _ in range(n):
            out = s_mul(out, self)
        return out

    def scale_t(self, c: Scalar) -> "TSeries":
        """Substitute t -> c t."""
        out, ck = [], Fraction(1)
        for a in self.coeffs:
            out.append(a.scale(ck))
            ck = ck * c
        return TSeries(out, self.ctx, self.order, False)

    def lmul(self, x: NCPoly) -> "TSeries":
        """x * self, with x constant in t."""
        x = self.ctx.normal_order(x)
        return TSeries([self.ctx.nmul(x, a) for a in self.coeffs], self.ctx, self.order, False)

    def rmul(self, x: NCPoly) -> "TSeries":
        x = self.ctx.normal_order(x)
        return TSeries([self.ctx.nmul(a, x) for a in self.coeffs], self.ctx, self.order, False)

    def truncate(self, order: int) -> "TSeries":
        return TSeries(self.coeffs[: order + 1], self.ctx, order, False)

    def with_ctx(self, ctx: Algebra) -> "TSeries":
        return TSeries(self.coeffs, ctx, self.order)

    def map_coeffs(self, fn) -> "TSeries":
        return TSeries([fn(a) for a in self.coeffs], self.ctx, self.order)

    def substitute(self, env) -> "TSeries":
        return TSeries([a.substitute(env) for a in self.coeffs], self.ctx, self.order, False)

    # -- inspection -------------------------------------------------------
    def __getitem__(self, k: int) -> NCPoly:
        return self.coeffs[k]

    def constant(self) -> NCPoly:
        return self.coeffs[0]

    @property
    def truncated(self) -> bool:
        return any(a.truncated for a in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(a == b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))

    __hash__ = None

    def is_free_of(self, gen: int) -> bool:
        return all(gen not in a.generators() for a in self.coeffs)

    def to_str(self, names=None) -> str:
        names = names or self.ctx.names
        parts = []
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            body = a.to_str(names)
            if k == 0:
                parts.append(body)
                continue
            tk = "t" if k == 1 else f"t^{k}"
            parts.append(f"{tk}*{_wrap(body, a)}")
        parts.append(f"O(t^{self.order + 1})")
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"TSeries({self.to_str()})"


def _wrap(body: str, poly) -> str:
    if len(poly.terms) == 1 and next(iter(poly.terms.values())) == 1:
        return body
    return f"({body})"


def first_difference(lhs: TSeries, rhs: TSeries, names=None):
    """First (t_order, word, lhs_coeff, rhs_coeff) where the series differ."""
    names = names or lhs.ctx.names
    n = min(lhs.order, rhs.order)
    for k in range(n + 1):
        a, b = lhs.coeffs[k], rhs.coeffs[k]
        if a == b:
            continue
        for w in sorted(set(a.terms) | set(b.terms), key=word_sort_key):
            ca, cb = a.terms.get(w, 0), b.terms.get(w, 0)
            if ca != cb:
                return (k, word_str(w, names), ca, cb)
    return None


# ---------------------------------------------------------------------------
# series operations
# ---------------------------------------------------------------------------

def s_mul(x: TSeries, y: TSeries) -> TSeries:
    """Cauchy product, coefficients normal-ordered."""
    x._check(y)
    ctx, n = x.ctx, x.order
    out = []
    for k in range(n + 1):
        acc = NCPoly.zero()
        for i in range(k + 1):
            a, b = x.coeffs[i], y.coeffs[k - i]
            if a and b:
                acc = acc + ctx.nmul(a, b)
        out.append(acc)
    return TSeries(out, ctx, n, False)


def _require_constant(x: TSeries, value: int) -> None:
    c = x.coeffs[0]
    if c != NCPoly.scalar(value) and not (value == 0 and not c):
        raise ConstantTermError(f"constant term must be {value}, got {c}")


def s_exp(x: TSeries) -> TSeries:
    """sum_n x^n / n! for x without constant term."""
    _require_constant(x, 0)
    out = TSeries.one(x.ctx, x.order)
    power = out
    for n in range(1, x.order + 1):
        power = s_mul(power, x)
        if not any(power.coeffs):
            break
        out = out + power.scale(_inv_fact(n))
    return out


def s_log(x: TSeries) -> TSeries:
    """sum_{n>=1} (-1)^(n-1) (x-1)^n / n for x with constant term 1."""
    _require_constant(x, 1)
    y = x - 1
    out = TSeries.zero(x.ctx, x.order)
    power = TSeries.one(x.ctx, x.order)
    for n in range(1, x.order + 1):
        power = s_mul(power, y)
        out = out + power.scale(Fraction((-1) ** (n - 1), n))
    return out


def s_int(x):
    """Termwise integral from 0; works on TSeries and ASeries."""
    if isinstance(x, ASeries):
        cs = [UniPoly({}, x.var)] + [c / (k + 1) for k, c in enumerate(x.coeffs[:-1])]
        return ASeries(cs, x.order, x.var)
    cs = [NCPoly.zero()] + [c.scale(Fraction(1, k + 1)) for k, c in enumerate(x.coeffs[:-1])]
    return TSeries(cs, x.ctx, x.order, False)


def _pow_binomial(x: TSeries, c) -> TSeries:
    y = x - 1
    out = TSeries.one(x.ctx, x.order)
    power = out
    for n in range(1, x.order + 1):
        power = s_mul(power, y)
        out = out + power.scale(binomial(c, n))
    return out


def _pow_explog(x: TSeries, c) -> TSeries:
    return s_exp(s_log(x).scale(c))


def s_pow_scalar(x: TSeries, c: Scalar, route: str = "both") -> TSeries:
    """x^c for a scalar c.

    ``route`` selects the binomial sum, exp(c log x), or ``both`` (the
    default), which computes the two and insists they agree.
    """
    _require_constant(x, 1)
    if isinstance(c, int):
        c = Fraction(c)
    if route == "binomial":
        return _pow_binomial(x, c)
    if route == "explog":
        return _pow_explog(x, c)
    if route != "both":
        raise ValueError(f"unknown route {route!r}")
    a = _pow_binomial(x, c)
    b = _pow_explog(x, c)
    if a != b:
        diff = first_difference(a, b)
        raise ArithmeticError(f"scalar power routes disagree at {diff}")
    return a


def exp_element(x: NCPoly, ctx: Algebra, order: int) -> TSeries:
    """exp(x t): coefficient k is normal_order(x^k)/k!."""
    base = ctx.normal_order(x)
    out = [ctx.normal_order(NCPoly.one())]
    power = out[0]
    for k in range(1, order + 1):
        power = ctx.nmul(power, base)
        out.append(power.scale(_inv_fact(k)))
    return TSeries(out, ctx, order, False)


def lift(a: "ASeries", ctx: Algebra, gen: int | None = None) -> TSeries:
    """Embed an ASeries as a TSeries in the generator named by its variable."""
    g = GEN_OF_VAR[a.var] if gen is None else gen
    cs = [NCPoly.from_unipoly(c, g) for c in a.coeffs]
    for c in cs:
        ctx.check(c)
    return TSeries(cs, ctx, a.order, False)


def _exp_pow(phi: "ASeries", ctx: Algebra, order: int, gen_phi: int, gen_exp: int) -> TSeries:
    if phi.coeffs[0]:
        raise ConstantTermError("the exponent series must vanish at t = 0")
    other = NCPoly.gen(gen_exp)
    out = [NCPoly.zero() for _ in range(order + 1)]
    power = ASeries.one(order, phi.var)
    other_pow = NCPoly.one()
    for n in range(order + 1):
        if n:
            power = power * phi
            other_pow = other_pow * other
        w = _inv_fact(n)
        for k in range(n, order + 1):
            c = power.coeffs[k]
            if not c:
                continue
            poly = NCPoly.from_unipoly(c, gen_phi).scale(w)
            if gen_phi == LEFT:
                out[k] = out[k] + ctx.nmul(poly, other_pow)
            else:
                out[k] = out[k] + ctx.nmul(other_pow, poly)
    return TSeries(out, ctx, order, False)


def exp_pow_B(phi: "ASeries", ctx: Algebra, order: int | None = None) -> TSeries:
    """(e^phi)^B = sum_n phi^n B^n / n! for phi a series in A."""
    return _exp_pow(phi, ctx, phi.order if order is None else order, GEN_OF_VAR[phi.var], RIGHT)


def exp_pow_A(phi: "ASeries", ctx: Algebra, order: int | None = None) -> TSeries:
    """(e^A)^phi = sum_n A^n phi^n / n! for phi a series in B."""
    return _exp_pow(phi, ctx, phi.order if order is None else order, GEN_OF_VAR[phi.var], LEFT)


def expo_general(x: TSeries, b: NCPoly) -> TSeries:
    """x^b = sum_n (x-1)^n binom(b, n), binom(b, n) = sum_k s(n,k) b^k / n!."""
    _require_constant(x, 1)
    ctx, order = x.ctx, x.order
    b = ctx.normal_order(b)
    bpows = [ctx.normal_order(NCPoly.one())]
    for _ in range(order):
        bpows.append(ctx.nmul(bpows[-1], b))
    y = x - 1
    out = TSeries.one(ctx, order)
    power = out
    for n in range(1, order + 1):
        power = s_mul(power, y)
        if not any(power.coeffs):
            break
        binom = NCPoly.zero()
        for k in range(n + 1):
            s = stirling1(n, k, signed=True)
            if s:
                binom = binom + bpows[k].scale(s)
        binom = binom.scale(_inv_fact(n))
        out = out + power.rmul(binom)
    return out


# ---------------------------------------------------------------------------
# commutative one-generator series
# ---------------------------------------------------------------------------

class ASeries:
    """``sum_k coeffs[k] t^k`` with commuting UniPoly coefficients."""

    __slots__ = ("coeffs", "order", "var")
    exponent_cap = 256

    def __init__(self, coeffs: Sequence, order: int, var: str = "A"):
        cs = []
        for c in list(coeffs)[: order + 1]:
            cs.append(c.with_var(var) if isinstance(c, UniPoly) else UniPoly.constant(c, var))
        cs += [UniPoly({}, var)] * (order + 1 - len(cs))
        self.coeffs = cs
        self.order = order
        self.var = var

    @classmethod
    def zero(cls, order: int, var: str = "A") -> "ASeries":
        return cls([], order, var)

    @classmethod
    def one(cls, order: int, var: str = "A") -> "ASeries":
        return cls([UniPoly.constant(1, var)], order, var)

    @classmethod
    def generator(cls, order: int, var: str = "A") -> "ASeries":
        return cls([UniPoly.monomial(1, 1, var)], order, var)

    @classmethod
    def from_scalars(cls, values: Sequence, order: int, var: str = "A") -> "ASeries":
        return cls([UniPoly.constant(v, var) for v in values], order, var)

    def __add__(self, other):
        if not isinstance(other, ASeries):
            other = ASeries([other], self.order, self.var)
        return ASeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order, self.var)

    __radd__ = __add__

    def __neg__(self):
        return ASeries([-a for a in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ASeries):
            return self.scale(other)
        n = self.order
        out = []
        for k in range(n + 1):
            acc = UniPoly({}, self.var)
            for i in range(k + 1):
                a, b = self.coeffs[i], other.coeffs[k - i]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return ASeries(out, n, self.var)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "ASeries":
        if isinstance(c, UniPoly):
            return ASeries([a * c for a in self.coeffs], self.order, self.var)
        return ASeries([a * c for a in self.coeffs], self.order, self.var)

    def __truediv__(self, c):
        c = Fraction(c) if isinstance(c, int) else c
        return ASeries([a / c for a in self.coeffs], self.order, self.var)

    def __pow__(self, e):
        if isinstance(e, int) and e >= 0:
            out = ASeries.one(self.order, self.var)
            for _ in range(e):
                out = out * self
            return out
        return self.pow_rational(e)

    def __eq__(self, other):
        if not isinstance(other, ASeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(a == b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))

    __hash__ = None

    def __getitem__(self, k):
        return self.coeffs[k]

    def with_var(self, var: str) -> "ASeries":
        return ASeries(self.coeffs, self.order, var)

    def scale_t(self, c) -> "ASeries":
        out, ck = [], Fraction(1)
        for a in self.coeffs:
            out.append(a * ck)
            ck = ck * c
        return ASeries(out, self.order, self.var)

    def derivative(self) -> "ASeries":
        cs = [c * (k + 1) for k, c in enumerate(self.coeffs[1:])]
        return ASeries(cs, self.order - 1, self.var)

    def truncate(self, order: int) -> "ASeries":
        return ASeries(self.coeffs[: order + 1], order, self.var)

    def pow_rational(self, e) -> "ASeries":
        """alpha^e via alpha_0^e (1 + (alpha - alpha_0)/alpha_0)^e.

        The constant coefficient must be a monomial ``x^a`` (coefficient 1)
        unless e is an integer.
        """
        a0 = self.coeffs[0]
        if len(a0.terms) != 1:
            raise ValueError(f"cannot take power {e} of a series with constant term {a0}")
        (a, c), = a0.terms.items()
        e = Fraction(e)
        if e.denominator == 1:
            lead = UniPoly({a * e: c ** int(e)}, self.var)
        elif c == 1:
            lead = UniPoly({a * e: Fraction(1)}, self.var)
        else:
            raise ValueError("rational powers need a unit leading coefficient")
        inv = a0 ** -1
        u = ASeries([UniPoly({}, self.var)] + [ci * inv for ci in self.coeffs[1:]], self.order, self.var)
        out = ASeries.one(self.order, self.var)
        power = out
        for j in range(1, self.order + 1):
            power = power * u
            out = out + power.scale(binomial(e, j))
        return out.scale(lead)

    def compose(self, p: UniPoly) -> "ASeries":
        """p(self) for p with rational exponents."""
        out = ASeries.zero(self.order, self.var)
        for e, c in p.terms.items():
            out = out + (self ** e).scale(c)
        for k, coeff in enumerate(out.coeffs):
            if len(coeff.terms) > self.exponent_cap:
                raise TruncationError(
                    f"{len(coeff.terms)} distinct exponents at t^{k} exceed the cap {self.exponent_cap}"
                )
        return out

    def exp(self) -> "ASeries":
        if self.coeffs[0]:
            raise ConstantTermError("exp needs a series without constant term")
        out = ASeries.one(self.order, self.var)
        power = out
        for n in range(1, self.order + 1):
            power = power * self
            out = out + power.scale(_inv_fact(n))
        return out

    def to_str(self) -> str:
        parts = []
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            if k == 0:
                parts.append(str(a))
                continue
            tk = "t" if k == 1 else f"t^{k}"
            parts.append(f"{tk}*{_wrap(str(a), a)}")
        parts.append(f"O(t^{self.order + 1})")
        return " + ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"ASeries({self.to_str()})"


def scalar_series(values: Sequence[Scalar], ctx: Algebra, order: int) -> TSeries:
    """TSeries with scalar coefficients."""
    return TSeries([NCPoly.scalar(v) for v in values], ctx, order, False)


def series_str(x) -> str:
    return x.to_str() if hasattr(x, "to_str") else scalar_str(x)
