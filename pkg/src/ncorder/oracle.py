"""Differential-operator representation used as an independent check.

Under ``[B, A] = p(A)`` the assignment ``A -> x``, ``B -> p(x) d/dx`` is an
algebra map into operators on polynomials (``[p D, x] = p``).  For
``[B, A] = p(B)`` we use ``B -> x``, ``A -> -p(x) d/dx``.  Nothing here
reorders words, so agreement with the rewriter is a genuine cross-check.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .combinat import UniPoly, falling
from .errors import ExponentKindError, TruncationError
from .ncalg import LEFT, RIGHT, NCPoly, Relation
from .report import Failure, Report, timed
from .scalars import scalar_str

DEFAULT_CAP = 32


class XPoly:
    """Polynomial in x with exact coefficients and a degree cap."""

    __slots__ = ("terms", "cap")

    def __init__(self, terms: Mapping[int, object] | None = None, cap: int = DEFAULT_CAP):
        clean = {}
        for d, c in (terms or {}).items():
            if c:
                if d < 0 or not isinstance(d, int):
                    raise ExponentKindError(f"XPoly degree {d} is not a natural number")
                if d > cap:
                    raise TruncationError(f"degree {d} exceeds the cap {cap}")
                clean[d] = Fraction(c) if isinstance(c, int) else c
        self.terms = clean
        self.cap = cap

    @classmethod
    def monomial(cls, d: int, c=1, cap: int = DEFAULT_CAP) -> "XPoly":
        return cls({d: c}, cap)

    @classmethod
    def from_unipoly(cls, p: UniPoly, cap: int = DEFAULT_CAP) -> "XPoly":
        if not p.has_integer_exponents():
            raise ExponentKindError(f"{p} has non-natural exponents")
        return cls(dict(p.terms), cap)

    def __add__(self, other: "XPoly") -> "XPoly":
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) + c
        return XPoly(out, self.cap)

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + other.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, XPoly):
            return self.scale(other)
        out: dict = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return XPoly(out, self.cap)

    def scale(self, c) -> "XPoly":
        return XPoly({d: v * c for d, v in self.terms.items()}, self.cap)

    def derivative(self, n: int = 1) -> "XPoly":
        return XPoly({d - n: falling(d, n) * c for d, c in self.terms.items() if d >= n}, self.cap)

    def compose(self, inner: "XPoly") -> "XPoly":
        """self(inner(x))."""
        out = XPoly({}, self.cap)
        power = XPoly({0: 1}, self.cap)
        for d in range(self.degree() + 1):
            if d:
                power = power * inner
            c = self.terms.get(d)
            if c:
                out = out + power.scale(c)
        return out

    def degree(self) -> int:
        return max(self.terms, default=-1)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self):
        return str(UniPoly(self.terms, "x"))

    def __repr__(self):
        return f"XPoly({self})"


class DiffOp:
    """sum c[a, b] x^a D^b, stored with x-powers to the left."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        self.terms = {k: (Fraction(c) if isinstance(c, int) else c) for k, c in (terms or {}).items() if c}

    @classmethod
    def identity(cls) -> "DiffOp":
        return cls({(0, 0): 1})

    @classmethod
    def x(cls) -> "DiffOp":
        return cls({(1, 0): 1})

    @classmethod
    def d(cls) -> "DiffOp":
        return cls({(0, 1): 1})

    @classmethod
    def multiplication(cls, p: UniPoly) -> "DiffOp":
        if not p.has_integer_exponents():
            raise ExponentKindError(f"{p} has non-natural exponents")
        return cls({(e, 0): c for e, c in p.terms.items()})

    def __add__(self, other: "DiffOp") -> "DiffOp":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return DiffOp(out)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + other.scale(-1)

    def scale(self, c) -> "DiffOp":
        return DiffOp({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return compose(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            mono = " ".join(s for s in (f"x^{a}" if a else "", f"D^{b}" if b else "") if s) or "1"
            parts.append(f"{scalar_str(c)}*{mono}")
        return " + ".join(parts)


def compose(op1: DiffOp, op2: DiffOp) -> DiffOp:
    """op1 after op2, using D^b x^a = sum_k C(b,k) (a)_k x^(a-k) D^(b-k)."""
    out: dict = {}
    for (a1, b1), c1 in op1.terms.items():
        for (a2, b2), c2 in op2.terms.items():
            c12 = c1 * c2
            for k in range(min(b1, a2) + 1):
                key = (a1 + a2 - k, b1 - k + b2)
                v = c12 * (math.comb(b1, k) * falling(a2, k))
                out[key] = out.get(key, 0) + v
    return DiffOp(out)


def apply(op: DiffOp, f: XPoly) -> XPoly:
    out: dict = {}
    for (a, b), c in op.terms.items():
        for d, v in f.terms.items():
            if d < b:
                continue
            key = d - b + a
            out[key] = out.get(key, 0) + c * v * falling(d, b)
    return XPoly(out, f.cap)


class Representation:
    """Images of A and B for a univariate relation with natural exponents."""

    def __init__(self, relation: Relation):
        if not relation.univariate:
            raise ExponentKindError("the operator representation needs [B, A] = p(A) or p(B)")
        if not relation.p.has_integer_exponents():
            raise ExponentKindError(f"{relation.p} has non-natural exponents")
        self.relation = relation
        pd = compose(DiffOp.multiplication(relation.p), DiffOp.d())
        if relation.kind == "left":
            self.images = {LEFT: DiffOp.x(), RIGHT: pd}
        else:
            self.images = {RIGHT: DiffOp.x(), LEFT: pd.scale(-1)}
        self._powers: dict = {}
        self._words: dict = {}

    def power(self, g: int, e) -> DiffOp:
        if not (isinstance(e, int) and e >= 0):
            raise ExponentKindError(f"exponent {e} cannot be represented")
        key = (g, e)
        if key not in self._powers:
            self._powers[key] = DiffOp.identity() if e == 0 else compose(self.images[g], self.power(g, e - 1))
        return self._powers[key]

    def word(self, w) -> DiffOp:
        op = self._words.get(w)
        if op is None:
            op = DiffOp.identity()
            for g, e in w:
                op = compose(op, self.power(g, e))
            self._words[w] = op
        return op

    def of(self, x: NCPoly) -> DiffOp:
        out = DiffOp()
        for w, c in x.terms.items():
            out = out + self.word(w).scale(c)
        return out

    def act(self, x: NCPoly, f: XPoly) -> XPoly:
        """Apply x to f block by block, right to left, without building x's operator."""
        out = XPoly({}, f.cap)
        for w, c in x.terms.items():
            g = f
            for gen, e in reversed(w):
                if not (isinstance(e, int) and e >= 0):
                    raise ExponentKindError(f"exponent {e} cannot be represented")
                for _ in range(e):
                    g = apply(self.images[gen], g)
            out = out + g.scale(c)
        return out


def rep_of(x: NCPoly, p: UniPoly | Relation) -> DiffOp:
    rel = p if isinstance(p, Relation) else Relation.left(p)
    return Representation(rel).of(x)


def series_apply(s, f: XPoly) -> list[XPoly]:
    """Apply each t-coefficient of a TSeries to f."""
    rep = Representation(s.ctx.relation)
    return [rep.act(c, f) for c in s.coeffs]


# -- polynomial-valued t-series -------------------------------------------------

def act_series(rep: Representation, coeffs: Sequence[NCPoly], fs: Sequence[XPoly]) -> list[XPoly]:
    """Cauchy product of an operator series with a series of polynomials."""
    n = len(fs) - 1
    cap = fs[0].cap
    out = [XPoly({}, cap) for _ in range(n + 1)]
    for i, c in enumerate(coeffs[: n + 1]):
        if not c:
            continue
        for j in range(n + 1 - i):
            if fs[j]:
                out[i + j] = out[i + j] + rep.act(c, fs[j])
    return out


def act_exp(rep: Representation, exponent: Sequence[NCPoly], fs: Sequence[XPoly]) -> list[XPoly]:
    """exp(sum_k E_k t^k) applied to a polynomial series; E_0 must vanish."""
    if exponent and exponent[0]:
        raise ValueError("exponent series must vanish at t = 0")
    n = len(fs) - 1
    total = list(fs)
    term = list(fs)
    for k in range(1, n + 1):
        term = act_series(rep, exponent, term)
        term = [g.scale(Fraction(1, k)) for g in term]
        if not any(term):
            break
        total = [a + b for a, b in zip(total, term)]
    return total


def shift_check(g: XPoly, f: XPoly, N: int) -> Report:
    """f(x + g(x)) against sum_n g^n f^(n)/n! and the operator (e^{g(x)})^D.

    Also checks f(g(x)) = (e^{g(x) - x})^D f.
    """
    report = Report("shift-map", order=N)
    with timed(report):
        if g.terms.get(0):
            raise ValueError("g must vanish at 0")
        x = XPoly.monomial(1, cap=f.cap)
        for label, shift, direct in (
            ("shift", g, f.compose(x + g)),
            ("composition", g - x, f.compose(g)),
        ):
            series = XPoly({}, f.cap)
            op = DiffOp()
            power = XPoly({0: 1}, f.cap)
            for n in range(N + 1):
                if n:
                    power = power * shift
                w = Fraction(1, math.factorial(n))
                series = series + (power * f.derivative(n)).scale(w)
                op = op + compose(DiffOp.multiplication(UniPoly(power.terms)), DiffOp({(0, n): 1})).scale(w)
            via_op = apply(op, f)
            if N >= max(f.degree(), 0):
                if series != direct:
                    report.fail(_poly_failure(series, direct, f"{label}: truncated sum"))
            if via_op != series:
                report.fail(_poly_failure(via_op, series, f"{label}: operator form"))
    return report


def _poly_failure(lhs: XPoly, rhs: XPoly, detail: str) -> Failure:
    for d in sorted(set(lhs.terms) | set(rhs.terms)):
        a, b = lhs.terms.get(d, 0), rhs.terms.get(d, 0)
        if a != b:
            return Failure(0, f"x^{d}", a, b, channel="oracle", detail=detail)
    return Failure(0, "", 0, 0, channel="oracle", detail=detail)


def monomials(max_degree: int = 6, cap: int = DEFAULT_CAP) -> Iterable[XPoly]:
    for m in range(max_degree + 1):
        yield XPoly.monomial(m, cap=cap)
