"""Claims and the channels that evaluate them.

A catalog entry expands into a list of claims.  Series claims compare two
ordered products of t-series factors; polynomial claims compare two
elements of the algebra; value claims compare whatever a callable returns.
The SERIES and REWRITER channels reduce with :class:`~ncorder.ncalg.Algebra`,
the ORACLE channel applies the same factors as differential operators to
``x^m`` and never reorders a word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from ..combinat import UniPoly
from ..errors import ExponentKindError, NCOrderError
from ..ncalg import LEFT, Algebra, NCPoly, Relation, word_sort_key, word_str
from ..oracle import Representation, XPoly, act_exp, act_series
from ..report import Failure, Report
from ..series import ASeries, TSeries, exp_element, first_difference, s_exp, s_mul
from .forms import algebra_for

REWRITER = "rewriter"
SERIES = "series"
ORACLE = "oracle"
ALL_CHANNELS = frozenset((REWRITER, SERIES, ORACLE))

ORACLE_MAX_POWER = 6
ORACLE_CAP = 64


# ---------------------------------------------------------------------------
# factors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factor:
    """Either ``exp(sum_k E_k t^k)`` (kind ``exp``) or ``sum_k S_k t^k``."""

    kind: str
    coeffs: tuple

    @classmethod
    def exp_t(cls, x: NCPoly) -> "Factor":
        return cls("exp", (NCPoly.zero(), x))

    @classmethod
    def exp_of(cls, coeffs: Sequence) -> "Factor":
        return cls("exp", tuple(_nc(c) for c in coeffs))

    @classmethod
    def series(cls, coeffs: Sequence) -> "Factor":
        return cls("series", tuple(_nc(c) for c in coeffs))

    @classmethod
    def of_aseries(cls, a: ASeries, gen: int = LEFT) -> "Factor":
        return cls("series", tuple(NCPoly.from_unipoly(c, gen) for c in a.coeffs))

    @classmethod
    def of_tseries(cls, s: TSeries) -> "Factor":
        return cls("series", tuple(s.coeffs))


def _nc(c) -> NCPoly:
    return c if isinstance(c, NCPoly) else NCPoly.scalar(c)


def evaluate_factors(factors: Sequence[Factor], ctx: Algebra, order: int) -> TSeries:
    out = None
    for f in factors:
        if f.kind == "exp":
            nonzero = [k for k, c in enumerate(f.coeffs) if c]
            if nonzero == [1]:
                s = exp_element(f.coeffs[1], ctx, order)
            else:
                s = s_exp(TSeries(list(f.coeffs), ctx, order))
        else:
            s = TSeries(list(f.coeffs), ctx, order)
        out = s if out is None else s_mul(out, s)
    return out if out is not None else TSeries.one(ctx, order)


def oracle_factors(factors: Sequence[Factor], rep: Representation, f: XPoly, order: int) -> list[XPoly]:
    fs = [f] + [XPoly({}, f.cap) for _ in range(order)]
    for fac in reversed(factors):
        coeffs = list(fac.coeffs[: order + 1])
        if fac.kind == "exp":
            fs = act_exp(rep, coeffs, fs)
        else:
            fs = act_series(rep, coeffs, fs)
    return fs


# ---------------------------------------------------------------------------
# claims
# ---------------------------------------------------------------------------

@dataclass
class SeriesClaim:
    label: str
    relation: Relation
    lhs: Sequence[Factor]
    rhs: Sequence[Factor]
    basis: str = "normal"
    oracle: bool = True


@dataclass
class PolyClaim:
    label: str
    relation: Relation
    lhs: NCPoly
    rhs: NCPoly
    oracle: bool = True


@dataclass
class ValueClaim:
    """``compute()`` returns ``(lhs, rhs)``; both are compared structurally."""

    label: str
    compute: Callable[[], tuple[Any, Any]]
    channel: str = REWRITER


@dataclass
class RaisesClaim:
    label: str
    compute: Callable[[], Any]
    error: type
    validate: Callable[[BaseException], bool] = lambda e: True
    channel: str = REWRITER


def representable(relation: Relation) -> bool:
    return relation.univariate and relation.p.has_integer_exponents()


# ---------------------------------------------------------------------------
# structural comparison
# ---------------------------------------------------------------------------

def poly_difference(lhs: NCPoly, rhs: NCPoly, names=("A", "B")):
    for w in sorted(set(lhs.terms) | set(rhs.terms), key=word_sort_key):
        a, b = lhs.terms.get(w, 0), rhs.terms.get(w, 0)
        if a != b:
            return word_str(w, names), a, b
    return None


def _unipoly_difference(lhs: UniPoly, rhs: UniPoly):
    for e in sorted(set(lhs.terms) | set(rhs.terms)):
        a, b = lhs.terms.get(e, 0), rhs.terms.get(e, 0)
        if a != b:
            return f"{lhs.var}^{e}", a, b
    return None


def difference(lhs, rhs, label: str, channel: str) -> Failure | None:
    """First structural difference as a Failure, or None."""
    if isinstance(lhs, TSeries) and isinstance(rhs, TSeries):
        diff = first_difference(lhs, rhs)
        if diff is None:
            return None
        return Failure(*diff, channel=channel, detail=label)
    if isinstance(lhs, ASeries) and isinstance(rhs, ASeries):
        for k in range(min(lhs.order, rhs.order) + 1):
            diff = _unipoly_difference(lhs.coeffs[k], rhs.coeffs[k])
            if diff:
                return Failure(k, *diff, channel=channel, detail=label)
        return None
    if isinstance(lhs, NCPoly) and isinstance(rhs, NCPoly):
        diff = poly_difference(lhs, rhs)
        return Failure(0, *diff, channel=channel, detail=label) if diff else None
    if isinstance(lhs, UniPoly) and isinstance(rhs, UniPoly):
        diff = _unipoly_difference(lhs, rhs)
        return Failure(0, *diff, channel=channel, detail=label) if diff else None
    if isinstance(lhs, XPoly) and isinstance(rhs, XPoly):
        diff = _unipoly_difference(UniPoly(lhs.terms, "x"), UniPoly(rhs.terms, "x"))
        return Failure(0, *diff, channel=channel, detail=label) if diff else None
    if isinstance(lhs, (list, tuple)) and isinstance(rhs, (list, tuple)):
        if len(lhs) != len(rhs):
            return Failure(0, "length", len(lhs), len(rhs), channel=channel, detail=label)
        for k, (a, b) in enumerate(zip(lhs, rhs)):
            fail = difference(a, b, label, channel)
            if fail is not None:
                fail.t_order = k
                return fail
        return None
    if lhs == rhs:
        return None
    return Failure(0, "", lhs, rhs, channel=channel, detail=label)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

@dataclass
class Evaluator:
    order: int
    channels: frozenset = ALL_CHANNELS
    oracle_power: int = ORACLE_MAX_POWER
    _reps: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    observed: list = field(default_factory=list)

    def algebra(self, relation: Relation, basis: str = "normal") -> Algebra:
        return algebra_for(relation, basis)

    def rep(self, relation: Relation) -> Representation:
        if relation not in self._reps:
            self._reps[relation] = Representation(relation)
        return self._reps[relation]

    def _count(self, channel: str) -> None:
        self.counts[channel] = self.counts.get(channel, 0) + 1

    def run(self, claims: Sequence, report: Report) -> None:
        for claim in claims:
            fail = self.evaluate(claim)
            if fail is not None:
                report.fail(fail)
                return

    def evaluate(self, claim) -> Failure | None:
        try:
            return self._evaluate(claim)
        except ZeroDivisionError:
            # PoleAtEnv and plain Fraction division: the env itself is bad
            raise
        except (NCOrderError, ArithmeticError, ValueError) as exc:
            return Failure(0, "", "error", "", channel="error", detail=f"{claim.label}: {type(exc).__name__}: {exc}")

    def _evaluate(self, claim) -> Failure | None:
        if isinstance(claim, SeriesClaim):
            return self._series(claim)
        if isinstance(claim, PolyClaim):
            return self._poly(claim)
        if isinstance(claim, ValueClaim):
            if claim.channel not in self.channels:
                return None
            self._count(claim.channel)
            lhs, rhs = claim.compute()
            return difference(lhs, rhs, claim.label, claim.channel)
        if isinstance(claim, RaisesClaim):
            if claim.channel not in self.channels:
                return None
            self._count(claim.channel)
            try:
                value = claim.compute()
            except claim.error as exc:
                if claim.validate(exc):
                    self.observed.append((claim.label, exc))
                    return None
                return Failure(0, "", str(exc), "validated error", channel=claim.channel, detail=claim.label)
            return Failure(0, "", value, claim.error.__name__, channel=claim.channel, detail=claim.label)
        raise TypeError(f"unknown claim {claim!r}")

    def _series(self, claim: SeriesClaim) -> Failure | None:
        if SERIES in self.channels:
            self._count(SERIES)
            ctx = self.algebra(claim.relation, claim.basis)
            lhs = evaluate_factors(claim.lhs, ctx, self.order)
            rhs = evaluate_factors(claim.rhs, ctx, self.order)
            fail = difference(lhs, rhs, claim.label, SERIES)
            if fail is not None:
                return fail
        if ORACLE in self.channels and claim.oracle and representable(claim.relation):
            self._count(ORACLE)
            rep = self.rep(claim.relation)
            for m in range(self.oracle_power + 1):
                f = XPoly.monomial(m, cap=ORACLE_CAP)
                try:
                    lhs = oracle_factors(claim.lhs, rep, f, self.order)
                    rhs = oracle_factors(claim.rhs, rep, f, self.order)
                except ExponentKindError:
                    return None
                fail = difference(lhs, rhs, f"{claim.label} on x^{m}", ORACLE)
                if fail is not None:
                    return fail
        return None

    def _poly(self, claim: PolyClaim) -> Failure | None:
        if REWRITER in self.channels:
            self._count(REWRITER)
            ctx = self.algebra(claim.relation)
            fail = difference(ctx.normal_order(claim.lhs), ctx.normal_order(claim.rhs), claim.label, REWRITER)
            if fail is not None:
                return fail
        if ORACLE in self.channels and claim.oracle and representable(claim.relation):
            self._count(ORACLE)
            rep = self.rep(claim.relation)
            for m in range(self.oracle_power + 1):
                f = XPoly.monomial(m, cap=ORACLE_CAP)
                try:
                    lhs, rhs = rep.act(claim.lhs, f), rep.act(claim.rhs, f)
                except ExponentKindError:
                    return None
                fail = difference(lhs, rhs, f"{claim.label} on x^{m}", ORACLE)
                if fail is not None:
                    return fail
        return None


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)
