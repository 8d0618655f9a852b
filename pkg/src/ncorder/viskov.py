"""Formal Cauchy problems and both orderings of exp((f(A)B + g(A))t).

``alpha`` solves ``alpha' = p(alpha) f(alpha)``, ``alpha(0) = A`` order by
order in commutative arithmetic; ``phi`` and ``gamma`` integrate ``f`` and
``g`` along it, and ``exp((f(A)B + g(A))t) = e^gamma (e^phi)^B``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combinat import UniPoly
from .ncalg import LEFT, RIGHT, Algebra, NCPoly, Relation, l_map
from .report import Failure, Report, timed
from .series import ASeries, TSeries, exp_element, exp_pow_A, exp_pow_B, first_difference, lift, s_exp, s_int, s_mul


@dataclass(frozen=True)
class CauchyProblem:
    p: UniPoly
    f: UniPoly
    g: UniPoly
    initial: str = "A"
    order: int = 6

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")
        if self.initial not in ("A", "B"):
            raise ValueError("initial must be 'A' or 'B'")
        for name in ("p", "f", "g"):
            value = getattr(self, name)
            if not isinstance(value, UniPoly):
                value = UniPoly.constant(value, self.initial)
            object.__setattr__(self, name, value.with_var(self.initial))

    def mirrored(self) -> "CauchyProblem":
        other = "B" if self.initial == "A" else "A"
        return CauchyProblem(self.p, self.f, self.g, other, self.order)


def solve_alpha(cp: CauchyProblem) -> ASeries:
    var = cp.initial
    coeffs = [UniPoly.monomial(1, 1, var)]
    for k in range(cp.order):
        a = ASeries(coeffs, k, var)
        rhs = a.compose(cp.p) * a.compose(cp.f)
        coeffs.append(rhs[k] / (k + 1))
    return ASeries(coeffs, cp.order, var)


def residual(cp: CauchyProblem, alpha: ASeries) -> ASeries:
    """alpha' - p(alpha) f(alpha), truncated at t^(order-1)."""
    rhs = (alpha.compose(cp.p) * alpha.compose(cp.f)).truncate(cp.order - 1)
    return alpha.derivative() - rhs


def phi_gamma(cp: CauchyProblem, alpha: ASeries | None = None) -> tuple[ASeries, ASeries]:
    alpha = solve_alpha(cp) if alpha is None else alpha
    return s_int(alpha.compose(cp.f)), s_int(alpha.compose(cp.g))


def _compare(report: Report, lhs: TSeries, rhs: TSeries, channel: str) -> None:
    diff = first_difference(lhs, rhs)
    if diff is not None:
        report.fail(Failure(*diff, channel=channel))


def normal_sides(cp: CauchyProblem) -> tuple[TSeries, TSeries]:
    """Both sides of the normal-ordered statement under [B, A] = p(A)."""
    cp = cp if cp.initial == "A" else cp.mirrored()
    ctx = Algebra(Relation.left(cp.p))
    x = NCPoly.from_unipoly(cp.f, LEFT) * NCPoly.gen(RIGHT) + NCPoly.from_unipoly(cp.g, LEFT)
    lhs = exp_element(x, ctx, cp.order)
    phi, gamma = phi_gamma(cp)
    rhs = s_mul(s_exp(lift(gamma, ctx)), exp_pow_B(phi, ctx))
    return lhs, rhs


def viskov_check(cp: CauchyProblem, name: str = "viskov-normal") -> Report:
    report = Report(name, order=cp.order, relation=f"[B, A] = {cp.p.with_var('A')}")
    with timed(report):
        lhs, rhs = normal_sides(cp)
        _compare(report, lhs, rhs, "rewriter-vs-flow")
    return report


def antinormal_sides(cp: CauchyProblem) -> tuple[TSeries, TSeries, TSeries]:
    """(direct LHS, direct RHS, L-image of the normal RHS) under [B, A] = p(B).

    Words are written with A on the left, which is the ordering of
    ``(e^A)^phi(B) e^gamma(B)``.
    """
    cpb = cp if cp.initial == "B" else cp.mirrored()
    ctx = Algebra(Relation.right(cpb.p))
    x = NCPoly.gen(LEFT) * NCPoly.from_unipoly(cpb.f, RIGHT) + NCPoly.from_unipoly(cpb.g, RIGHT)
    lhs = exp_element(x, ctx, cpb.order)
    phi, gamma = phi_gamma(cpb)
    rhs = s_mul(exp_pow_A(phi, ctx), s_exp(lift(gamma, ctx)))
    _, normal_rhs = normal_sides(cpb.mirrored())
    left_ctx = normal_rhs.ctx
    image = [l_map(c, left_ctx)[0] for c in normal_rhs.coeffs]
    via_l = TSeries(image, ctx, cpb.order)
    return lhs, rhs, via_l


def viskov_antinormal_check(cp: CauchyProblem, name: str = "viskov-antinormal") -> Report:
    report = Report(name, order=cp.order, relation=f"[B, A] = {cp.p.with_var('B')}")
    with timed(report):
        lhs, rhs, via_l = antinormal_sides(cp)
        _compare(report, lhs, rhs, "rewriter-vs-flow")
        _compare(report, lhs, via_l, "rewriter-vs-L")
    return report
