"""Named identities, each expanded into claims for a given env and order."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from ..bch import bch_log, bracket, dynkin_series
from ..bch import X as BX
from ..bch import Y as BY
from ..combinat import (
    UniPoly,
    bessel_poly,
    bessel_poly_factorial_form,
    binomial,
    bracket_eval,
    double_factorial,
    gen_stirling,
    lah,
    lah_recurrence,
    stirling1,
    stirling2,
)
from ..errors import NoNormalForm, NotTransformable, PoleAtEnv
from ..ncalg import LEFT, RIGHT, NCPoly, Relation, l_map, letters_word
from ..oracle import XPoly
from ..scalars import rational_sqrt, roots_of_quadratic
from ..series import ASeries, TSeries, exp_element, exp_pow_B, expo_general, s_mul, s_pow_scalar
from ..viskov import CauchyProblem, antinormal_sides, normal_sides, residual, solve_alpha, phi_gamma
from .engine import ALL_CHANNELS, ORACLE, REWRITER, SERIES, Factor, evaluate_factors, PolyClaim, RaisesClaim, SeriesClaim, ValueClaim
from .forms import (
    A_,
    B_,
    a_pow,
    algebra_for,
    alpha0_bt1,
    alpha0_bt2,
    berry_bt,
    bernoulli,
    bessel_bt,
    bessel_series,
    bivariate_bt,
    commutative_binomial,
    exp_scalar,
    expm1_over,
    fact_inv,
    glauber_bt,
    glauber_iverson,
    lah_product,
    monomial_bt1,
    monomial_bt2,
    monomial_phi,
    mss_product,
    phi_series,
    pow_A_coeffs,
    pow_B_coeffs,
    psi_series,
    psi_witness,
    quadratic_bt,
    to_aseries,
    upoly,
    uv_sequences,
)

SYM = "sym"
AB = A_() + B_()


@dataclass(frozen=True)
class EISpec:
    """``[B, A] = f(A)`` and ``e^{(A+B)t} = Psi_A(t) e^{Bt}``."""

    f: UniPoly
    psi: ASeries


@dataclass(frozen=True)
class CheckSpec:
    name: str
    build: Callable
    params: tuple = ((),)
    envs: tuple = ({},)
    relation: str = ""
    max_order: int = 8
    default_order: int = 8
    channels: frozenset = ALL_CHANNELS
    ei: Callable | None = None
    univariate: bool = True
    description: str = ""


def left(*coeffs) -> Relation:
    """left(c0, c1, c2) is [B, A] = c0 + c1 A + c2 A^2."""
    return Relation.left(UniPoly({e: c for e, c in enumerate(coeffs)}, "A"))


def left_mono(h, e) -> Relation:
    return Relation.left(UniPoly({e: h}, "A"))


def ser(a: ASeries, gen: int = LEFT) -> Factor:
    return Factor.of_aseries(a, gen)


def exp_of_aseries(a: ASeries, gen: int = LEFT) -> Factor:
    return Factor.exp_of([NCPoly.from_unipoly(c, gen) for c in a.coeffs])


def _integral_coeffs(polys) -> tuple[list, list]:
    bad = [c for p in polys for c in p.terms.values() if Fraction(c).denominator != 1]
    return bad, []


def _concrete(*values) -> bool:
    return all(isinstance(v, Fraction) for v in values)


def _ei_claims(label: str, rel: Relation, psi: ASeries) -> list:
    return [SeriesClaim(label, rel, [Factor.exp_t(AB)], [ser(psi), Factor.exp_t(B_())])]


# ---------------------------------------------------------------------------
# exponentiation and the L map
# ---------------------------------------------------------------------------

def _expo_base(ctx, alpha, order) -> TSeries:
    coeffs = [NCPoly.one()]
    for k in range(1, order + 1):
        coeffs.append((A_(k) + A_(1, alpha * k)).scale(fact_inv(k)))
    return TSeries(coeffs, ctx, order)


def build_expo_laws(env, N, seed):
    alpha, lam, mu = env["alpha"], env["lambda"], env["mu"]
    ctx = algebra_for(left(alpha))

    def x():
        return _expo_base(ctx, alpha, N)

    b = A_(1, lam)
    c = A_(1, mu) + A_(2)
    return [
        ValueClaim("x^lambda x^mu = x^(lambda+mu)",
                   lambda: (s_mul(s_pow_scalar(x(), lam), s_pow_scalar(x(), mu)), s_pow_scalar(x(), lam + mu)), SERIES),
        ValueClaim("(x^lambda)^mu = x^(lambda mu)",
                   lambda: (s_pow_scalar(s_pow_scalar(x(), lam), mu), s_pow_scalar(x(), lam * mu)), SERIES),
        ValueClaim("x^b x^c = x^(b+c)",
                   lambda: (s_mul(expo_general(x(), b), expo_general(x(), c)), expo_general(x(), b + c)), SERIES),
        ValueClaim("(x^b)^c = x^(bc)",
                   lambda: (expo_general(expo_general(x(), b), c), expo_general(x(), ctx.nmul(b, c))), SERIES),
        ValueClaim("scalar exponent agrees with the Stirling route",
                   lambda: (expo_general(x(), NCPoly.scalar(lam)), s_pow_scalar(x(), lam)), SERIES),
        SeriesClaim("x^lambda x^mu = x^(lambda+mu), factor by factor", left(alpha),
                    [Factor.of_tseries(s_pow_scalar(x(), lam)), Factor.of_tseries(s_pow_scalar(x(), mu))],
                    [Factor.of_tseries(s_pow_scalar(x(), lam + mu))]),
        SeriesClaim("x^b x^c = x^(b+c), factor by factor", left(alpha),
                    [Factor.of_tseries(expo_general(x(), b)), Factor.of_tseries(expo_general(x(), c))],
                    [Factor.of_tseries(expo_general(x(), b + c))]),
    ]


def build_eab(env, N, seed):
    alpha, eps, lam = env["alpha"], env["epsilon"], env["lambda"]
    rels = [left(alpha), left(0, eps), left(0, 0, -lam), Relation.right(UniPoly({0: alpha, 1: eps}, "B"))]
    if _concrete(eps, lam):
        rels.append(Relation.bivariate(AB.scale(eps) + (AB * AB).scale(lam)))
    claims = []
    for rel in rels:
        order = min(N, 6) if rel.kind == "bivariate" else N
        claims.append(ValueClaim(f"sum A^n B^n/n! = (e^A)^B under {rel.describe()}", _eab_sides(rel, order), SERIES))
    claims.append(ValueClaim("free algebra, degree cap", _eab_free(N), SERIES))
    return claims


def _eab_sides(rel, order):
    def compute():
        ctx = algebra_for(rel)
        direct = TSeries([(A_(n) * B_(n)).scale(fact_inv(n)) if n else NCPoly.one() for n in range(order + 1)], ctx, order)
        via_stirling = expo_general(exp_element(A_(), ctx, order), B_())
        via_flow = exp_pow_B(ASeries([0, UniPoly({1: 1}, "A")], order), ctx)
        return [direct, direct], [via_stirling, via_flow]
    return compute


def _eab_free(order):
    def compute():
        from ..ncalg import Algebra
        ctx = Algebra(Relation.free(), degree_cap=2 * order)
        direct = TSeries([(A_(n) * B_(n)).scale(fact_inv(n)) if n else NCPoly.one() for n in range(order + 1)], ctx, order)
        return direct, expo_general(exp_element(A_(), ctx, order), B_())
    return compute


def _chain_relations(env):
    alpha, eps, lam, h = env["alpha"], env["epsilon"], env["lambda"], env["h"]
    return [
        left(alpha),
        left(0, eps),
        left(alpha, eps, -lam),
        left_mono(h, 3),
        left_mono(h, Fraction(1, 2)),
        Relation.right(UniPoly({0: alpha, 1: eps}, "B")),
    ]


CHAIN_TEST_POLYS = (
    UniPoly({0: 1, 1: 2, 3: -1, 5: Fraction(1, 3)}, "A"),
    UniPoly({4: 1, 2: -3, 1: Fraction(1, 2)}, "A"),
)


def _d_iter(p: UniPoly, g: UniPoly, k: int) -> UniPoly:
    """(p d/dA)^k g."""
    for _ in range(k):
        g = p * g.derivative()
    return g


def build_chain(env, N, seed):
    claims = []
    for rel in _chain_relations(env):
        if rel.kind != "left":
            continue
        for f in CHAIN_TEST_POLYS:
            fa = NCPoly.from_unipoly(f, LEFT)
            lhs = B_() * fa - fa * B_()
            rhs = NCPoly.from_unipoly(rel.p * f.derivative(), LEFT)
            claims.append(PolyClaim(f"[B, f(A)] = p f' for f = {f}, {rel.describe()}", rel, lhs, rhs))
    return claims


def build_leibniz(env, N, seed):
    claims = []
    for rel in _chain_relations(env):
        ctx = algebra_for(rel)
        if rel.kind == "left":
            ads = [UniPoly({1: 1}, "A")]
            for _ in range(N):
                ads.append(rel.p * ads[-1].derivative())
            ad_nc = [NCPoly.from_unipoly(a, LEFT) for a in ads]
        else:
            ad_nc = [A_(), rel.commutator_value()] + [NCPoly.zero()] * N
        for k in range(1, min(N, 4) + 1):
            claims.append(ValueClaim(f"ad_B^{k}(A) via the rewriter, {rel.describe()}",
                                     (lambda k=k, ctx=ctx, ad=ad_nc: (ctx.adjoint_pow(k, A_()), ctx.normal_order(ad[k])))))
        for n in range(1, N + 1):
            rhs1 = NCPoly.zero()
            rhs2 = NCPoly.zero()
            for k in range(n + 1):
                c = math.comb(n, k)
                rhs1 = rhs1 + (ad_nc[k] * (B_(n - k) if n - k else NCPoly.one())).scale(c)
                rhs2 = rhs2 + ((B_(n - k) if n - k else NCPoly.one()) * ad_nc[k]).scale(c * (-1) ** k)
            claims.append(PolyClaim(f"B^{n} A Leibniz, {rel.describe()}", rel, B_(n) * A_(), rhs1))
            claims.append(PolyClaim(f"A B^{n} Leibniz, {rel.describe()}", rel, A_() * B_(n), rhs2))
    return claims


def random_element(rng: random.Random, max_degree: int = 3, terms: int = 3, half: bool = False) -> NCPoly:
    out = NCPoly.zero()
    for _ in range(terms):
        length = rng.randint(0, max_degree)
        letters = [rng.choice((LEFT, RIGHT)) for _ in range(length)]
        word = letters_word(letters)
        if half and rng.random() < 0.3:
            word = word + ((LEFT, Fraction(1, 2)),)
            from ..ncalg import make_word
            word = make_word(word)
        out = out + NCPoly.monomial(word, Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    return out


def build_thm_l(env, N, seed):
    eps, lam, h = env["epsilon"], env["lambda"], env["h"]
    rels = [left(1), left(0, eps), left(0, 0, -lam), left(1, eps, -lam), left_mono(h, Fraction(1, 2))]
    rng = random.Random(seed)
    claims = []
    for rel in rels:
        ctx = algebra_for(rel)
        half = rel.p.degree() == Fraction(1, 2)
        for i in range(12):
            x = random_element(rng, half=half)
            y = random_element(rng, half=half)
            claims.append(ValueClaim(f"L(xy) = L(y)L(x) sample {i}, {rel.describe()}", _l_pair(ctx, x, y)))
            if not half:
                img, image = l_map(ctx.nmul(x, y), ctx)
                claims.append(PolyClaim(f"L(xy) = L(y)L(x) sample {i} as operators, {image.relation.describe()}",
                                        image.relation, img, l_map(y, ctx)[0] * l_map(x, ctx)[0]))
        claims.append(ValueClaim(f"L(L(x)) = x, {rel.describe()}", _l_twice(ctx, random_element(rng))))
        for x in (AB, A_() * B_()):
            claims.append(ValueClaim(f"L(exp({x})) = exp(L({x})), {rel.describe()}", _l_exp(ctx, x, min(N, 6)), SERIES))
    return claims


def _l_pair(ctx, x, y):
    def compute():
        img, image = l_map(ctx.nmul(x, y), ctx)
        ly, _ = l_map(y, ctx)
        lx, _ = l_map(x, ctx)
        return img, image.nmul(ly, lx)
    return compute


def _l_twice(ctx, x):
    def compute():
        once, image = l_map(x, ctx)
        twice, _ = l_map(once, image)
        return twice, ctx.normal_order(x)
    return compute


def _l_exp(ctx, x, order):
    def compute():
        s = exp_element(x, ctx, order)
        lx, image = l_map(x, ctx)
        mapped = TSeries([l_map(c, ctx)[0] for c in s.coeffs], image, order)
        return mapped, exp_element(lx, image, order)
    return compute


UMBRAL_CAP = 8
UMBRAL_WEIGHT = 4


def _umbral_x(g: UniPoly, n_max: int) -> NCPoly:
    """sum_{n <= n_max} (g(A) - A)^n B^n / n!."""
    d = NCPoly.from_unipoly(g - UniPoly({1: 1}, "A"), LEFT)
    out, power = NCPoly.one(), NCPoly.one()
    for n in range(1, n_max + 1):
        power = power * d
        out = out + (power * B_(n)).scale(fact_inv(n))
    return out


def _weight_truncate(x: NCPoly, k: int, left_gen: int = LEFT) -> NCPoly:
    """Keep words whose (left_gen exponent) - (other exponent) is at most k."""
    keep = {}
    for w, c in x.terms.items():
        wt = sum(e if g == left_gen else -e for g, e in w)
        if wt <= k:
            keep[w] = c
    return NCPoly(keep)


def build_umbral(env, N, seed):
    weyl = left(1)
    capped = _capped_weyl()
    claims = []
    gs = {"x^2": UniPoly({2: 1}, "A"), "x+x^3": UniPoly({1: 1, 3: 1}, "A")}
    for name, g in gs.items():
        claims.append(ValueClaim(f"L((e^(g-x))^D) = (e^x)^(g(D)-D) under the cap, g = {name}", _umbral_l(capped, g)))
        for m in range(7):
            claims.append(ValueClaim(f"(e^(g-x))^D x^{m} = g^{m}, g = {name}", _umbral_oracle(weyl, g, m), ORACLE))
    g1 = UniPoly({1: 1, 3: 1}, "A")
    g2 = UniPoly({1: 1, 2: 1}, "A")
    k = min(N, UMBRAL_WEIGHT)
    claims.append(ValueClaim("X_g1 X_g2 = X_(g2 o g1) by weight", _umbral_compose(g1, g2, k)))
    claims.append(ValueClaim("L(X_g1 X_g2) = L(X_g2) L(X_g1) by weight", _umbral_anti(g1, g2, k)))
    return claims


def _capped_weyl():
    from ..ncalg import Algebra
    return Algebra(left(1), degree_cap=UMBRAL_CAP)


def _umbral_l(ctx, g):
    def compute():
        x = _umbral_x(g, UMBRAL_CAP).truncate(UMBRAL_CAP)
        img, _ = l_map(x, ctx)
        d = NCPoly.from_unipoly(g.with_var("B") - UniPoly({1: 1}, "B"), RIGHT)
        out, power = NCPoly.one(), NCPoly.one()
        for n in range(1, UMBRAL_CAP + 1):
            power = power * d
            out = out + (A_(n) * power).scale(fact_inv(n))
        return img.truncate(UMBRAL_CAP), out.truncate(UMBRAL_CAP)
    return compute


def _umbral_oracle(rel, g, m):
    def compute():
        from ..oracle import Representation
        rep = Representation(rel)
        f = XPoly.monomial(m)
        gx = XPoly(dict(g.terms))
        return rep.act(_umbral_x(g, m), f), _xpow(gx, m)
    return compute


def _xpow(p: XPoly, m: int) -> XPoly:
    out = XPoly({0: 1}, p.cap)
    for _ in range(m):
        out = out * p
    return out


def _umbral_compose(g1, g2, k):
    def compute():
        ctx = algebra_for(left(1))
        prod = ctx.nmul(_umbral_x(g1, k), _umbral_x(g2, k))
        comp = UniPoly({}, "A")
        for e, c in g2.terms.items():
            comp = comp + (g1**e) * c
        return _weight_truncate(prod, k), _weight_truncate(_umbral_x(comp, k), k)
    return compute


def _umbral_anti(g1, g2, k):
    def compute():
        ctx = algebra_for(left(1))
        x1, x2 = _umbral_x(g1, k), _umbral_x(g2, k)
        lhs, image = l_map(ctx.nmul(x1, x2), ctx)
        rhs = image.nmul(l_map(x2, ctx)[0], l_map(x1, ctx)[0])
        # in the image D = RIGHT plays the role A had, so its exponent counts positively
        return _weight_truncate(lhs, k, RIGHT), _weight_truncate(rhs, k, RIGHT)
    return compute


# ---------------------------------------------------------------------------
# BCH
# ---------------------------------------------------------------------------

def _br(*letters) -> NCPoly:
    """Right-nested bracket of X/Y letters given as strings."""
    gens = [BX if c == "X" else BY for c in letters]
    out = gens[-1]
    for g in reversed(gens[:-1]):
        out = bracket(g, out)
    return out


BCH_DISPLAYED = {
    1: lambda: BX + BY,
    2: lambda: _br("X", "Y").scale(Fraction(1, 2)),
    3: lambda: (_br("X", "X", "Y") + _br("Y", "Y", "X")).scale(Fraction(1, 12)),
    4: lambda: _br("Y", "X", "X", "Y").scale(Fraction(-1, 24)),
    5: lambda: (
        (_br("Y", "Y", "Y", "Y", "X") + _br("X", "X", "X", "X", "Y")).scale(Fraction(-1, 720))
        + (_br("X", "Y", "Y", "Y", "X") + _br("Y", "X", "X", "X", "Y")).scale(Fraction(1, 360))
        + (_br("Y", "X", "Y", "X", "Y") + _br("X", "Y", "X", "Y", "X")).scale(Fraction(1, 120))
    ),
}


def build_bch(env, N, seed):
    claims = [ValueClaim("log(e^X e^Y) = Dynkin sum", lambda: (bch_log(N), dynkin_series(N)), SERIES)]
    for n in range(1, min(N, 5) + 1):
        claims.append(ValueClaim(f"displayed degree-{n} terms", lambda n=n: (bch_log(N).coeffs[n], BCH_DISPLAYED[n]()), SERIES))
    return claims


# ---------------------------------------------------------------------------
# existence and similarity
# ---------------------------------------------------------------------------

def _exist_relations(env):
    alpha, eps, lam, h = env["alpha"], env["epsilon"], env["lambda"], env["h"]
    rels = [
        left(alpha), left(0, eps), left(alpha, eps, -lam), left_mono(h, 3), left(0),
        Relation.right(UniPoly({0: alpha}, "B")),
        Relation.right(UniPoly({1: eps}, "B")),
        Relation.right(UniPoly({2: h}, "B")),
    ]
    if _concrete(eps, lam):
        rels.append(Relation.bivariate(AB.scale(eps)))
        rels.append(Relation.bivariate(B_(1, eps) + A_(2, lam)))
    return rels


def build_exist(env, N, seed):
    claims = []
    for rel in _exist_relations(env):
        order = min(N, 6) if rel.kind == "bivariate" else N
        b_free = RIGHT not in rel.commutator_value().generators()
        claims.append(ValueClaim(f"Psi B-free iff [B, A] B-free, {rel.describe()}", _psi_free(rel, order, b_free)))
        if rel.kind == "left":
            claims.append(ValueClaim(f"Psi(0) = 1, Psi'(0) = A, Psi''(0) - A^2 = [B, A], {rel.describe()}", _psi_low(rel, order)))
            claims.append(SeriesClaim(f"e^((A+B)t) = Psi e^(Bt), {rel.describe()}", rel,
                                      [Factor.exp_t(AB)], [Factor.of_tseries(psi_series(rel, order)), Factor.exp_t(B_())]))
    alpha, lam = env["alpha"], env["lambda"]
    weyl = ASeries([0, 0, UniPoly.constant(alpha / 2, "A")], N).exp() * ASeries([0, UniPoly({1: 1}, "A")], N).exp()
    jordan = a_pow(ASeries([1, UniPoly({1: lam}, "A")], N), 1 / lam) if lam else None
    claims.append(ValueClaim("Weyl: Psi = e^(alpha t^2/2) e^(At)", lambda: (to_aseries(psi_series(left(alpha), N)), weyl)))
    claims.append(ValueClaim("commuting: Psi = e^(At)", lambda: (to_aseries(psi_series(left(0), N)), ASeries([0, UniPoly({1: 1}, "A")], N).exp())))
    if jordan is not None:
        claims.append(ValueClaim("Jordan: Psi = (1 + lambda A t)^(1/lambda)", lambda: (to_aseries(psi_series(left(0, 0, -lam), N)), jordan)))
    return claims


def _psi_free(rel, order, expected):
    def compute():
        psi = psi_series(rel, order)
        witness = psi_witness(psi)
        return (witness is None, expected)
    return compute


def _psi_low(rel, order):
    def compute():
        psi = psi_series(rel, order)
        low = [psi.coeffs[0], psi.coeffs[1]]
        bracket_value = (psi.coeffs[2].scale(2) - A_(2)) if order >= 2 else rel.commutator_value()
        return low + [bracket_value], [NCPoly.one(), A_(), rel.commutator_value()]
    return compute


def build_psi_lambda(env, N, seed):
    alpha, eps, lam, mu, h = env["alpha"], env["epsilon"], env["lambda"], env["mu"], env["h"]
    claims = []
    for rel in (left(alpha), left(0, eps), left(alpha, eps, -lam), left_mono(h, 3)):
        psi = to_aseries(psi_series(rel, N))
        claims.append(SeriesClaim(f"e^((mu A + B)t) = Psi^mu e^(Bt), {rel.describe()}", rel,
                                  [Factor.exp_t(A_(1, mu) + B_())], [ser(a_pow(psi, mu)), Factor.exp_t(B_())]))
    return claims


# ---------------------------------------------------------------------------
# quadratic commutators
# ---------------------------------------------------------------------------

def _quad_scalars(env):
    if "r" in env:
        r, rho = env["r"], env["rho"]
        return -r * rho, r + rho, r, rho
    alpha, eps = env["alpha"], env["epsilon"]
    r, rho = roots_of_quadratic(-1, eps, alpha)
    return alpha, eps, r, rho


def build_quad_mono(env, N, seed):
    alpha, eps, r, rho = _quad_scalars(env)
    rel = left(alpha, eps, -1)
    u, v = uv_sequences(alpha, eps, N + 1)
    phi = phi_series(r, rho, N)
    claims = []
    if r != rho:
        closed_u = [(rho**n - r**n) / (rho - r) for n in range(N + 2)]
        closed_v = [(rho * r**n - r * rho**n) / (rho - r) for n in range(N + 2)]
    else:
        closed_u = [n * r ** (n - 1) if n else Fraction(0) for n in range(N + 2)]
        closed_v = [(1 - n) * r**n for n in range(N + 2)]
    claims.append(ValueClaim("u, v recurrence = closed forms", lambda: ([u, v], [closed_u, closed_v])))
    claims.append(ValueClaim("cross-link v_(n+1) = alpha u_n, u_(n+1) = v_n + eps u_n",
                             lambda: ([v[1:], u[1:]], [[alpha * x for x in u[:-1]], [a + eps * b for a, b in zip(v[:-1], u[:-1])]])))
    claims.append(ValueClaim("Phi coefficients are (v_n + u_n A)/n!",
                             lambda: (phi, ASeries([UniPoly({0: v[n] * fact_inv(n), 1: u[n] * fact_inv(n)}, "A") for n in range(N + 1)], N))))
    for n in range(N + 1):
        claims.append(PolyClaim(f"i => ii: (A+B)^{n}", rel, AB**n, quadratic_bt(n, u, v)))
    ctx = algebra_for(rel)

    def resum():
        bt = TSeries([quadratic_bt(n, u, v).scale(fact_inv(n)) for n in range(N + 1)], ctx, N)
        rhs = s_mul(TSeries([NCPoly.from_unipoly(c, LEFT) for c in phi.coeffs], ctx, N), exp_element(B_(), ctx, N))
        return bt, rhs

    claims.append(ValueClaim("ii => iii: summed BT = Phi e^(Bt)", resum, SERIES))
    claims.extend(_ei_claims("iii: e^((A+B)t) = Phi_A(t, r, rho) e^(Bt)", rel, phi))
    square = A_(2) + (A_() * B_()).scale(2) + B_(2)

    def from_ei():
        _, rhs = resum()
        return rhs.coeffs[2].scale(2) - square if N >= 2 else rel.commutator_value(), rel.commutator_value()

    claims.append(ValueClaim("iii => i: 2[t^2] - A^2 - 2AB - B^2 = [B, A]", from_ei, SERIES))
    claims.append(ValueClaim("ii => i: BT at n = 2 gives the relation",
                             lambda: (quadratic_bt(2, u, v) - square, rel.commutator_value())))
    return claims


def _general_phi(lam, r, rho, N):
    return a_pow(phi_series(r, rho, N).scale_t(lam), 1 / lam)


def _general_scalars(env):
    lam = env["lambda"]
    if not lam:
        raise PoleAtEnv("the exponent 1/lambda has a pole at lambda = 0")
    if "r" in env:
        r, rho = env["r"], env["rho"]
        return lam, -lam * r * rho, lam * (r + rho), r, rho
    alpha, eps = env["alpha"], env["epsilon"]
    r, rho = roots_of_quadratic(-lam, eps, alpha)
    return lam, alpha, eps, r, rho


def ei_quad_general(env, N) -> EISpec:
    lam, alpha, eps, r, rho = _general_scalars(env)
    return EISpec(UniPoly({0: alpha, 1: eps, 2: -lam}, "A"), _general_phi(lam, r, rho, N))


def build_quad_general(env, N, seed):
    lam, alpha, eps, r, rho = _general_scalars(env)
    spec = ei_quad_general(env, N)
    rel = left(alpha, eps, -lam)
    claims = _ei_claims("e^((A+B)t) = Phi_A(lambda t, r, rho)^(1/lambda) e^(Bt)", rel, spec.psi)
    if r != rho:
        def remark():
            inner = ASeries([1], N) + ASeries([UniPoly({0: -r, 1: 1}, "A")], N) * expm1_over(lam * (rho - r), N).scale_t(1).scale(lam)
            return exp_scalar(r, N) * a_pow(inner, 1 / lam), spec.psi
        claims.append(ValueClaim("Remark: e^(rt)(1 + (A-r)(e^(lambda(rho-r)t)-1)/(rho-r))^(1/lambda)", remark))
    return claims


def ei_eps0(env, N) -> EISpec:
    lam, alpha = env["lambda"], env["alpha"]
    s = rational_sqrt(lam * alpha)
    cosh = (exp_scalar(s, N) + exp_scalar(-s, N)).scale(Fraction(1, 2))
    sinh = (exp_scalar(s, N) - exp_scalar(-s, N)).scale(Fraction(1, 2))
    base = cosh + sinh.scale(UniPoly({1: lam / s}, "A"))
    return EISpec(UniPoly({0: alpha, 2: -lam}, "A"), a_pow(base, 1 / lam))


def build_eps0(env, N, seed):
    lam, alpha = env["lambda"], env["alpha"]
    spec = ei_eps0(env, N)
    rel = left(alpha, 0, -lam)
    claims = _ei_claims("e^((A+B)t) = (cosh + A sqrt(lambda/alpha) sinh)^(1/lambda) e^(Bt)", rel, spec.psi)
    r, rho = roots_of_quadratic(-lam, 0, alpha)
    claims.append(ValueClaim("agrees with the general-lambda form", lambda: (spec.psi, _general_phi(lam, r, rho, N))))
    return claims


def ei_alpha0(env, N) -> EISpec:
    eps, lam = env["epsilon"], env["lambda"]
    base = ASeries([1], N) + expm1_over(eps, N).scale(UniPoly({1: lam}, "A"))
    return EISpec(UniPoly({1: eps, 2: -lam}, "A"), a_pow(base, 1 / lam))


def _bt_pair(rel, n, bt1, bt2, label):
    return [
        PolyClaim(f"{label} first BT form, n = {n}", rel, AB**n, bt1),
        PolyClaim(f"{label} second BT form, n = {n}", rel, AB**n, bt2),
        ValueClaim(f"{label} BT forms agree, n = {n}", lambda: (bt1, bt2)),
    ]


def build_alpha0(env, N, seed):
    eps, lam = env["epsilon"], env["lambda"]
    rel = left(0, eps, -lam)
    claims = []
    bts = []
    for n in range(N + 1):
        bt1, bt2 = alpha0_bt1(n, eps, lam), alpha0_bt2(n, eps, lam)
        bts.append(bt1)
        claims.extend(_bt_pair(rel, n, bt1, bt2, "alpha = 0"))
    if _integer_env(eps, lam):
        claims.append(ValueClaim("integer env gives integer BT coefficients", lambda: _integral_coeffs(bts)))
    claims.extend(_ei_claims("e^((A+B)t) = (1 + lambda A (e^(eps t)-1)/eps)^(1/lambda) e^(Bt)", rel, ei_alpha0(env, N).psi))
    return claims


def _integer_env(*values) -> bool:
    return all(isinstance(v, Fraction) and v.denominator == 1 for v in values)


def _ore_factors(alpha, eps, N):
    scalar = [Fraction(0), Fraction(0)] + [alpha * eps ** (n - 2) * fact_inv(n) for n in range(2, N + 1)]
    a_part = [NCPoly.zero()] + [A_(1, eps ** (n - 1) * fact_inv(n)) for n in range(1, N + 1)]
    return [Factor.exp_of(scalar), Factor.exp_of(a_part)]


def ei_ore(env, N) -> EISpec:
    alpha, eps = env["alpha"], env["epsilon"]
    scalar = ASeries.from_scalars([0, 0] + [alpha * eps ** (n - 2) * fact_inv(n) for n in range(2, N + 1)], N)
    a_part = expm1_over(eps, N).scale(UniPoly({1: 1}, "A"))
    return EISpec(UniPoly({0: alpha, 1: eps}, "A"), scalar.exp() * a_part.exp())


def build_ore(env, N, seed):
    alpha, eps = env["alpha"], env["epsilon"]
    rel = left(alpha, eps)
    claims = [SeriesClaim("e^((A+B)t) = e^((alpha/eps)((e^(eps t)-1)/eps - t)) e^(A(e^(eps t)-1)/eps) e^(Bt)", rel,
                          [Factor.exp_t(AB)], _ore_factors(alpha, eps, N) + [Factor.exp_t(B_())])]
    claims.append(ValueClaim("product of exponentials equals the EI series", lambda: (
        to_aseries(evaluate_factors(_ore_factors(alpha, eps, N), algebra_for(rel), N)), ei_ore(env, N).psi), SERIES))
    return claims


def build_zass(env, N, seed):
    alpha, eps = env["alpha"], env["epsilon"]
    rel = left(alpha, eps)
    bern = bernoulli(N)
    comm = NCPoly.scalar(alpha) + A_(1, eps)
    exponent = [NCPoly.zero(), AB] + [comm.scale(bern[n] * eps ** (n - 1) * fact_inv(n)) for n in range(1, N)]
    claims = [SeriesClaim("e^(At) e^(Bt) = exp((A + B + [B, A](t/(e^(eps t)-1) - 1/eps))t)", rel,
                          [Factor.exp_t(A_()), Factor.exp_t(B_())], [Factor.exp_of(exponent)])]
    # e^{(c(t)A + B)t} with c = eps t/(e^{eps t} - 1) = sum_n B_n (eps t)^n/n!
    lhs_exp = [NCPoly.zero(), AB] + [A_(1, bern[n] * eps**n * fact_inv(n)) for n in range(1, N)]
    scalar = [Fraction(0), Fraction(0)] + [-alpha * bern[n] * eps ** (n - 1) * fact_inv(n) for n in range(1, N)]
    claims.append(SeriesClaim("e^((c(t)A + B)t) = e^((alpha t/eps)(1 - c(t))) e^(At) e^(Bt)", rel,
                              [Factor.exp_of(lhs_exp)], [Factor.exp_of(scalar), Factor.exp_t(A_()), Factor.exp_t(B_())]))
    known = [Fraction(1), Fraction(-1, 2), Fraction(1, 6), Fraction(0), Fraction(-1, 30)]
    claims.append(ValueClaim("Bernoulli numbers", lambda: (bern[:5], known[: N + 1])))
    return claims


def ei_berry(env, N) -> EISpec:
    lam = env["lambda"]
    return EISpec(UniPoly({2: -lam}, "A"), a_pow(ASeries([1, UniPoly({1: lam}, "A")], N), 1 / lam))


def build_berry(env, N, seed):
    lam = env["lambda"]
    rel = left(0, 0, -lam)
    claims = [PolyClaim(f"(A+B)^{n} = sum C(n,k)[lambda]_k A^k B^(n-k)", rel, AB**n, berry_bt(n, lam)) for n in range(N + 1)]
    claims.extend(_ei_claims("e^((A+B)t) = (1 + lambda A t)^(1/lambda) e^(Bt)", rel, ei_berry(env, N).psi))
    return claims


def ei_sack(env, N) -> EISpec:
    eps = env["epsilon"]
    return EISpec(UniPoly({1: eps}, "A"), expm1_over(eps, N).scale(UniPoly({1: 1}, "A")).exp())


def build_sack(env, N, seed):
    eps = env["epsilon"]
    rel = left(0, eps)
    claims = []
    bts = []
    for n in range(N + 1):
        bt1, bt2 = alpha0_bt1(n, eps, 0), alpha0_bt2(n, eps, 0)
        bts.append(bt1)
        claims.extend(_bt_pair(rel, n, bt1, bt2, "Sack"))
    if _integer_env(eps):
        claims.append(ValueClaim("integer env gives integer BT coefficients", lambda: _integral_coeffs(bts)))
    a_part = [NCPoly.zero()] + [A_(1, eps ** (n - 1) * fact_inv(n)) for n in range(1, N + 1)]
    claims.append(SeriesClaim("e^((A+B)t) = e^(A(e^(eps t)-1)/eps) e^(Bt)", rel,
                              [Factor.exp_t(AB)], [Factor.exp_of(a_part), Factor.exp_t(B_())]))
    return claims


def ei_glauber(env, N) -> EISpec:
    alpha = env["alpha"]
    psi = ASeries([0, 0, UniPoly.constant(alpha / 2, "A")], N).exp() * ASeries([0, UniPoly({1: 1}, "A")], N).exp()
    return EISpec(UniPoly({0: alpha}, "A"), psi)


def build_glauber(env, N, seed):
    alpha = env["alpha"]
    rel = left(alpha)
    claims = []
    for n in range(N + 1):
        bt = glauber_bt(n, alpha)
        claims.append(PolyClaim(f"Glauber BT, n = {n}", rel, AB**n, bt))
        claims.append(ValueClaim(f"Iverson-bracket form, n = {n}", lambda n=n, bt=bt: (glauber_iverson(n, alpha), bt)))
    claims.append(SeriesClaim("e^((A+B)t) = e^(alpha t^2/2) e^(At) e^(Bt)", rel, [Factor.exp_t(AB)],
                              [Factor.exp_of([0, 0, alpha / 2]), Factor.exp_t(A_()), Factor.exp_t(B_())]))
    return claims


# ---------------------------------------------------------------------------
# bivariate commutators
# ---------------------------------------------------------------------------

def bivariate_relation(eps, lam) -> Relation:
    return Relation.bivariate(AB.scale(eps) + (AB * AB).scale(lam))


def build_bivariate(env, N, seed):
    eps, lam = env["epsilon"], env["lambda"]
    if _concrete(lam) and any(bracket_eval(lam, n) == 0 for n in range(N + 1)):
        raise PoleAtEnv(f"[lambda]_n vanishes for some n <= {N} at lambda={lam}; 1/lambda must avoid 1..{N - 1}")
    rel = bivariate_relation(eps, lam)
    claims = []
    for n in range(N + 1):
        claims.append(PolyClaim(f"ii: [lambda]_{n} (A+B)^{n}", rel, (AB**n).scale(bracket_eval(lam, n)), bivariate_bt(n, eps), oracle=False))
    square = A_(2) + (A_() * B_()).scale(2) + B_(2)

    def recover():
        ctx = algebra_for(rel)
        normal_square = bivariate_bt(2, eps).scale(1 / bracket_eval(lam, 2))
        return normal_square - square, ctx.normal_order(rel.q)

    claims.append(ValueClaim("i from n = 2 via the commutator identity", recover))
    lin = [NCPoly.zero()] + [AB.scale((-1) ** (n - 1) * eps ** (n - 1) * fact_inv(n) * lam) for n in range(1, N + 1)]

    def rhs():
        ctx = algebra_for(rel)
        base = TSeries([NCPoly.one()] + lin[1:], ctx, N)
        return s_mul(exp_element(A_(), ctx, N), exp_element(B_(), ctx, N)), s_pow_scalar(base, 1 / lam, route="binomial")

    claims.append(ValueClaim("iii: e^(At) e^(Bt) = (1 + lambda(A+B)(1-e^(-eps t))/eps)^(1/lambda)", rhs, SERIES))
    return claims


ROSENGREN_WORDS = [letters_word(ls) for n in range(1, 6) for ls in itertools.product((LEFT, RIGHT), repeat=n)]


def build_rosengren(env, N, seed):
    lam, mu = env["lambda"], env["mu"]
    rel = Relation.bivariate(A_(2, lam) + B_(2, mu))
    b2a = B_(2) * A_()
    if _concrete(lam, mu) and lam * mu == 1:
        return [RaisesClaim("B^2 A has no normal form when lambda mu = 1", lambda: algebra_for(rel).normal_order(b2a),
                            NoNormalForm, lambda e: e.grade == 3)]
    d = 1 - lam * mu
    expected = A_(3, 2 * lam**2 / d) + (A_(2) * B_()).scale(2 * lam / d) + (A_() * B_(2)).scale((1 + lam * mu) / d) + B_(3, 2 * mu / d)
    claims = [
        ValueClaim("BA = AB + lambda A^2 + mu B^2", lambda: (algebra_for(rel).normal_order(B_() * A_()), A_() * B_() + A_(2, lam) + B_(2, mu))),
        ValueClaim("B^2 A coefficients", lambda: (algebra_for(rel).normal_order(b2a), expected)),
        ValueClaim("unsolved form B^2A = 2l^2A^3 + 2lA^2B + (1+lm)AB^2 + 2mB^3 + lm B^2A", lambda: (
            algebra_for(rel).normal_order(b2a).scale(d),
            A_(3, 2 * lam**2) + (A_(2) * B_()).scale(2 * lam) + (A_() * B_(2)).scale(1 + lam * mu) + B_(3, 2 * mu))),
    ]
    if _concrete(lam):
        degenerate = Relation.bivariate(A_(2, lam))
        words = [NCPoly.monomial(w) for w in ROSENGREN_WORDS]
        claims.append(ValueClaim("mu = 0: grade solver = univariate rewriter", lambda: (
            [algebra_for(degenerate).normal_order(w) for w in words], [algebra_for(left(0, 0, lam)).normal_order(w) for w in words])))
    return claims


def build_excedance(env, N, seed):
    eps = env["epsilon"]
    rel = Relation.bivariate(AB.scale(eps))
    claims = [PolyClaim(f"(A+B)^{n} = sum c(n,k) eps^(n-k) (A+B)_comm^k", rel, AB**n, bivariate_bt(n, eps), oracle=False) for n in range(N + 1)]
    exponent = [NCPoly.zero()] + [AB.scale((-1) ** (n - 1) * eps ** (n - 1) * fact_inv(n)) for n in range(1, N + 1)]
    claims.append(SeriesClaim("e^(At) e^(Bt) = e^((A+B)(1-e^(-eps t))/eps)", rel,
                              [Factor.exp_t(A_()), Factor.exp_t(B_())], [Factor.exp_of(exponent)], oracle=False))
    return claims


# ---------------------------------------------------------------------------
# Viskov
# ---------------------------------------------------------------------------

VISKOV_FG = (("1", "0"), ("x", "0"), ("1", "x"), ("x", "x^2"))
_FG = {"0": {}, "1": {0: 1}, "x": {1: 1}, "x^2": {2: 1}}


def viskov_ps(env) -> list[UniPoly]:
    eps, lam, h = env["epsilon"], env["lambda"], env["h"]
    return [
        UniPoly({0: 1}, "A"), UniPoly({0: 1, 2: 1}, "A"), UniPoly({1: eps}, "A"),
        UniPoly({2: -lam}, "A"), UniPoly({3: h}, "A"),
    ]


def _cp(p, f, g, N, var="A"):
    return CauchyProblem(p, UniPoly(_FG[f], var), UniPoly(_FG[g], var), var, N)


def build_viskov(env, N, seed):
    claims = []
    for p in viskov_ps(env):
        rel = Relation.left(p)
        for f, g in VISKOV_FG:
            cp = _cp(p, f, g, N)
            label = f"p = {p}, f = {f}, g = {g}"
            claims.append(ValueClaim(f"alpha' = p(alpha) f(alpha), {label}", lambda cp=cp: (residual(cp, solve_alpha(cp)), ASeries.zero(cp.order - 1))))
            claims.append(ValueClaim(f"rewriter vs flow, {label}", lambda cp=cp: normal_sides(cp), SERIES))
            phi, gamma = phi_gamma(cp)
            x = NCPoly.from_unipoly(cp.f, LEFT) * B_() + NCPoly.from_unipoly(cp.g, LEFT)
            claims.append(SeriesClaim(f"exp((f(A)B + g(A))t) = e^gamma (e^phi)^B, {label}", rel,
                                      [Factor.exp_t(x)], [exp_of_aseries(gamma), Factor.series(pow_B_coeffs(phi, N))]))
    return claims


def build_viskov_anti(env, N, seed):
    claims = []
    for p in viskov_ps(env):
        pb = p.with_var("B")
        rel = Relation.right(pb)
        for f, g in VISKOV_FG:
            cp = _cp(pb, f, g, N, "B")
            label = f"p = {pb}, f = {f}, g = {g}"
            claims.append(ValueClaim(f"rewriter vs flow, {label}", lambda cp=cp: antinormal_sides(cp)[:2], SERIES))
            claims.append(ValueClaim(f"rewriter vs L image, {label}", lambda cp=cp: antinormal_sides(cp)[::2], SERIES))
            phi, gamma = phi_gamma(cp)
            x = A_() * NCPoly.from_unipoly(cp.f, RIGHT) + NCPoly.from_unipoly(cp.g, RIGHT)
            claims.append(SeriesClaim(f"exp((A f(B) + g(B))t) = (e^A)^phi e^gamma, {label}", rel,
                                      [Factor.exp_t(x)], [Factor.series(pow_A_coeffs(phi, N)), exp_of_aseries(gamma, RIGHT)]))
    return claims


def _flow_integral(p: UniPoly, product: bool, N: int, var: str = "A") -> ASeries:
    """int alpha for alpha' = p(alpha) alpha (product) or alpha' = p(alpha) (sum)."""
    x, one, zero = UniPoly({1: 1}, var), UniPoly({0: 1}, var), UniPoly({}, var)
    if product:
        return phi_gamma(CauchyProblem(p.with_var(var), x, zero, var, N))[0]
    return phi_gamma(CauchyProblem(p.with_var(var), one, x, var, N))[1]


def build_viskov_sum(env, N, seed):
    claims = []
    for p in viskov_ps(env):
        rel = Relation.left(p)
        phi = _flow_integral(p, False, N)
        claims.append(SeriesClaim(f"e^((A+B)t) = exp(int alpha) e^(Bt), alpha' = p(alpha), p = {p}", rel,
                                  [Factor.exp_t(AB)], [exp_of_aseries(phi), Factor.exp_t(B_())]))
    lam, eps = env["lambda"], env["epsilon"]
    claims.append(ValueClaim("p = -lambda x^2 reproduces the Berry EI", lambda: (
        _flow_integral(UniPoly({2: -lam}, "A"), False, N).exp(), ei_berry(env, N).psi)))
    claims.append(ValueClaim("p = eps x reproduces the Sack EI", lambda: (
        _flow_integral(UniPoly({1: eps}, "A"), False, N).exp(), ei_sack(env, N).psi)))
    return claims


def build_viskov_product(env, N, seed):
    claims = []
    for p in viskov_ps(env):
        rel = Relation.left(p)
        phi = _flow_integral(p, True, N)
        claims.append(SeriesClaim(f"e^(ABt) = (exp(int alpha))^B, alpha' = alpha p(alpha), p = {p}", rel,
                                  [Factor.exp_t(A_() * B_())], [Factor.series(pow_B_coeffs(phi, N))]))
    h = env["h"]
    for s in (0, 1, 2, 3, Fraction(1, 2)):
        claims.append(ValueClaim(f"p = h x^{s} reproduces the generalized Stirling exponent", lambda s=s: (
            _flow_integral(UniPoly({s: h}, "A"), True, N), monomial_phi(s, h, N))))
    return claims


def build_viskov_anti_sum(env, N, seed):
    claims = []
    for p in viskov_ps(env):
        pb = p.with_var("B")
        rel = Relation.right(pb)
        beta = _flow_integral(pb, False, N, "B")
        claims.append(SeriesClaim(f"e^((A+B)t) = e^(At) exp(int beta), beta' = p(beta), p = {pb}", rel,
                                  [Factor.exp_t(AB)], [Factor.exp_t(A_()), exp_of_aseries(beta, RIGHT)]))
    return claims


def build_viskov_anti_product(env, N, seed):
    claims = []
    for p in viskov_ps(env):
        pb = p.with_var("B")
        rel = Relation.right(pb)
        beta = _flow_integral(pb, True, N, "B")
        claims.append(SeriesClaim(f"e^(ABt) = (e^A)^(int beta), beta' = beta p(beta), p = {pb}", rel,
                                  [Factor.exp_t(A_() * B_())], [Factor.series(pow_A_coeffs(beta, N))]))
    return claims


# ---------------------------------------------------------------------------
# monomial commutators
# ---------------------------------------------------------------------------

MSS_S = (0, 1, 2, Fraction(1, 2))


def build_mss_product(env, N, seed):
    h = env["h"]
    claims = []
    for s in MSS_S:
        rel = left_mono(h, s)
        for n in range(N + 1):
            claims.append(PolyClaim(f"(AB)^{n} under [B, A] = h A^{s}", rel, (A_() * B_()) ** n, mss_product(n, s, h)))
    lah_rel = left_mono(2 * h, Fraction(1, 2))
    for n in range(N + 1):
        claims.append(PolyClaim(f"(AB)^{n} Lah form under [B, A] = 2h A^(1/2)", lah_rel, (A_() * B_()) ** n, lah_product(n, h)))
    return claims


def build_mss_exp(env, N, seed):
    h = env["h"]
    claims = []
    for s in MSS_S:
        rel = left_mono(h, s)
        phi = monomial_phi(s, h, N)
        claims.append(SeriesClaim(f"e^(ABt) = exp(F_s(h A^s t)/(h A^(s-1)))^B, s = {s}", rel,
                                  [Factor.exp_t(A_() * B_())], [Factor.series(pow_B_coeffs(phi, N))]))
    return claims


def ei_monomial(env, N, s) -> EISpec:
    h = env["h"]
    return EISpec(UniPoly({s + 1: h}, "A"), monomial_phi(s, h, N).exp())


def build_monomial_bt(env, N, seed):
    h = env["h"]
    claims = []
    for s in (-1, 0, 1, 2):
        rel = left_mono(h, s + 1)
        for n in range(N + 1):
            claims.extend(_bt_pair(rel, n, monomial_bt1(n, s, h), monomial_bt2(n, s, h), f"[B, A] = h A^{s + 1}"))
        phi = monomial_phi(s, h, N)
        claims.append(SeriesClaim(f"e^((A+B)t) = exp(F_s(h A^s t)/(h A^(s-1))) e^(Bt), s = {s}", rel,
                                  [Factor.exp_t(AB)], [exp_of_aseries(phi), Factor.exp_t(B_())]))
    return claims


def build_lah(env, N, seed):
    h = env["h"]
    claims = [
        ValueClaim("L(n,k) = 2^(n-k) S_(1/2)(n,k), n <= 12", lambda: (
            [lah(n, k) for n in range(13) for k in range(n + 1)],
            [2 ** (n - k) * gen_stirling(Fraction(1, 2), n, k) for n in range(13) for k in range(n + 1)])),
        ValueClaim("L(n,k) = sum_j c(n,j) S(j,k), n <= 12", lambda: (
            [lah(n, k) for n in range(13) for k in range(n + 1)],
            [sum((stirling1(n, j) * stirling2(j, k) for j in range(n + 1)), Fraction(0)) for n in range(13) for k in range(n + 1)])),
        ValueClaim("L(n,k) recurrence, n <= 12", lambda: (
            [lah(n, k) for n in range(13) for k in range(n + 1)], [lah_recurrence(n, k) for n in range(13) for k in range(n + 1)])),
    ]
    rel = left_mono(2 * h, Fraction(1, 2))
    for n in range(N + 1):
        claims.append(PolyClaim(f"(AB)^{n} = sum L(n,k) h^(n-k) A^((n+k)/2) B^k", rel, (A_() * B_()) ** n, lah_product(n, h)))
    return claims


def build_bessel(env, N, seed):
    h = env["h"]
    rel = left_mono(h, 3)
    claims = _ei_claims("e^((A+B)t) = sum (At)^n/n! y_(n-1)(hA) e^(Bt)", rel, bessel_series(h, N))
    for n in range(N + 1):
        claims.append(PolyClaim(f"Bessel BT, n = {n}", rel, AB**n, bessel_bt(n, h)))
    claims.append(ValueClaim("S_2(n, n-k) = C(n-1+k, 2k)(2k-1)!!, n <= 12", lambda: (
        [gen_stirling(2, n, n - k) for n in range(13) for k in range(n + 1)],
        [binomial(n - 1 + k, 2 * k) * double_factorial(2 * k - 1) for n in range(13) for k in range(n + 1)])))
    claims.append(ValueClaim("Bessel polynomial forms agree, n <= 12", lambda: (
        [bessel_poly(n) for n in range(13)], [bessel_poly_factorial_form(n) for n in range(13)])))
    claims.append(ValueClaim("sum y_(n-1)(x) t^n/n! = exp((1 - sqrt(1 - 2xt))/x)", lambda: _bessel_gf(N)))
    return claims


def _bessel_gf(N):
    root = ASeries([1, UniPoly({1: -2}, "A")], N).pow_rational(Fraction(1, 2))
    inner = ASeries([c.shift(-1) if c else c for c in (ASeries.one(N) - root).coeffs], N)
    lhs = [UniPoly.constant(1, "A")] + [bessel_poly(n - 1, "A") * fact_inv(n) for n in range(1, N + 1)]
    return ASeries(lhs, N), inner.exp()


# ---------------------------------------------------------------------------
# similarity transforms
# ---------------------------------------------------------------------------

SYMMETRY, ANTINORMAL, BCH = "SYMMETRY", "ANTINORMAL", "BCH"


def transform_claims(spec: EISpec, mode: str, N: int, label: str) -> list:
    f, psi = spec.f, spec.psi
    if mode == SYMMETRY:
        rel = Relation.right(f.with_var("B"))
        return [SeriesClaim(f"symmetry of {label}: e^((A+B)t) = e^(At) Psi_B(t)", rel,
                            [Factor.exp_t(AB)], [Factor.exp_t(A_()), ser(psi.with_var("B"), RIGHT)])]
    if mode == ANTINORMAL:
        rel = Relation.left(-f)
        return [
            SeriesClaim(f"antinormal {label}: e^((A+B)t) = e^(Bt) Psi_A(t)", rel,
                        [Factor.exp_t(AB)], [Factor.exp_t(B_()), ser(psi)]),
            ValueClaim(f"antinormal {label} through L", _antinormal_via_l(f, psi, N), SERIES),
        ]
    if mode == BCH:
        if not f.has_integer_exponents() or (f.degree() or 0) > 2:
            raise NotTransformable(f"[B, A] = -f(A+B) needs f of degree <= 2 with natural exponents, got {f}")
        q = NCPoly.zero()
        for e, c in f.terms.items():
            q = q - (AB**e).scale(c)
        rel = Relation.bivariate(q)
        order = min(N, 6)
        psi_ab = []
        for c in psi.coeffs[: order + 1]:
            x = NCPoly.zero()
            for e, v in c.terms.items():
                x = x + (AB**e).scale(v)
            psi_ab.append(x)
        return [SeriesClaim(f"BCH case of {label}: e^(At) e^(Bt) = Psi_(A+B)(t)", rel,
                            [Factor.exp_t(A_()), Factor.exp_t(B_())], [Factor.series(psi_ab)], oracle=False)]
    raise ValueError(f"unknown transform mode {mode!r}")


def _antinormal_via_l(f, psi, N):
    def compute():
        base = algebra_for(Relation.left(f))
        normal_rhs = s_mul(TSeries([NCPoly.from_unipoly(c, LEFT) for c in psi.coeffs], base, N), exp_element(B_(), base, N))
        swap = {LEFT: RIGHT, RIGHT: LEFT}
        image = [l_map(c, base)[0].rename(swap) for c in normal_rhs.coeffs]
        anti = algebra_for(Relation.left(-f), "antinormal")
        return TSeries(image, anti, N), exp_element(AB, anti, N)
    return compute


SIMILAR_BASES = ("cor-sack", "cor-berry", "cor-glauber", "cor-ore", "cor-alpha0")


def _similar_builder(mode):
    def build(env, N, seed):
        claims = []
        for name in SIMILAR_BASES:
            spec = CATALOG[name]
            sub = {k: env[k] for k in spec.params[0]}
            if mode == BCH and name == "cor-alpha0":
                sub["epsilon"] = -sub["epsilon"]
            claims.extend(transform_claims(spec.ei(sub, N), mode, N, f"{name} at {_env_str(sub)}"))
        return claims
    return build


def _env_str(env) -> str:
    return ", ".join(f"{k}={v}" for k, v in env.items())


# ---------------------------------------------------------------------------
# the table
# ---------------------------------------------------------------------------

def _f(*values):
    return tuple(Fraction(v) for v in values)


def _envs(names, *rows, symbolic=True):
    out = [dict(zip(names, _f(*row))) for row in rows]
    if symbolic:
        out.append({n: SYM for n in names})
    return tuple(out)


Q = Fraction

_SPECS = [
    CheckSpec("prop-expo-laws", build_expo_laws, (("alpha", "lambda", "mu"),),
              _envs(("alpha", "lambda", "mu"), (1, 2, 3), (-2, Q(1, 2), -3), (3, -1, Q(2, 3))),
              "[B, A] = alpha", channels=frozenset({SERIES, ORACLE})),
    CheckSpec("prop-eAB", build_eab, (("alpha", "epsilon", "lambda"),),
              _envs(("alpha", "epsilon", "lambda"), (1, 1, 2), (-3, 2, -1), (Q(1, 2), -1, 3)),
              "several", univariate=False),
    CheckSpec("lemma-chain", build_chain, (("alpha", "epsilon", "lambda", "h"),),
              _envs(("alpha", "epsilon", "lambda", "h"), (1, 2, 3, 1), (-2, Q(1, 2), -1, 3), (3, -3, Q(1, 2), Q(-1, 2))),
              "[B, A] = p(A)"),
    CheckSpec("lemma-leibniz", build_leibniz, (("alpha", "epsilon", "lambda", "h"),),
              _envs(("alpha", "epsilon", "lambda", "h"), (1, 2, 3, 1), (-2, Q(1, 2), -1, 3), (3, -3, Q(1, 2), Q(-1, 2))),
              "[B, A] = p(A) or p(B)"),
    CheckSpec("thm-L", build_thm_l, (("epsilon", "lambda", "h"),),
              _envs(("epsilon", "lambda", "h"), (1, 2, 1), (-2, Q(1, 2), 3), (Q(3, 2), -1, -2)),
              "[B, A] = p(A)"),
    CheckSpec("umbral-example", build_umbral, ((),), ({},), "[B, A] = 1"),
    CheckSpec("bchd-vs-log", build_bch, ((),), ({},), "free", max_order=6, default_order=6, univariate=False),
    CheckSpec("lemma-exist", build_exist, (("alpha", "epsilon", "lambda", "h"),),
              _envs(("alpha", "epsilon", "lambda", "h"), (1, 1, 2, 1), (-2, 3, -1, 2), (Q(1, 2), -1, 3, Q(-1, 3))),
              "several", univariate=False),
    CheckSpec("prop-similar-symmetry", _similar_builder(SYMMETRY), (("alpha", "epsilon", "lambda"),),
              _envs(("alpha", "epsilon", "lambda"), (1, 1, 2), (-2, 3, -1), (Q(1, 2), -1, 3)), "[B, A] = f(B)"),
    CheckSpec("prop-similar-antinormal", _similar_builder(ANTINORMAL), (("alpha", "epsilon", "lambda"),),
              _envs(("alpha", "epsilon", "lambda"), (1, 1, 2), (-2, 3, -1), (Q(1, 2), -1, 3)), "[B, A] = -f(A)"),
    CheckSpec("prop-similar-bch", _similar_builder(BCH), (("alpha", "epsilon", "lambda"),),
              _envs(("alpha", "epsilon", "lambda"), (1, 1, 2), (-2, 3, -1), (Q(1, 2), -1, 3), symbolic=False),
              "[B, A] = -f(A+B)", max_order=6, default_order=6, univariate=False),
    CheckSpec("prop-psi-lambda", build_psi_lambda, (("alpha", "epsilon", "lambda", "mu", "h"),),
              _envs(("alpha", "epsilon", "lambda", "mu", "h"), (1, 1, 2, 3, 1), (-2, Q(1, 2), -1, Q(-1, 2), 2), (3, -2, Q(1, 2), Q(2, 3), -1)),
              "[B, A] = f(A)"),
    CheckSpec("thm-quadratic-mono", build_quad_mono, (("alpha", "epsilon"), ("r", "rho")),
              _envs(("alpha", "epsilon"), (-2, 3), (-1, 2), (6, 1), (0, 3), (Q(-3, 4), -2), symbolic=False)
              + ({"r": SYM, "rho": SYM},),
              "[B, A] = alpha + epsilon A - A^2", ei=lambda env, N: EISpec(
                  UniPoly({0: _quad_scalars(env)[0], 1: _quad_scalars(env)[1], 2: -1}, "A"), phi_series(*_quad_scalars(env)[2:], N))),
    CheckSpec("thm-quadratic-general", build_quad_general, (("lambda", "alpha", "epsilon"), ("lambda", "r", "rho")),
              _envs(("lambda", "alpha", "epsilon"), (2, 1, 1), (-1, 2, -3), (3, 0, 3), (Q(1, 2), -1, Q(3, 2)), (1, -1, 2), symbolic=False)
              + ({"lambda": SYM, "r": SYM, "rho": SYM},),
              "[B, A] = alpha + epsilon A - lambda A^2", ei=ei_quad_general),
    CheckSpec("cor-eps0", build_eps0, (("lambda", "alpha"),),
              _envs(("lambda", "alpha"), (1, 4), (2, 8), (-1, -9), (Q(1, 2), 2), symbolic=False),
              "[B, A] = alpha - lambda A^2", ei=ei_eps0),
    CheckSpec("cor-alpha0", build_alpha0, (("epsilon", "lambda"),),
              _envs(("epsilon", "lambda"), (1, 1), (2, 3), (-1, 2), (Q(1, 2), Q(-1, 3))),
              "[B, A] = epsilon A - lambda A^2", ei=ei_alpha0),
    CheckSpec("cor-ore", build_ore, (("alpha", "epsilon"),),
              _envs(("alpha", "epsilon"), (1, 1), (2, -1), (Q(-1, 2), 3), (-3, 2)),
              "[B, A] = alpha + epsilon A", ei=ei_ore),
    CheckSpec("example-zass", build_zass, (("alpha", "epsilon"),),
              _envs(("alpha", "epsilon"), (1, 1), (2, -1), (Q(-1, 2), 3), (-3, 2)),
              "[B, A] = alpha + epsilon A"),
    CheckSpec("cor-berry", build_berry, (("lambda",),),
              _envs(("lambda",), (1,), (2,), (-1,), (Q(1, 2),)), "[B, A] = -lambda A^2", ei=ei_berry),
    CheckSpec("cor-sack", build_sack, (("epsilon",),),
              _envs(("epsilon",), (1,), (2,), (-3,), (Q(1, 2),)), "[B, A] = epsilon A", ei=ei_sack),
    CheckSpec("cor-glauber", build_glauber, (("alpha",),),
              _envs(("alpha",), (3,), (1,), (-2,), (Q(1, 3),)), "[B, A] = alpha", ei=ei_glauber),
    CheckSpec("thm-bivariate", build_bivariate, (("epsilon", "lambda"),),
              _envs(("epsilon", "lambda"), (1, 2), (-1, 3), (2, -1), (Q(1, 2), -2), symbolic=False),
              "[B, A] = epsilon (A+B) + lambda (A+B)^2", max_order=6, default_order=6, univariate=False),
    CheckSpec("rosengren", build_rosengren, (("lambda", "mu"),),
              _envs(("lambda", "mu"), (1, 2), (-1, 3), (Q(1, 2), 4), (1, 1)),
              "[B, A] = lambda A^2 + mu B^2", max_order=6, default_order=6, univariate=False),
    CheckSpec("cor-excedance", build_excedance, (("epsilon",),),
              _envs(("epsilon",), (1,), (2,), (-1,), (Q(1, 2),)),
              "[B, A] = epsilon (A+B)", max_order=6, default_order=6, univariate=False),
    CheckSpec("viskov-normal", build_viskov, (("epsilon", "lambda", "h"),),
              _envs(("epsilon", "lambda", "h"), (1, 1, 1), (2, -1, 3), (Q(-1, 2), 3, Q(1, 2)), symbolic=False),
              "[B, A] = p(A)", max_order=6, default_order=6),
    CheckSpec("viskov-antinormal", build_viskov_anti, (("epsilon", "lambda", "h"),),
              _envs(("epsilon", "lambda", "h"), (1, 1, 1), (2, -1, 3), (Q(-1, 2), 3, Q(1, 2)), symbolic=False),
              "[B, A] = p(B)", max_order=6, default_order=6),
    CheckSpec("viskov-cor-sum", build_viskov_sum, (("epsilon", "lambda", "h"),),
              _envs(("epsilon", "lambda", "h"), (1, 1, 1), (2, -1, 3), (Q(-1, 2), 3, Q(1, 2))),
              "[B, A] = p(A)", max_order=6, default_order=6),
    CheckSpec("viskov-cor-product", build_viskov_product, (("epsilon", "lambda", "h"),),
              _envs(("epsilon", "lambda", "h"), (1, 1, 1), (2, -1, 3), (Q(-1, 2), 3, Q(1, 2))),
              "[B, A] = p(A)", max_order=6, default_order=6),
    CheckSpec("viskov-anti-cor-sum", build_viskov_anti_sum, (("epsilon", "lambda", "h"),),
              _envs(("epsilon", "lambda", "h"), (1, 1, 1), (2, -1, 3), (Q(-1, 2), 3, Q(1, 2))),
              "[B, A] = p(B)", max_order=6, default_order=6),
    CheckSpec("viskov-anti-cor-product", build_viskov_anti_product, (("epsilon", "lambda", "h"),),
              _envs(("epsilon", "lambda", "h"), (1, 1, 1), (2, -1, 3), (Q(-1, 2), 3, Q(1, 2))),
              "[B, A] = p(B)", max_order=6, default_order=6),
    CheckSpec("mss-product", build_mss_product, (("h",),),
              _envs(("h",), (1,), (2,), (Q(-1, 3),)), "[B, A] = h A^s"),
    CheckSpec("mss-exp", build_mss_exp, (("h",),),
              _envs(("h",), (1,), (2,), (Q(-1, 3),)), "[B, A] = h A^s"),
    CheckSpec("thm-monomial-bt", build_monomial_bt, (("h",),),
              _envs(("h",), (1,), (2,), (Q(-1, 2),)), "[B, A] = h A^(s+1)",
              ei=lambda env, N: ei_monomial(env, N, 1)),
    CheckSpec("example-lah", build_lah, (("h",),),
              _envs(("h",), (1,), (-2,), (Q(1, 3),)), "[B, A] = 2h A^(1/2)"),
    CheckSpec("example-bessel", build_bessel, (("h",),),
              _envs(("h",), (1,), (2,), (Q(-1, 2),)), "[B, A] = h A^3",
              ei=lambda env, N: EISpec(UniPoly({3: env["h"]}, "A"), bessel_series(env["h"], N))),
]

CATALOG: dict[str, CheckSpec] = {s.name: s for s in _SPECS}
