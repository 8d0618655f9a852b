"""Closed forms used on the right-hand sides of catalog identities.

Everything here is computed from the stated formulas with commutative
arithmetic only; the rewriter is never consulted.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from ..combinat import (
    UniPoly,
    binomial,
    bracket_eval,
    double_factorial,
    frakF_coeffs,
    gen_stirling,
    lah,
    ps_inverse,
    stirling1,
    stirling2,
)
from ..errors import ConstantTermError
from ..ncalg import LEFT, RIGHT, Algebra, NCPoly, Relation
from ..series import ASeries, TSeries, exp_element, s_mul


def fact_inv(n: int) -> Fraction:
    return Fraction(1, math.factorial(n))


def A_(e=1, c=1) -> NCPoly:
    return NCPoly.gen(LEFT, e, c)


def B_(e=1, c=1) -> NCPoly:
    return NCPoly.gen(RIGHT, e, c)


def upoly(terms: dict, var: str = "A") -> UniPoly:
    return UniPoly(terms, var)


@lru_cache(maxsize=128)
def algebra_for(relation: Relation, basis: str = "normal") -> Algebra:
    """Shared reduction context, so rewrite caches survive across claims."""
    return Algebra(relation, basis=basis)


# ---------------------------------------------------------------------------
# commutative series helpers
# ---------------------------------------------------------------------------

def exp_scalar(c, order: int, var: str = "A") -> ASeries:
    """e^{ct}."""
    values, ck = [], Fraction(1)
    for n in range(order + 1):
        values.append(ck * fact_inv(n))
        ck = ck * c
    return ASeries.from_scalars(values, order, var)


def expm1_over(c, order: int, var: str = "A") -> ASeries:
    """(e^{ct} - 1)/c written without division: sum_{n>=1} c^(n-1) t^n/n!."""
    values, ck = [Fraction(0)], Fraction(1)
    for n in range(1, order + 1):
        values.append(ck * fact_inv(n))
        ck = ck * c
    return ASeries.from_scalars(values, order, var)


def a_pow(x: ASeries, c) -> ASeries:
    """x^c = sum_n C(c, n) (x - 1)^n for x with constant term 1 and any scalar c."""
    one = ASeries.one(x.order, x.var)
    if x.coeffs[0] != one.coeffs[0]:
        raise ConstantTermError(f"constant term must be 1, got {x.coeffs[0]}")
    y = x - one
    out, power = one, one
    for n in range(1, x.order + 1):
        power = power * y
        out = out + power.scale(binomial(c, n))
    return out


def bernoulli(n_max: int) -> list[Fraction]:
    """B_0..B_{n_max} with B_1 = -1/2, from x/(e^x - 1)."""
    inv = ps_inverse([fact_inv(n + 1) for n in range(n_max + 1)], n_max)
    return [c * math.factorial(n) for n, c in enumerate(inv)]


def to_aseries(s: TSeries, gen: int = LEFT) -> ASeries:
    """A one-generator TSeries read back as an ASeries."""
    var = "A" if gen == LEFT else "B"
    return ASeries([c.to_unipoly(gen, var) for c in s.coeffs], s.order, var)


def pow_B_coeffs(phi: ASeries, order: int) -> list[NCPoly]:
    """Coefficients of (e^phi)^B = sum_n phi^n B^n/n! with phi in A; already normal."""
    return _pow_other(phi, order, RIGHT, phi_left=True)


def pow_A_coeffs(phi: ASeries, order: int) -> list[NCPoly]:
    """Coefficients of (e^A)^phi = sum_n A^n phi^n/n! with phi in B."""
    return _pow_other(phi, order, LEFT, phi_left=False)


def _pow_other(phi: ASeries, order: int, other: int, phi_left: bool) -> list[NCPoly]:
    gen = LEFT if phi.var == "A" else RIGHT
    out = [NCPoly.zero() for _ in range(order + 1)]
    power = ASeries.one(order, phi.var)
    for n in range(order + 1):
        if n:
            power = power * phi
        g = NCPoly.gen(other, n) if n else NCPoly.one()
        for k in range(order + 1):
            c = power.coeffs[k]
            if c:
                x = NCPoly.from_unipoly(c, gen).scale(fact_inv(n))
                out[k] = out[k] + (x * g if phi_left else g * x)
    return out


# ---------------------------------------------------------------------------
# quadratic commutators
# ---------------------------------------------------------------------------

def uv_sequences(alpha, epsilon, n: int) -> tuple[list, list]:
    """u, v with u0=0, u1=1, v0=1, v1=0 and x_{k+2} = eps x_{k+1} + alpha x_k."""
    u = [Fraction(0), Fraction(1)]
    v = [Fraction(1), Fraction(0)]
    for k in range(2, n + 1):
        u.append(epsilon * u[k - 1] + alpha * u[k - 2])
        v.append(epsilon * v[k - 1] + alpha * v[k - 2])
    return u[: n + 1], v[: n + 1]


def phi_series(r, rho, order: int, var: str = "A") -> ASeries:
    """Phi_A(t, r, rho) from its two-branch definition."""
    coeffs = []
    for n in range(order + 1):
        w = fact_inv(n)
        if r != rho:
            d = rho - r
            const = (rho * r**n - r * rho**n) / d
            lin = (rho**n - r**n) / d
        else:
            const = (1 - n) * r**n
            lin = n * r ** (n - 1) if n else 0
        coeffs.append(UniPoly({0: const * w, 1: lin * w}, var))
    return ASeries(coeffs, order, var)


def quadratic_bt(n: int, u: list, v: list) -> NCPoly:
    """sum_k C(n,k) (v_k + u_k A) B^(n-k)."""
    out = NCPoly.zero()
    for k in range(n + 1):
        c = math.comb(n, k)
        out = out + (NCPoly.scalar(v[k] * c) + A_(1, u[k] * c)) * (B_(n - k) if n - k else NCPoly.one())
    return out


def alpha0_bt1(n: int, eps, lam) -> NCPoly:
    """sum_k C(n,k) (sum_j S(k,j) eps^(k-j) [lam]_j A^j) B^(n-k)."""
    out = NCPoly.zero()
    for k in range(n + 1):
        inner = NCPoly.zero()
        for j in range(k + 1):
            c = stirling2(k, j) * eps ** (k - j) * bracket_eval(lam, j)
            if c:
                inner = inner + _apow(j, c)
        out = out + inner.scale(math.comb(n, k)) * _bpow(n - k)
    return out


def alpha0_bt2(n: int, eps, lam) -> NCPoly:
    """sum_k eps^(n-k) sum_j C(n,j) S(n-j,k-j) [lam]_(k-j) A^(k-j) B^j."""
    out = NCPoly.zero()
    for k in range(n + 1):
        for j in range(k + 1):
            c = eps ** (n - k) * math.comb(n, j) * stirling2(n - j, k - j) * bracket_eval(lam, k - j)
            if c:
                out = out + _apow(k - j, c) * _bpow(j)
    return out


def _bpow(j: int) -> NCPoly:
    return B_(j) if j else NCPoly.one()


def _apow(j, c=1) -> NCPoly:
    return A_(j, c) if j else NCPoly.scalar(c)


def commutative_binomial(k: int) -> NCPoly:
    """sum_j C(k,j) A^j B^(k-j)."""
    out = NCPoly.zero()
    for j in range(k + 1):
        out = out + _apow(j, math.comb(k, j)) * _bpow(k - j)
    return out


def berry_bt(n: int, lam) -> NCPoly:
    out = NCPoly.zero()
    for k in range(n + 1):
        c = math.comb(n, k) * bracket_eval(lam, k)
        if c:
            out = out + _apow(k, c) * _bpow(n - k)
    return out


def glauber_bt(n: int, alpha) -> NCPoly:
    out = NCPoly.zero()
    for i in range(n // 2 + 1):
        c = Fraction(math.factorial(n), math.factorial(i) * math.factorial(n - 2 * i)) * (alpha / 2) ** i
        out = out + commutative_binomial(n - 2 * i).scale(c)
    return out


def glauber_iverson(n: int, alpha) -> NCPoly:
    """n! [t^n] e^{alpha t^2/2} e^{At} e^{Bt}, summed with the even-index bracket."""
    out = NCPoly.zero()
    for j in range(n + 1):
        if j % 2:
            continue
        c = (alpha / 2) ** (j // 2) * Fraction(1, math.factorial(j // 2) * math.factorial(n - j))
        out = out + commutative_binomial(n - j).scale(c)
    return out.scale(math.factorial(n))


def bivariate_bt(n: int, eps) -> NCPoly:
    """sum_k c(n,k) eps^(n-k) sum_j C(k,j) A^j B^(k-j)."""
    out = NCPoly.zero()
    for k in range(n + 1):
        c = stirling1(n, k) * eps ** (n - k)
        if c:
            out = out + commutative_binomial(k).scale(c)
    return out


# ---------------------------------------------------------------------------
# monomial commutators [B, A] = h A^(s+1)
# ---------------------------------------------------------------------------

def mss_product(n: int, s, h) -> NCPoly:
    """sum_k S_s(n,k) h^(n-k) A^(s(n-k)+k) B^k."""
    out = NCPoly.zero()
    for k in range(n + 1):
        c = gen_stirling(s, n, k)
        if c:
            out = out + _apow(_exp(s * (n - k) + k), c * h ** (n - k)) * _bpow(k)
    return out


def lah_product(n: int, h) -> NCPoly:
    """sum_k L(n,k) h^(n-k) A^((n+k)/2) B^k."""
    out = NCPoly.zero()
    for k in range(n + 1):
        c = lah(n, k)
        if c:
            out = out + _apow(_exp(Fraction(n + k, 2)), c * h ** (n - k)) * _bpow(k)
    return out


def monomial_phi(s, h, order: int, var: str = "A") -> ASeries:
    """frakF_s(h A^s t)/(h A^(s-1)) = sum_n f_n h^(n-1) A^(sn-s+1) t^n."""
    f = frakF_coeffs(s, order)
    coeffs = [UniPoly({}, var)]
    for n in range(1, order + 1):
        coeffs.append(UniPoly({_exp(s * n - s + 1): f[n] * h ** (n - 1)}, var))
    return ASeries(coeffs, order, var)


def _exp(e):
    e = Fraction(e)
    return e.numerator if e.denominator == 1 else e


def monomial_bt1(n: int, s, h) -> NCPoly:
    out = NCPoly.zero()
    for k in range(n + 1):
        inner = NCPoly.zero()
        for j in range(k + 1):
            c = gen_stirling(s, k, j)
            if c:
                inner = inner + _apow(_exp(s * (k - j) + j), c * h ** (k - j))
        out = out + inner.scale(math.comb(n, k)) * _bpow(n - k)
    return out


def monomial_bt2(n: int, s, h) -> NCPoly:
    out = NCPoly.zero()
    for k in range(n + 1):
        for j in range(k + 1):
            c = math.comb(n, j) * gen_stirling(s, n - j, k - j)
            if c:
                out = out + _apow(_exp(s * (n - k) + k - j), c * h ** (n - k)) * _bpow(j)
    return out


def bessel_series(h, order: int) -> ASeries:
    """sum_n (At)^n/n! y_{n-1}(hA), y_{-1} = 1."""
    from ..combinat import bessel_poly

    coeffs = [UniPoly.constant(1, "A")]
    for n in range(1, order + 1):
        y = bessel_poly(n - 1, "A")
        scaled = UniPoly({e + n: c * h**e * fact_inv(n) for e, c in y.terms.items()}, "A")
        coeffs.append(scaled)
    return ASeries(coeffs, order, "A")


def bessel_bt(n: int, h) -> NCPoly:
    """sum_k C(n,k) (sum_j C(k-1+j, 2j) (2j-1)!! h^j A^(k+j)) B^(n-k)."""
    out = NCPoly.zero()
    for k in range(n + 1):
        inner = NCPoly.zero()
        for j in range(k + 1):
            c = binomial(k - 1 + j, 2 * j) * double_factorial(2 * j - 1)
            if c:
                inner = inner + _apow(k + j, c * h**j)
        out = out + inner.scale(math.comb(n, k)) * _bpow(n - k)
    return out


# ---------------------------------------------------------------------------
# existence lemma
# ---------------------------------------------------------------------------

def psi_series(relation: Relation, order: int) -> TSeries:
    """Psi(t) = e^{(A+B)t} e^{-Bt}."""
    ctx = algebra_for(relation)
    return s_mul(exp_element(A_() + B_(), ctx, order), exp_element(-B_(), ctx, order))


def psi_witness(psi: TSeries):
    """First (t_order, coefficient) that contains B, or None."""
    for k, c in enumerate(psi.coeffs):
        if RIGHT in c.generators():
            return k, c
    return None
