"""Acceptance criteria 1-9, one test each.

Every test records a single ``CRITERION n: PASS|FAIL`` line; the lines are
printed at the end of the pytest session (see conftest.py) and also when the
file is run directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import functools
import random
import sys
import time
from fractions import Fraction
from math import comb, factorial

import pytest

from ncorder import combinat as C
from ncorder.bch import X, Y, bch_log, bracket, dynkin_series
from ncorder.combinat import UniPoly
from ncorder.errors import NoNormalForm
from ncorder.ncalg import LEFT, RIGHT, Algebra, NCPoly, Relation, l_map, make_word
from ncorder.oracle import Representation
from ncorder.scalars import default_space
from ncorder.series import TSeries, first_difference, s_exp, s_log, s_pow_scalar
from ncorder.verify import CATALOG, ORACLE, REWRITER, SERIES, run_identity
from ncorder.verify.catalog import SYM
from ncorder.verify.engine import ORACLE_MAX_POWER
from ncorder.verify.runner import make_check
from ncorder.viskov import CauchyProblem, viskov_antinormal_check, viskov_check

SEED = 20261016
RESULTS: dict[int, str] = {}


def criterion(number: int, title: str, limit_s: float):
    def wrap(body):
        @functools.wraps(body)
        def run():
            start = time.perf_counter()
            try:
                detail = body()
            except BaseException as exc:
                elapsed = time.perf_counter() - start
                RESULTS[number] = f"CRITERION {number}: FAIL {title} ({elapsed:.1f} s): {type(exc).__name__}: {exc}"
                print(RESULTS[number])
                raise
            elapsed = time.perf_counter() - start
            ok = elapsed < limit_s
            status = "PASS" if ok else "FAIL"
            RESULTS[number] = f"CRITERION {number}: {status} {title} ({elapsed:.1f} s, limit {limit_s:.0f} s){': ' + detail if detail else ''}"
            print(RESULTS[number])
            assert ok, f"runtime {elapsed:.1f} s exceeds {limit_s} s"
        return run
    return wrap


def rational_envs(name: str) -> list[dict]:
    return [e for e in CATALOG[name].envs if SYM not in e.values()]


def run_envs(name: str, N: int, envs=None, channels=None) -> list:
    envs = CATALOG[name].envs if envs is None else envs
    reports = [run_identity(make_check(name, e, N, channels)) for e in envs]
    for r in reports:
        assert r.passed, r.summary()
    return reports


def claim_labels(name: str, env: dict, N: int) -> list[str]:
    check = make_check(name, env, N)
    return [c.label for c in check.build(check.env, N, 0)]


def oracle_count(report) -> int:
    note = next(n for n in report.notes if n.startswith("claims run"))
    for part in note.split(":", 1)[1].split(","):
        key, _, value = part.strip().partition(" ")
        if key == ORACLE:
            return int(value)
    return 0


# ---------------------------------------------------------------------------

@criterion(1, "BCH coefficients", 30)
def test_criterion_1_bch():
    log, dynkin = bch_log(5), dynkin_series(5)
    assert first_difference(log, dynkin) is None

    def br(*names):
        gens = {"X": X, "Y": Y}
        out = gens[names[-1]]
        for n in reversed(names[:-1]):
            out = bracket(gens[n], out)
        return out

    q = Fraction
    displayed = {
        2: br("X", "Y").scale(q(1, 2)),
        3: br("X", "X", "Y").scale(q(1, 12)) + br("Y", "Y", "X").scale(q(1, 12)),
        4: br("Y", "X", "X", "Y").scale(q(-1, 24)),
        5: (br("Y", "Y", "Y", "Y", "X") + br("X", "X", "X", "X", "Y")).scale(q(-1, 720))
        + (br("X", "Y", "Y", "Y", "X") + br("Y", "X", "X", "X", "Y")).scale(q(1, 360))
        + (br("Y", "X", "Y", "X", "Y") + br("X", "Y", "X", "Y", "X")).scale(q(1, 120)),
    }
    assert log.coeffs[1] == X + Y
    for n, expect in displayed.items():
        assert log.coeffs[n] == expect, n
    run_envs("bchd-vs-log", 5)
    return "log = Dynkin through t^5; displayed terms for degrees 2-5 match"


@criterion(2, "Rosengren reproduction", 5)
def test_criterion_2_rosengren():
    lam, mu = default_space().symbols("lambda", "mu")
    A2 = NCPoly.monomial(make_word([(LEFT, 2)]))
    B2 = NCPoly.monomial(make_word([(RIGHT, 2)]))
    ctx = Algebra(Relation.bivariate(A2.scale(lam) + B2.scale(mu)))
    b2a = NCPoly.monomial(make_word([(RIGHT, 2), (LEFT, 1)]))
    got = ctx.normal_order(b2a)
    d = 1 - lam * mu
    words = {(3, 0): 2 * lam**2 / d, (2, 1): 2 * lam / d, (1, 2): (1 + lam * mu) / d, (0, 3): 2 * mu / d}
    expect = NCPoly({make_word([(LEFT, i), (RIGHT, j)]): c for (i, j), c in words.items()})
    assert got == expect and len(got.terms) == 4
    singular = Algebra(Relation.bivariate(A2 + B2))
    with pytest.raises(NoNormalForm) as info:
        singular.normal_order(b2a)
    assert info.value.grade == 3 and info.value.witness
    return f"four coefficients over 1 - lambda*mu; lambda=mu=1 gives {info.value}"


QUADRATIC = ["thm-quadratic-mono", "thm-quadratic-general", "cor-eps0", "cor-alpha0", "cor-ore",
             "example-zass", "cor-berry", "cor-sack", "cor-glauber"]


@criterion(3, "quadratic-commutator suite at t-order 8", 300)
def test_criterion_3_quadratic():
    counts = []
    for name in QUADRATIC:
        envs = rational_envs(name)
        assert len(envs) >= 3, name
        run_envs(name, 8, envs)
        counts.append(len(envs))
    labels = claim_labels("thm-quadratic-general", rational_envs("thm-quadratic-general")[0], 8)
    assert any(lab.startswith("Remark") for lab in labels)
    labels = claim_labels("cor-alpha0", rational_envs("cor-alpha0")[0], 8)
    assert any("first BT form" in lab for lab in labels) and any("second BT form" in lab for lab in labels)
    labels = claim_labels("thm-quadratic-mono", rational_envs("thm-quadratic-mono")[0], 8)
    assert len(labels) >= 3
    return f"{len(QUADRATIC)} checks, {sum(counts)} rational envs"


@criterion(4, "bivariate suite at t-order 6", 120)
def test_criterion_4_bivariate():
    run_envs("thm-bivariate", 6)
    run_envs("cor-excedance", 6)
    labels = claim_labels("thm-bivariate", CATALOG["thm-bivariate"].envs[0], 6)
    assert any(lab.startswith("i from n = 2") for lab in labels)
    assert any(lab.startswith("ii: [lambda]_6") for lab in labels)
    assert any(lab.startswith("iii") for lab in labels)
    return "thm-bivariate (i, ii, iii) and cor-excedance, binomial degree 6"


@criterion(5, "Viskov suite at order 6", 300)
def test_criterion_5_viskov():
    eps, lam, h = default_space().symbols("epsilon", "lambda", "h")
    ps = [UniPoly({0: 1}, "A"), UniPoly({0: 1, 2: 1}, "A"), UniPoly({1: eps}, "A"),
          UniPoly({2: -lam}, "A"), UniPoly({3: h}, "A")]
    x = UniPoly({1: 1}, "A")
    fgs = [(UniPoly({0: 1}, "A"), UniPoly({}, "A")), (x, UniPoly({}, "A")),
           (UniPoly({0: 1}, "A"), x), (x, UniPoly({2: 1}, "A"))]
    n = 0
    for p in ps:
        for f, g in fgs:
            cp = CauchyProblem(p, f, g, "A", 6)
            for report in (viskov_check(cp), viskov_antinormal_check(cp)):
                assert report.passed, report.summary()
                n += 1
    for name in ("viskov-normal", "viskov-antinormal", "viskov-cor-sum", "viskov-cor-product",
                 "viskov-anti-cor-sum", "viskov-anti-cor-product", "mss-exp"):
        run_envs(name, 6)
    labels = claim_labels("viskov-cor-sum", CATALOG["viskov-cor-sum"].envs[0], 6)
    assert any("Berry" in lab for lab in labels) and any("Sack" in lab for lab in labels)
    return f"{n} symbolic checks; catalog Viskov entries incl. Berry, Sack and mss-exp specializations"


@criterion(6, "monomial-commutator suite", 180)
def test_criterion_6_monomial():
    run_envs("mss-product", 6)
    run_envs("example-lah", 6)
    run_envs("thm-monomial-bt", 6)
    run_envs("example-bessel", 6)
    for n in range(13):
        for k in range(n):
            assert C.gen_stirling(2, n, n - k) == comb(n - 1 + k, 2 * k) * C.double_factorial(2 * k - 1)
    return "mss-product s in {0,1,2,1/2}, Lah form, monomial BT s+1 in {0..3}, closed form n <= 12, Bessel EI"


def _stirling1_closed(n: int, k: int) -> int:
    """Signed s(n,k) from second-kind numbers (Schlaefli's formula)."""
    if n == k:
        return 1
    total = 0
    for j in range(n - k + 1):
        total += (-1) ** j * comb(n - 1 + j, n - k + j) * comb(2 * n - k, n - k - j) * int(C.stirling2(n - k + j, j))
    return total


@criterion(7, "combinatorics cross-checks", 30)
def test_criterion_7_combinatorics():
    for n in range(21):
        poly = C.falling_factorial_poly(n)
        for k in range(n + 1):
            s2 = C.stirling2(n, k)
            assert s2 == C.stirling2_closed(n, k) == C.gen_stirling_gf(0, n, k)
            c1 = C.stirling1(n, k)
            assert C.stirling1(n, k, signed=True) == _stirling1_closed(n, k) == poly.coeff(k)
            assert c1 == C.gen_stirling_gf(1, n, k)
    svals = (Fraction(2), Fraction(1, 2), Fraction(-1), Fraction(3), Fraction(2, 3))
    for s in svals:
        for n in range(11):
            for k in range(min(n, 5) + 1):
                assert C.gen_stirling(s, n, k) == C.gen_stirling_gf(s, n, k)
    for n in range(13):
        for k in range(n + 1):
            assert sum(C.stirling1(n, j) * C.stirling2(j, k) for j in range(n + 1)) == C.lah(n, k)
    return "both Stirling kinds n <= 20, five s values, Lah convolution n <= 12"


@criterion(8, "oracle concordance", 120)
def test_criterion_8_oracle():
    assert ORACLE_MAX_POWER == 6
    univariate = [name for name, spec in CATALOG.items() if spec.univariate]
    covered, skipped = 0, []
    for name in univariate:
        N = min(6, CATALOG[name].max_order)
        for env in CATALOG[name].envs:
            symbolic = run_identity(make_check(name, env, N, channels=[REWRITER, SERIES]))
            if not symbolic.passed:
                continue
            report = run_identity(make_check(name, env, N, channels=[ORACLE]))
            assert report.passed, report.summary()
            if oracle_count(report):
                covered += 1
            else:
                skipped.append(name)
    # only entries whose every relation has a non-natural exponent may skip the oracle
    for name in set(skipped):
        rel = CATALOG[name].relation
        assert "^(" in rel or "A^s" in rel, name
    return f"{covered} (check, env) pairs through the operator representation on x^0..x^6; no operator image: {sorted(set(skipped))}"


def _rand_elem(rng: random.Random, terms: int = 3, length: int = 3, exp: int = 2) -> NCPoly:
    out = {}
    for _ in range(rng.randint(1, terms)):
        w = make_word([(rng.choice((LEFT, RIGHT)), rng.randint(1, exp)) for _ in range(rng.randint(0, length))])
        out[w] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return NCPoly(out)


@criterion(9, "property suites", 300)
def test_criterion_9_properties():
    rng = random.Random(SEED)
    A2 = NCPoly.monomial(make_word([(LEFT, 2)]))
    B2 = NCPoly.monomial(make_word([(RIGHT, 2)]))
    univariate = [
        Algebra(Relation.left(UniPoly({0: Fraction(3)}, "A"))),
        Algebra(Relation.left(UniPoly({1: Fraction(-2)}, "A"))),
        Algebra(Relation.left(UniPoly({0: Fraction(1), 1: Fraction(1, 2), 2: Fraction(-1)}, "A"))),
        Algebra(Relation.right(UniPoly({0: Fraction(2), 2: Fraction(1)}, "B"))),
    ]
    bivariate = [
        Algebra(Relation.bivariate(NCPoly.gen(LEFT) + NCPoly.gen(RIGHT))),
        Algebra(Relation.bivariate(A2.scale(Fraction(2)) + B2.scale(Fraction(-1, 3)))),
    ]
    samples = 0
    for ctx in univariate + bivariate:
        small = ctx.relation.kind == "bivariate"
        for _ in range(500):
            x = _rand_elem(rng, length=2 if small else 3)
            y = _rand_elem(rng, length=2 if small else 3, exp=1 if small else 2)
            nx, ny = ctx.normal_order(x), ctx.normal_order(y)
            assert ctx.normal_order(nx) == nx
            assert ctx.normal_order(x * y) == ctx.nmul(nx, ny)
            samples += 1
    pairs = 0
    for i in range(200):
        ctx = univariate[i % len(univariate)]
        x, y = ctx.normal_order(_rand_elem(rng)), ctx.normal_order(_rand_elem(rng))
        lxy, image = l_map(ctx.nmul(x, y), ctx)
        assert lxy == image.nmul(l_map(y, ctx)[0], l_map(x, ctx)[0])
        pairs += 1
    roundtrips = 0
    for ctx in univariate:
        for _ in range(3):
            y = TSeries([NCPoly.zero()] + [_rand_elem(rng, terms=2, length=1, exp=1) for _ in range(2)], ctx, 10)
            assert s_log(s_exp(y)) == y
            x = s_exp(y)
            assert s_exp(s_log(x)) == x
            roundtrips += 1
    powers = 0
    for i in range(100):
        ctx = univariate[i % len(univariate)]
        x = TSeries([NCPoly.one(), _rand_elem(rng, terms=2, length=1, exp=1)], ctx, 5)
        c = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        assert s_pow_scalar(x, c, route="binomial") == s_pow_scalar(x, c, route="explog")
        powers += 1
    return (f"seed {SEED}: {samples} normal-order samples (500 per relation, 6 relations), {pairs} L pairs, "
            f"{roundtrips} exp/log roundtrips at order 10, {powers} dual-route powers")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_")):
        try:
            fn()
        except BaseException:  # noqa: BLE001 - the line is already recorded
            failed += 1
    sys.exit(1 if failed else 0)
