"""Hypothesis-driven properties of the rewriter, the L map and series powers."""

from fractions import Fraction

from hypothesis import given, seed, settings
from hypothesis import strategies as st

from bruteforce import rewrite_normal
from ncorder.combinat import UniPoly
from ncorder.ncalg import LEFT, RIGHT, Algebra, NCPoly, Relation, l_map, make_word
from ncorder.series import TSeries, s_exp, s_log, s_mul, s_pow_scalar

SEED = 20261016
COEFFS = st.fractions(min_value=-5, max_value=5, max_denominator=4)
WORDS = st.lists(st.tuples(st.sampled_from([LEFT, RIGHT]), st.integers(1, 2)), max_size=4).map(make_word)
ELEMENTS = st.dictionaries(WORDS, COEFFS, max_size=3).map(NCPoly)
# the grade solver stops at grade 12, and series coefficients grow fast
SHORT = st.lists(st.tuples(st.sampled_from([LEFT, RIGHT]), st.just(1)), max_size=2).map(make_word)
SMALL = st.dictionaries(SHORT, COEFFS, max_size=2).map(NCPoly)

A, B = NCPoly.gen(LEFT), NCPoly.gen(RIGHT)
UNIVARIATE = [
    ("left", {0: Fraction(2)}),
    ("left", {1: Fraction(-1, 2)}),
    ("left", {0: Fraction(1), 2: Fraction(3)}),
    ("right", {0: Fraction(-1), 1: Fraction(2)}),
]
ALGEBRAS = [Algebra(Relation.left(UniPoly(p, "A")) if k == "left" else Relation.right(UniPoly(p, "B")))
            for k, p in UNIVARIATE]
BIVARIATE = Algebra(Relation.bivariate(A.scale(Fraction(2)) + NCPoly.monomial(make_word([(RIGHT, 2)]), Fraction(1, 3))))

settings.register_profile("props", max_examples=150, deadline=None, database=None)
settings.load_profile("props")


@seed(SEED)
@given(st.sampled_from(range(len(UNIVARIATE))), ELEMENTS)
def test_rewriter_matches_bruteforce(i, x):
    kind, p = UNIVARIATE[i]
    assert ALGEBRAS[i].normal_order(x) == rewrite_normal(x, p, kind)


def _idempotent_and_multiplicative(ctx, x, y):
    nx, ny = ctx.normal_order(x), ctx.normal_order(y)
    assert ctx.normal_order(nx) == nx
    assert ctx.normal_order(x * y) == ctx.nmul(nx, ny)


@seed(SEED)
@given(st.sampled_from(ALGEBRAS), ELEMENTS, ELEMENTS)
def test_idempotent_and_multiplicative(ctx, x, y):
    _idempotent_and_multiplicative(ctx, x, y)


@seed(SEED)
@given(st.dictionaries(WORDS, COEFFS, max_size=2).map(NCPoly), SMALL)
def test_bivariate_idempotent_and_multiplicative(x, y):
    _idempotent_and_multiplicative(BIVARIATE, x, y)


@seed(SEED)
@given(st.sampled_from(ALGEBRAS), ELEMENTS, ELEMENTS)
def test_l_is_an_anti_homomorphism(ctx, x, y):
    lxy, image = l_map(ctx.nmul(ctx.normal_order(x), ctx.normal_order(y)), ctx)
    assert lxy == image.nmul(l_map(y, ctx)[0], l_map(x, ctx)[0])


@seed(SEED)
@settings(max_examples=40)
@given(st.sampled_from(ALGEBRAS), st.lists(SMALL, min_size=1, max_size=3))
def test_exp_log_roundtrip(ctx, coeffs):
    y = TSeries([NCPoly.zero()] + coeffs, ctx, 6)
    assert s_log(s_exp(y)) == y


@seed(SEED)
@settings(max_examples=40)
@given(st.sampled_from(ALGEBRAS), st.lists(SMALL, min_size=1, max_size=2), COEFFS)
def test_power_routes_agree(ctx, coeffs, c):
    x = TSeries([NCPoly.one()] + coeffs, ctx, 4)
    assert s_pow_scalar(x, c, route="binomial") == s_pow_scalar(x, c, route="explog")
    if c.denominator == 1 and c >= 0:
        expect = TSeries.one(ctx, 4)
        for _ in range(int(c)):
            expect = s_mul(expect, x)
        assert s_pow_scalar(x, c) == expect
