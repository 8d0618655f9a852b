import json
from fractions import Fraction

import pytest

from ncorder import errors
from ncorder.ncalg import LEFT, NCPoly
from ncorder.report import Failure, Report
from ncorder.verify import (
    ANTINORMAL,
    BCH,
    CATALOG,
    ORACLE,
    REWRITER,
    SERIES,
    SYMMETRY,
    make_check,
    run_check,
    run_identity,
    run_suite,
    transform_check,
)
from ncorder.verify import catalog


def test_catalog_shape():
    assert len(CATALOG) == 35
    for name, spec in CATALOG.items():
        assert spec.name == name
        assert spec.envs and 1 <= spec.default_order <= spec.max_order <= 8
    assert CATALOG["thm-bivariate"].max_order == 6
    assert CATALOG["bchd-vs-log"].max_order == 6


def test_run_check_single_env():
    r = run_check("cor-glauber", {"alpha": 3}, 6)
    assert r.passed and r.order == 6 and r.params == {"alpha": Fraction(3)}
    assert any(n.startswith("claims run") and "oracle" in n for n in r.notes)


def test_run_check_all_envs_is_merged():
    r = run_check("cor-sack", N=4)
    assert r.passed
    assert len([n for n in r.notes if n.startswith("env ")]) == len(CATALOG["cor-sack"].envs)


def test_string_env_values_and_symbolic():
    assert run_check("cor-ore", {"alpha": "1/2", "epsilon": "-2"}, 4).passed
    assert run_check("cor-ore", {"alpha": "sym", "epsilon": "sym"}, 3).passed


def test_errors():
    with pytest.raises(errors.UnknownCheck):
        run_check("nope")
    with pytest.raises(errors.PoleAtEnv):
        run_check("cor-berry", {"lambda": 0}, 3)
    with pytest.raises(ValueError):
        run_check("thm-bivariate", {"epsilon": 1, "lambda": 2}, 7)
    with pytest.raises(errors.UnknownParameter):
        run_check("cor-glauber", {"alpha": 1, "zeta": 2}, 3)
    with pytest.raises(errors.MissingBinding):
        run_check("cor-ore", {"alpha": 1}, 3)


def test_rosengren_expected_failure():
    r = run_check("rosengren", {"lambda": 1, "mu": 1}, 3)
    assert r.passed and r.expected_failure
    assert any("no normal form at grade 3" in n for n in r.notes)


def test_report_json_schema():
    r = run_check("thm-bivariate", {"epsilon": 1, "lambda": 2}, 2)
    d = json.loads(r.to_json())
    assert d["pass"] is True and d["first_failure"] is None and d["params"] == {"epsilon": "1", "lambda": "2"}
    f = Failure(3, "A*B", Fraction(1, 2), 0)
    bad = Report("x")
    bad.fail(f)
    assert bad.to_dict()["first_failure"] == {"t_order": 3, "word": "A*B", "lhs": "1/2", "rhs": "0"}


def test_channels_can_be_restricted():
    check = make_check("cor-berry", {"lambda": 2}, 4, channels=[REWRITER])
    r = run_identity(check)
    assert r.passed
    counts = next(n for n in r.notes if n.startswith("claims run"))
    assert "oracle" not in counts and "rewriter" in counts


def test_mutation_is_caught(monkeypatch):
    # a wrong binomial theorem must make the check fail with a located difference
    real = catalog.berry_bt

    def mutated(n, lam):
        x = real(n, lam)
        return x + NCPoly.gen(LEFT, n) if n == 3 else x

    monkeypatch.setattr(catalog, "berry_bt", mutated)
    r = run_check("cor-berry", {"lambda": 2}, 4)
    assert not r.passed
    assert r.first_failure.word == "A^3" and r.first_failure.channel == REWRITER


def test_oracle_alone_catches_mutation(monkeypatch):
    real = catalog.glauber_bt
    monkeypatch.setattr(catalog, "glauber_bt", lambda n, a: real(n, a) + (NCPoly.scalar(1) if n == 2 else 0))
    r = run_identity(make_check("cor-glauber", {"alpha": 3}, 4, channels=[ORACLE]))
    assert not r.passed and r.first_failure.channel == ORACLE


@pytest.mark.parametrize("base,env,mode", [
    ("cor-berry", {"lambda": 2}, ANTINORMAL),
    ("cor-sack", {"epsilon": Fraction(1, 2)}, SYMMETRY),
    ("cor-alpha0", {"epsilon": -1, "lambda": 2}, BCH),
    ("cor-glauber", {"alpha": 3}, SYMMETRY),
])
def test_transforms(base, env, mode):
    check = transform_check(make_check(base, env, 4), mode)
    assert check.name == f"{mode.lower()}({base})"
    r = run_identity(check)
    assert r.passed, r.summary()


def test_not_transformable():
    with pytest.raises(errors.NotTransformable):
        transform_check("cor-excedance", SYMMETRY)
    with pytest.raises(errors.NotTransformable):
        transform_check(transform_check("cor-sack", SYMMETRY), ANTINORMAL)
    with pytest.raises(ValueError):
        transform_check("cor-sack", "sideways")


def test_suite_shapes():
    assert run_suite(None) == ([], 0)
    assert run_suite({}) == ([], 0)
    reports, status = run_suite(["cor-sack", {"check": "cor-glauber", "env": {"alpha": 2}, "order": 3}])
    assert status == 0 and [r.name for r in reports] == ["cor-glauber", "cor-sack"]
    reports, status = run_suite({"checks": ["cor-glauber", "nope"], "order": 3})
    assert status == 1
    bad = next(r for r in reports if r.name == "nope")
    assert not bad.passed and bad.first_failure.channel == "error"


def test_suite_clamps_order_and_binds_params():
    reports, status = run_suite({"checks": ["thm-bivariate"], "order": 8, "params": {"epsilon": 2, "lambda": 3}})
    assert status == 0 and reports[0].order == 6 and reports[0].params == {"epsilon": 2, "lambda": 3}


def test_bivariate_degenerate_lambda_is_a_pole():
    # lambda = 1 kills BA in the relation; lambda = 1/2 makes [lambda]_3 vanish
    with pytest.raises(errors.PoleAtEnv):
        run_check("thm-bivariate", {"epsilon": 1, "lambda": 1}, 2)
    with pytest.raises(errors.PoleAtEnv):
        run_check("thm-bivariate", {"epsilon": 1, "lambda": Fraction(1, 2)}, 3)
    assert run_check("thm-bivariate", {"epsilon": 1, "lambda": Fraction(1, 2)}, 2).passed


def test_suite_parallel_matches_sequential():
    config = {"checks": ["cor-sack", "cor-glauber", "umbral-example"], "order": 3}
    seq, s1 = run_suite(config)
    par, s2 = run_suite({**config, "jobs": 2})
    assert s1 == s2 == 0
    assert [r.to_dict() | {"elapsed_ms": 0} for r in seq] == [r.to_dict() | {"elapsed_ms": 0} for r in par]


def test_suite_collects_pole_errors():
    reports, status = run_suite({"checks": ["cor-berry"], "params": {"lambda": 0}, "order": 3})
    assert status == 1 and reports[0].first_failure.rhs == "PoleAtEnv"


def test_series_channel_names():
    assert {REWRITER, SERIES, ORACLE} == {"rewriter", "series", "oracle"}
