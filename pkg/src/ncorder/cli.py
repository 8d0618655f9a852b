"""Command line entry point: ``ncorder <subcommand> ...``.

Exit status is 0 when everything asked for holds, 1 when a check fails
(or a normal form does not exist), and 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import combinat
from .bch import BCH_MAX_ORDER, BCH_NAMES, bch_log, dynkin_series
from .combinat import UniPoly
from .errors import NCOrderError, NoNormalForm
from .ncalg import DEFAULT_NAMES, LEFT, Algebra, NCPoly, Relation, binomial_power, product_power
from .parser import parse_expr, parse_nc
from .report import Report
from .scalars import demote, scalar_latex, scalar_str, substitute
from .series import first_difference
from .viskov import CauchyProblem, phi_gamma, solve_alpha, viskov_antinormal_check, viskov_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def parse_params(items) -> dict:
    env = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"--param expects k=v, got {item!r}")
        try:
            env[key.strip()] = Fraction(value.strip())
        except ValueError:
            raise UsageError(f"--param {key}: {value!r} is not a rational number") from None
    return env


def _bind(x, env):
    if not env:
        return x
    f = lambda c: demote(substitute(c, env))
    return x.map_coeffs(f)


def relation_of(src: str, env: dict) -> Relation:
    text = src.strip()
    if text.lower() == "free":
        return Relation.free()
    value = _bind(parse_expr(text), env)
    if isinstance(value, UniPoly):
        return Relation.left(value) if value.var == "A" else Relation.right(value)
    return Relation.bivariate(value)


def render(x, fmt: str) -> str:
    if fmt == "latex":
        if isinstance(x, (NCPoly, UniPoly)):
            return x.latex()
        return scalar_latex(x)
    if isinstance(x, (NCPoly, UniPoly)):
        return str(x)
    return scalar_str(x)


def emit(payload: dict, lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _series_rows(s, fmt: str, names=DEFAULT_NAMES) -> list[tuple[int, str]]:
    rows = []
    for k, c in enumerate(s.coeffs):
        if isinstance(c, NCPoly):
            text = c.latex(names) if fmt == "latex" else c.to_str(names)
        else:
            text = render(c, fmt)
        rows.append((k, text))
    return rows


def _series_lines(rows, fmt: str) -> list[str]:
    if fmt == "latex":
        return [f"[t^{{{k}}}]\\; {text}" for k, text in rows]
    return [f"t^{k}: {text}" for k, text in rows]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

STIRLING = {
    "s1": lambda n, k, s: combinat.stirling1(n, k, signed=True),
    "s1u": lambda n, k, s: combinat.stirling1(n, k),
    "s2": lambda n, k, s: combinat.stirling2(n, k),
    "lah": lambda n, k, s: combinat.lah(n, k),
    "gen": lambda n, k, s: combinat.gen_stirling(s, n, k),
}


def cmd_stirling(args) -> int:
    if args.n < 0 or args.k < 0:
        raise UsageError("n and k must be natural numbers")
    if args.kind == "gen" and args.s is None:
        raise UsageError("--kind gen needs --s")
    s = Fraction(args.s) if args.s is not None else None
    value = STIRLING[args.kind](args.n, args.k, s)
    emit({"kind": args.kind, "n": args.n, "k": args.k, "s": None if s is None else str(s), "value": scalar_str(value)},
         [render(value, args.format)], args.format)
    return EXIT_OK


def _algebra(args, env, basis="normal") -> Algebra:
    return Algebra(relation_of(args.relation, env), degree_cap=getattr(args, "max_degree", None), basis=basis)


def cmd_normal_order(args) -> int:
    env = parse_params(args.param)
    ctx = _algebra(args, env, args.basis)
    x = _bind(parse_nc(args.expr), env)
    result = ctx.normal_order(x)
    emit({"input": str(x), "relation": ctx.relation.describe(), "basis": args.basis, "result": str(result),
          "truncated": result.truncated}, [render(result, args.format)], args.format)
    return EXIT_OK


def _power_cmd(args, fn, label) -> int:
    if args.n < 0:
        raise UsageError("n must be a natural number")
    env = parse_params(args.param)
    ctx = _algebra(args, env)
    result = fn(args.n, ctx)
    emit({"expression": f"{label}^{args.n}", "relation": ctx.relation.describe(), "result": str(result)},
         [render(result, args.format)], args.format)
    return EXIT_OK


def cmd_binomial(args) -> int:
    return _power_cmd(args, binomial_power, "(A+B)")


def cmd_product_power(args) -> int:
    return _power_cmd(args, product_power, "(A*B)")


def cmd_exp_identity(args) -> int:
    from .verify.forms import psi_series, psi_witness

    if args.order < 1:
        raise UsageError("order must be at least 1")
    env = parse_params(args.param)
    rel = relation_of(args.relation, env)
    if rel.kind == "free":
        raise UsageError("the free algebra has no exponential identity to report")
    psi = psi_series(rel, args.order)
    witness = psi_witness(psi)
    rows = _series_rows(psi, args.format)
    lines = [f"Psi(t) = e^((A+B)t) e^(-Bt) under {rel.describe()}"] + _series_lines(rows, args.format)
    if witness is None:
        lines.append("Psi is free of B, so e^((A+B)t) = Psi_A(t) e^(Bt)")
    else:
        lines.append(f"Psi contains B from t^{witness[0]} on: {witness[1]}")
    emit({"relation": rel.describe(), "order": args.order, "coefficients": [t for _, t in rows],
          "b_free": witness is None, "witness_order": None if witness is None else witness[0]}, lines, args.format)
    return EXIT_OK


def cmd_bch(args) -> int:
    if not 1 <= args.order <= BCH_MAX_ORDER:
        raise UsageError(f"--order must lie in 1..{BCH_MAX_ORDER}")
    log = bch_log(args.order)
    dynkin = dynkin_series(args.order)
    diff = first_difference(log, dynkin)
    rows = _series_rows(log, args.format, BCH_NAMES)
    lines = ["log(e^(Xt) e^(Yt)):"] + _series_lines(rows, args.format)
    lines.append("Dynkin sum agrees" if diff is None else f"Dynkin sum differs at t^{diff[0]}, word {diff[1]}")
    emit({"order": args.order, "coefficients": [t for _, t in rows], "dynkin_agrees": diff is None}, lines, args.format)
    return EXIT_OK if diff is None else EXIT_FAIL


VISKOV_VARS = {"x": LEFT, "A": LEFT}


def _viskov_poly(src: str, env: dict) -> UniPoly:
    x = _bind(parse_nc(src, VISKOV_VARS), env)
    if not x.generators() <= {LEFT}:
        raise UsageError(f"{src!r} must be a polynomial in x")
    return x.to_unipoly(LEFT, "A")


def cmd_viskov(args) -> int:
    if args.order < 1:
        raise UsageError("order must be at least 1")
    env = parse_params(args.param)
    var = "B" if args.antinormal else "A"
    p, f, g = (_viskov_poly(s, env).with_var(var) for s in (args.p, args.f, args.g))
    cp = CauchyProblem(p, f, g, var, args.order)
    alpha = solve_alpha(cp)
    phi, gamma = phi_gamma(cp, alpha)
    report = viskov_antinormal_check(cp) if args.antinormal else viskov_check(cp)
    lines = [
        f"alpha(t) = {alpha}",
        f"phi(t) = {phi}",
        f"gamma(t) = {gamma}",
        report.summary(),
    ]
    payload = {"alpha": str(alpha), "phi": str(phi), "gamma": str(gamma), "report": report.to_dict()}
    emit(payload, lines, args.format)
    return EXIT_OK if report.passed else EXIT_FAIL


def _latex_reports(reports: list[Report]) -> str:
    rows = ["\\begin{tabular}{llrl}", "check & params & order & result \\\\ \\hline"]
    for r in reports:
        params = ", ".join(f"{k}={scalar_str(v)}" for k, v in r.params.items())
        status = "pass" if r.passed else "fail"
        if r.expected_failure:
            status += " (expected failure)"
        rows.append(f"\\texttt{{{r.name}}} & {params} & {r.order} & {status} \\\\")
    rows.append("\\end{tabular}")
    return "\n".join(rows)


def cmd_verify(args) -> int:
    from .verify import CATALOG, run_suite

    if args.list:
        for name in sorted(CATALOG):
            print(f"{name}: {CATALOG[name].relation}")
        return EXIT_OK
    if args.suite == "all":
        checks = "all"
    elif args.check:
        checks = list(dict.fromkeys(args.check))
        unknown = [c for c in checks if c not in CATALOG]
        if unknown:
            raise UsageError(f"unknown check {unknown[0]!r} (see verify --list)")
    else:
        raise UsageError("give --check NAME or --suite all")
    config = {"checks": checks, "seed": args.seed, "params": parse_params(args.param), "jobs": args.jobs}
    if args.order is not None:
        config["order"] = args.order
    reports, status = run_suite(config)
    if args.format == "json":
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    elif args.format == "latex":
        print(_latex_reports(reports))
    else:
        for r in reports:
            print(r.summary())
        passed = sum(r.passed for r in reports)
        print(f"{passed}/{len(reports)} checks passed")
    return status


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "latex"), default=argparse.SUPPRESS,
                        help="output format (default text)")
    parser = argparse.ArgumentParser(prog="ncorder", description="Normal ordering under [B, A] = f(A, B).",
                                     parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(func=fn)
        return p

    def params(p):
        p.add_argument("--param", action="append", metavar="k=v", help="bind a parameter (repeatable)")

    p = add("stirling", cmd_stirling, "Stirling, Lah and generalized Stirling numbers")
    p.add_argument("--kind", choices=sorted(STIRLING), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", help="rational s for --kind gen")

    p = add("normal-order", cmd_normal_order, "normal-order an expression")
    p.add_argument("expr")
    p.add_argument("--relation", required=True, help="right-hand side of [B, A] = ...")
    p.add_argument("--basis", choices=("normal", "antinormal"), default="normal")
    p.add_argument("--max-degree", type=int, dest="max_degree")
    params(p)

    for name, fn, text in (("binomial", cmd_binomial, "normal-ordered (A+B)^n"),
                           ("product-power", cmd_product_power, "normal-ordered (AB)^n")):
        p = add(name, fn, text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--relation", required=True)
        params(p)

    p = add("exp-identity", cmd_exp_identity, "coefficients of e^((A+B)t) e^(-Bt)")
    p.add_argument("--relation", required=True)
    p.add_argument("--order", type=int, required=True)
    params(p)

    p = add("bch", cmd_bch, "log(e^(Xt) e^(Yt)) in the free algebra")
    p.add_argument("--order", type=int, required=True)

    p = add("viskov", cmd_viskov, "exp((f(A)B + g(A))t) through its Cauchy problem")
    p.add_argument("--p", required=True, help="polynomial in x")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--antinormal", action="store_true", help="use [B, A] = p(B) and the antinormal order")
    params(p)

    p = add("verify", cmd_verify, "run catalog checks")
    p.add_argument("--check", action="append", metavar="NAME")
    p.add_argument("--suite", choices=("all",))
    p.add_argument("--order", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--list", action="store_true", help="list catalog names")
    params(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "format"):
        args.format = "text"
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ncorder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoNormalForm as exc:
        print(f"ncorder: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (NCOrderError, ValueError) as exc:
        print(f"ncorder: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
