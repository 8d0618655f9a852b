"""Running catalog entries: single checks, transforms and whole suites."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping

from ..errors import MissingBinding, NCOrderError, NotTransformable, PoleAtEnv, UnknownCheck, UnknownParameter
from ..report import Failure, Report, timed
from ..scalars import ParamRat, default_space
from .catalog import ANTINORMAL, BCH, CATALOG, SYM, SYMMETRY, CheckSpec, transform_claims
from .engine import ALL_CHANNELS, ORACLE, Evaluator

TRANSFORM_MODES = (SYMMETRY, ANTINORMAL, BCH)


@dataclass
class IdentityCheck:
    """One catalog identity bound to a single env, order and channel set."""

    name: str
    relation: str
    order: int
    env: dict
    channels: frozenset = ALL_CHANNELS
    seed: int = 0
    build: Callable | None = field(default=None, repr=False)
    base: str = ""


def lookup(name: str) -> CheckSpec:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownCheck(f"unknown check {name!r}; known: {', '.join(sorted(CATALOG))}") from None


def _scalar(name: str, value) -> Any:
    if value == SYM:
        return default_space().symbol(name)
    if isinstance(value, (Fraction, ParamRat)):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def bind_env(spec: CheckSpec, env: Mapping) -> dict:
    """Match env against one of the spec's parameter sets and convert values."""
    env = dict(env)
    if not spec.params or spec.params == ((),):
        if env:
            raise UnknownParameter(f"{spec.name} takes no parameters, got {', '.join(env)}")
        return {}
    for names in spec.params:
        if set(env) == set(names):
            return {n: _scalar(n, env[n]) for n in names}
    known = {n for names in spec.params for n in names}
    extra = sorted(set(env) - known)
    if extra:
        raise UnknownParameter(f"{spec.name} has no parameter {extra[0]!r}")
    best = max(spec.params, key=lambda names: len(set(names) & set(env)))
    missing = [n for n in best if n not in env]
    raise MissingBinding(missing[0])


def _check_order(spec: CheckSpec, N: int | None) -> int:
    N = spec.default_order if N is None else N
    if not (isinstance(N, int) and 1 <= N <= spec.max_order):
        raise ValueError(f"order {N} outside 1..{spec.max_order} for {spec.name}")
    return N


def make_check(name: str, env: Mapping | None = None, N: int | None = None,
               channels: Iterable[str] | None = None, seed: int = 0) -> IdentityCheck:
    spec = lookup(name)
    bound = bind_env(spec, spec.envs[0] if env is None else env)
    chans = spec.channels if channels is None else frozenset(channels) & spec.channels
    return IdentityCheck(spec.name, spec.relation, _check_order(spec, N), bound, chans, seed, spec.build)


def run_identity(check: IdentityCheck) -> Report:
    report = Report(check.name, order=check.order, relation=check.relation, params=dict(check.env), seed=check.seed)
    with timed(report):
        try:
            claims = check.build(check.env, check.order, check.seed)
            evaluator = Evaluator(check.order, check.channels)
            evaluator.run(claims, report)
        except ZeroDivisionError as exc:
            if isinstance(exc, PoleAtEnv):
                raise
            raise PoleAtEnv(f"{check.name} has a pole at {_env_str(check.env)}: {exc}") from exc
        if evaluator.observed:
            report.expected_failure = True
            report.notes.extend(f"expected failure observed: {label}: {exc}" for label, exc in evaluator.observed)
        report.notes.append("claims run: " + (", ".join(f"{k} {v}" for k, v in sorted(evaluator.counts.items())) or "none"))
    return report


def run_check(name: str, env: Mapping | None = None, N: int | None = None,
              channels: Iterable[str] | None = None, seed: int = 0) -> Report:
    """Run one catalog entry.

    With ``env=None`` every declared env of the entry is run and the
    reports are merged; the first failing env supplies ``first_failure``.
    """
    if env is not None:
        return run_identity(make_check(name, env, N, channels, seed))
    spec = lookup(name)
    merged = Report(spec.name, order=_check_order(spec, N), relation=spec.relation, seed=seed)
    with timed(merged):
        for e in spec.envs:
            rep = run_identity(make_check(name, e, N, channels, seed))
            counts = next((n for n in rep.notes if n.startswith("claims run")), "")
            merged.notes.append(f"env {_env_str(rep.params) or '(none)'}: {'pass' if rep.passed else 'FAIL'}; {counts}")
            merged.expected_failure |= rep.expected_failure
            if not rep.passed:
                merged.fail(rep.first_failure)
                merged.params = rep.params
    return merged


def _env_str(env: Mapping) -> str:
    return ", ".join(f"{k}={v}" for k, v in env.items())


def transform_check(base: IdentityCheck | str, mode: str) -> IdentityCheck:
    """SYMMETRY, ANTINORMAL or BCH image of an EI-shaped identity."""
    if isinstance(base, str):
        base = make_check(base)
    if mode not in TRANSFORM_MODES:
        raise ValueError(f"mode must be one of {', '.join(TRANSFORM_MODES)}")
    spec = lookup(base.base or base.name)
    if spec.ei is None or base.base:
        raise NotTransformable(f"{base.name} is not of the form e^((A+B)t) = Psi_A(t) e^(Bt)")
    order = min(base.order, 6) if mode == BCH else base.order
    ei = spec.ei

    def build(env, N, seed):
        return transform_claims(ei(env, N), mode, N, base.name)

    relation = {SYMMETRY: "[B, A] = f(B)", ANTINORMAL: "[B, A] = -f(A)", BCH: "[B, A] = -f(A+B)"}[mode]
    chans = base.channels - {ORACLE} if mode == BCH else base.channels
    return IdentityCheck(f"{mode.lower()}({base.name})", relation, order, dict(base.env), chans, base.seed, build, base.name)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteItem:
    name: str
    env: tuple | None = None
    order: int | None = None


def _items(config) -> tuple[list[SuiteItem], dict]:
    """Normalise the accepted config shapes into suite items and options.

    Accepted: None or empty (nothing to run), ``"all"``, a list of names or
    ``{"check": name, "env": {...}, "order": N}`` dicts, or a dict with keys
    ``checks`` (list or ``"all"``), ``order``, ``params``, ``seed``,
    ``channels`` and ``jobs``.
    """
    opts: dict = {}
    if not config:
        return [], opts
    if isinstance(config, Mapping):
        opts = {k: v for k, v in config.items() if k != "checks"}
        config = config.get("checks", [])
    if config == "all":
        config = sorted(CATALOG)
    items = []
    for entry in config or []:
        if isinstance(entry, str):
            items.append(SuiteItem(entry))
        elif isinstance(entry, Mapping):
            env = entry.get("env")
            items.append(SuiteItem(entry["check"], None if env is None else tuple(sorted(env.items())), entry.get("order")))
        else:
            raise TypeError(f"cannot read suite entry {entry!r}")
    return items, opts


def _suite_env(spec: CheckSpec, params: Mapping):
    """A single env when ``params`` touch this check, else None (all envs)."""
    if not params:
        return None
    for names in spec.params:
        if set(params) & set(names):
            base = next((e for e in spec.envs if set(e) == set(names) and SYM not in e.values()), {})
            return {**base, **{k: v for k, v in params.items() if k in names}}
    return None


def _run_item(item: SuiteItem, opts: dict) -> Report:
    try:
        spec = lookup(item.name)
        N = item.order if item.order is not None else opts.get("order")
        if N is not None:
            N = min(int(N), spec.max_order)
        env = dict(item.env) if item.env is not None else _suite_env(spec, opts.get("params") or {})
        return run_check(item.name, env, N, opts.get("channels"), int(opts.get("seed", 0)))
    except (NCOrderError, ValueError, TypeError) as exc:
        report = Report(item.name, order=item.order or 0, seed=int(opts.get("seed", 0)))
        report.fail(Failure(0, "", "error", type(exc).__name__, channel="error", detail=str(exc)))
        return report


def run_suite(config=None) -> tuple[list[Report], int]:
    """Run a suite; returns the reports in name order and 0 (all pass) or 1.

    Per-check errors become failing reports.  ``jobs > 1`` spreads checks
    over processes; the result does not depend on it.
    """
    items, opts = _items(config)
    jobs = int(opts.get("jobs", 1))
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_item, items, [opts] * len(items)))
    else:
        reports = [_run_item(item, opts) for item in items]
    order = sorted(range(len(items)), key=lambda i: (items[i].name, str(items[i].env)))
    reports = [reports[i] for i in order]
    return reports, 0 if all(r.passed for r in reports) else 1
