"""Command-line front end.

Examples::

    trfseries --command expand --equation fibonacci --n-max 11
    trfseries --command census --arity 3 --n-max 4 --terms
    trfseries --command compare --equation lame --param a=2 --param b=1 \\
        --param c=0 --param alpha=1/2 --param beta=1/3 --lambda 0 --k-max 10
    trfseries --command eval --equation identity --x 0.5 --k-max 60

Rationals are printed as ``p/q`` strings; floats are left to ``json``/``csv``,
which both write the shortest round-trip decimal.  CSV column orders are
listed in ``CSV_COLUMNS``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import catalog as cat
from .census import count_terms, enumerate_terms, evaluate_terms
from .closed_form import (TerminationProfile, subseries_infinite, subseries_limit_form,
                          subseries_polynomial, subseries_tables, assemble_coefficients,
                          verify_termination)
from .errors import ConfigError, TrfError
from .evaluate import EvalRequest, convergence_report, eval_subseries_split, partial_sums
from .expr import looks_inline, parse_inline_equation, parse_rational
from .recurrence import APPROX, EXACT, RecurrenceSpec, SeedRule, direct_expand, make_spec

COMMANDS = ("expand", "census", "trf", "compare", "terminate", "eval", "catalog")
FORMATS = ("json", "csv", "text")

CSV_COLUMNS = {
    "expand": ["n", "value"],
    "census": ["n", "count", "value", "terms"],
    "trf": ["N", "power", "value"],
    "compare": None,  # k, then one column per method, then delta_<method>
    "terminate": ["i", "beta", "index", "value", "zero"],
    "eval": ["k", "partial_sum"],
    "catalog": ["name", "arity", "seed", "parameters", "reference_values", "description"],
}


@dataclass
class RunConfig:
    command: str
    equation: str | None = None
    params: dict = field(default_factory=dict)
    lam: Fraction | None = None
    n_max: int | None = None
    k_max: int | None = None
    N_max: int | None = None
    betas: list | None = None
    x: float | None = None
    format: str = "json"
    seed: object = None  # None, "canonical" or tuple of Fractions c0..c_{m-2}
    mode: str = EXACT
    arity: int | None = None
    terms: bool = False


def fmt(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return value


def _parse_seed(text: str):
    text = text.strip()
    if text == "canonical":
        return "canonical"
    if text.startswith("explicit:"):
        return tuple(parse_rational(v) for v in text[len("explicit:"):].split(",") if v.strip())
    raise ConfigError(f"--seed must be 'canonical' or 'explicit:c0,c1,...', got {text!r}")


def _parse_param(text: str):
    if "=" not in text:
        raise ConfigError(f"--param must look like name=p/q, got {text!r}")
    name, value = text.split("=", 1)
    try:
        return name.strip(), parse_rational(value)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trfseries",
                                description="Series coefficients of m-term recurrences.")
    p.add_argument("--command", required=True, choices=COMMANDS)
    p.add_argument("--equation", help="catalog name or inline rules 'A=expr;B=expr'")
    p.add_argument("--param", action="append", default=[], metavar="NAME=P/Q")
    p.add_argument("--lambda", dest="lam", metavar="P/Q", help="indicial root")
    p.add_argument("--n-max", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--N-max", dest="N_max", type=int)
    p.add_argument("--beta", action="append", type=int, metavar="INT",
                   help="termination index beta_i (repeat in order i = 0, 1, ...)")
    p.add_argument("--x", type=float)
    p.add_argument("--seed", help="'canonical' or 'explicit:c0,c1,...'")
    p.add_argument("--mode", choices=(EXACT, APPROX), default=EXACT)
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--arity", type=int, help="census arity when no equation is given")
    p.add_argument("--terms", action="store_true", help="census: list canonical term strings")
    p.add_argument("--out", metavar="FILE")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    params = dict(_parse_param(t) for t in args.param)
    try:
        lam = parse_rational(args.lam) if args.lam is not None else None
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    seed = _parse_seed(args.seed) if args.seed else None
    return RunConfig(args.command, args.equation, params, lam, args.n_max, args.k_max,
                     args.N_max, args.beta, args.x, args.format, seed, args.mode,
                     args.arity, args.terms)


def build_spec(config: RunConfig) -> RecurrenceSpec:
    if not config.equation:
        raise ConfigError(f"--equation is required for {config.command}")
    try:
        if looks_inline(config.equation):
            rules = parse_inline_equation(config.equation, config.params)
            spec = make_spec(rules, c0=config.params.get("c0", 1),
                             lam=config.lam or 0, name="inline")
        else:
            entry = cat.get_entry(config.equation)
            spec = entry.build(config.params, config.lam)
        if config.seed is not None:
            if config.seed == "canonical":
                seed, c0 = SeedRule.canonical(), spec.c0
            else:
                c0, seed = config.seed[0], SeedRule(tuple(config.seed[1:]))
            spec = RecurrenceSpec(spec.rules, c0, seed, spec.lam, spec.mode, spec.name)
        if config.mode != spec.mode:
            spec = spec.with_mode(config.mode)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    return spec


def describe_spec(spec: RecurrenceSpec | None, config: RunConfig) -> dict:
    if spec is None:
        return {"equation": config.equation}
    return {
        "equation": config.equation,
        "name": spec.name,
        "arity": spec.arity,
        "mode": spec.mode,
        "c0": fmt(spec.c0),
        "lambda": fmt(spec.lam),
        "seed": spec.seed.describe() if spec.seed.is_canonical else
        "explicit:" + ",".join(fmt(v) for v in (spec.c0, *spec.seed.values)),
        "params": {k: fmt(v) for k, v in sorted(config.params.items())},
    }


def _need(value, flag: str, default=None):
    if value is None:
        if default is None:
            raise ConfigError(f"{flag} is required")
        return default
    if isinstance(value, int) and value < 0:
        raise ConfigError(f"{flag} must be >= 0")
    return value


def _cmd_expand(spec, config):
    n_max = _need(config.n_max, "--n-max", 10)
    seq = direct_expand(spec, n_max)
    return [{"n": n, "value": fmt(v)} for n, v in enumerate(seq.values)], None, 0


def _cmd_census(spec, config):
    n_max = _need(config.n_max, "--n-max")
    arity = spec.arity if spec is not None else (config.arity or 3)
    rows = []
    for n in range(n_max + 1):
        row = {"n": n, "count": count_terms(n, arity)}
        if spec is not None or config.terms:
            terms = enumerate_terms(n, arity)
            if spec is not None:
                row["value"] = fmt(evaluate_terms(terms, spec))
            if config.terms:
                row["terms"] = [t.compact() for t in terms.terms]
        rows.append(row)
    return rows, None, 0


def _table_rows(table):
    return {"N": table.N, "entries": [{"power": k, "value": fmt(table.entries[k])}
                                      for k in table.powers()]}


def _cmd_trf(spec, config):
    if config.betas:
        profile = TerminationProfile(tuple(config.betas))
        N_max = _need(config.N_max, "--N-max", len(profile.betas) - 1)
        tables = [subseries_polynomial(spec, N, profile) for N in range(N_max + 1)]
    else:
        n_max = _need(config.n_max, "--n-max", 5)
        N_max = _need(config.N_max, "--N-max", 3)
        tables = [subseries_infinite(spec, N, n_max) for N in range(N_max + 1)]
    return [_table_rows(t) for t in tables], None, 0


def compare_methods(spec: RecurrenceSpec, k_max: int) -> dict:
    """Coefficient sequences for every method applicable to ``spec``."""
    methods = {"direct": direct_expand(spec, k_max).values}
    if spec.arity == 2:
        methods["two_term"] = cat.two_term_series(spec, k_max).values
    elif spec.seed.is_canonical:
        methods["census"] = tuple(evaluate_terms(enumerate_terms(k, spec.arity), spec)
                                  for k in range(k_max + 1))
        if spec.arity == 3:
            methods["trf"] = assemble_coefficients(subseries_tables(spec, k_max), k_max).values
            limit = [subseries_limit_form(spec, N, (k_max - N) // 2) for N in range(k_max + 1)]
            methods["limit"] = assemble_coefficients(limit, k_max).values
    if len(methods) < 2:
        raise ConfigError("compare needs a second method; explicit seeds only admit direct expansion")
    return methods


def _cmd_compare(spec, config):
    k_max = _need(config.k_max, "--k-max", 10)
    methods = compare_methods(spec, k_max)
    others = [m for m in methods if m != "direct"]
    rows, nonzero = [], 0
    for k in range(k_max + 1):
        ref = methods["direct"][k]
        row = {"k": k}
        for m in methods:
            row[m] = fmt(methods[m][k])
        deltas = {}
        for m in others:
            d = methods[m][k] - ref
            nonzero += d != 0
            deltas[m] = fmt(d)
        row["deltas"] = deltas
        rows.append(row)
    errors = None
    status = 0
    if nonzero and spec.mode == EXACT:
        status = 1
        errors = [{"type": "MethodMismatch", "module": "cli", "operation": "compare",
                   "index": None, "message": f"{nonzero} nonzero deltas in exact mode"}]
    return rows, errors, status


def _cmd_terminate(spec, config):
    if not config.betas:
        raise ConfigError("--beta is required for terminate")
    profile = TerminationProfile(tuple(config.betas))
    report = verify_termination(spec, profile)
    rows = [{**r, "value": fmt(r["value"])} for r in report.as_dicts()]
    if report.passed:
        return rows, None, 0
    bad = [r["index"] for r in rows if not r["zero"]]
    return rows, [{"type": "TerminationViolation", "module": "trf_closed_form",
                   "operation": "verify_termination", "index": bad[0],
                   "message": f"B nonzero at n={bad}"}], 1


def _cmd_eval(spec, config):
    if config.x is None:
        raise ConfigError("--x is required for eval")
    k_max = _need(config.k_max, "--k-max", 20)
    seq = direct_expand(spec, k_max)
    req = EvalRequest(config.x, float(spec.lam), k_max)
    sums = partial_sums(seq, req)
    rows = [{"k": k, "partial_sum": s} for k, s in enumerate(sums)]
    diag = {"total": sums[-1]}
    if spec.arity == 3:
        diag["convergence"] = convergence_report(seq, spec, config.x).as_dict()
        if spec.seed.is_canonical:
            split = eval_subseries_split(subseries_tables(spec, k_max), req)
            diag["subseries"] = [{"N": N, "value": v} for N, v in split.per_n.items()]
            diag["subseries_total"] = split.total
    return rows, None, 0, diag


def _cmd_catalog(spec, config):
    rows = []
    for e in cat.catalog_specs():
        s = e.spec
        rows.append({
            "name": e.name,
            "arity": s.arity if s is not None else 3,
            "seed": describe_spec(s, config)["seed"] if s is not None else "canonical",
            "parameters": list(e.parameters),
            "reference_values": list(e.reference_values),
            "description": e.description,
        })
    return rows, None, 0


_HANDLERS = {
    "expand": _cmd_expand, "census": _cmd_census, "trf": _cmd_trf,
    "compare": _cmd_compare, "terminate": _cmd_terminate, "eval": _cmd_eval,
    "catalog": _cmd_catalog,
}


def run(config: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns ``(exit_status, report)``."""
    report = {"command": config.command, "spec": {"equation": config.equation},
              "results": [], "errors": [], "diagnostics": None}
    try:
        if config.command not in _HANDLERS:
            raise ConfigError(f"unknown command {config.command!r}")
        spec = None
        if config.command not in ("catalog",) and (config.command != "census" or config.equation):
            spec = build_spec(config)
        report["spec"] = describe_spec(spec, config)
        out = _HANDLERS[config.command](spec, config)
        rows, errors, status = out[:3]
        report["results"] = rows
        report["errors"] = errors or []
        if len(out) > 3:
            report["diagnostics"] = out[3]
        return status, report
    except ConfigError as exc:
        report["errors"] = [exc.to_record()]
        return 2, report
    except TrfError as exc:
        report["errors"] = [exc.to_record()]
        return 1, report


def _csv_rows(command: str, rows: list) -> tuple[list, list]:
    if command == "trf":
        flat = [{"N": r["N"], "power": e["power"], "value": e["value"]}
                for r in rows for e in r["entries"]]
        return CSV_COLUMNS["trf"], flat
    if command == "compare":
        if not rows:
            return ["k"], []
        methods = [k for k in rows[0] if k not in ("k", "deltas")]
        cols = ["k", *methods, *(f"delta_{m}" for m in rows[0]["deltas"])]
        flat = [{"k": r["k"], **{m: r[m] for m in methods},
                 **{f"delta_{m}": d for m, d in r["deltas"].items()}} for r in rows]
        return cols, flat
    flat = []
    for r in rows:
        flat.append({k: " ".join(map(str, v)) if isinstance(v, list) else v for k, v in r.items()})
    return CSV_COLUMNS[command], flat


def render(report: dict, fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(report, indent=2) + "\n"
    buf = io.StringIO()
    if fmt_name == "csv":
        cols, flat = _csv_rows(report["command"], report["results"])
        writer = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
    else:
        spec = report["spec"]
        buf.write(f"# {report['command']}: " + ", ".join(f"{k}={v}" for k, v in spec.items()
                                                         if v not in (None, {}, "")) + "\n")
        for row in report["results"]:
            buf.write("  ".join(f"{k}={v}" for k, v in row.items()) + "\n")
        if report.get("diagnostics"):
            buf.write("# diagnostics: " + json.dumps(report["diagnostics"]) + "\n")
    for err in report["errors"]:
        buf.write(f"# error: {err['type']}: {err['message']}\n")
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ConfigError as exc:
        report = {"command": args.command, "spec": {"equation": args.equation},
                  "results": [], "errors": [exc.to_record()], "diagnostics": None}
        status = 2
    else:
        status, report = run(config)
    text = render(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
