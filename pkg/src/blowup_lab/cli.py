"""Command-line entry points.

Exit-code policy: 0 for informative outcomes (a completed run, a
detected blow-up, a "fails" class verdict -- all successful
measurements), 2 for unresolvable ids or bad configs, 3 for a class
test that errored, 4 for a stalled run, 5 for a verification run whose
asserted margins fail.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import classtests, diagnostics
from .classtests import HOLDS
from .config import RunConfig, build_manifest, load_config, packaged_scenarios
from .defaults import DEFAULT_SEED, TOLERANCES
from .errors import BlowupLabError, ConfigError, UnknownCatalogId
from .nonlinearity import catalog_entries, resolve
from .pde import BLEW_UP, COMPLETED, STALLED, advance

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_TEST_ERROR = 3
EXIT_STALLED = 4
EXIT_VERIFY_FAILED = 5


def _parse_tols(pairs) -> dict:
    out = {}
    for item in pairs or []:
        key, sep, val = item.partition("=")
        if not sep or key not in TOLERANCES:
            raise ConfigError(f"--tol expects KEY=VAL with a known key, got {item!r}")
        out[key] = float(val)
    return out


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    cfg.tolerances = {**cfg.tolerances, **_parse_tols(getattr(args, "tol", None))}
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "output_dir", None):
        cfg.output_dir = args.output_dir
    return cfg


def _emit(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=False)
    if path:
        Path(path).write_text(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# classify


def _classify_tests(nl, args):
    """(name, runner) pairs; runners return a JSON-ready dict."""
    window = None
    if args.window:
        lo, _, hi = args.window.partition(",")
        window = (float(lo), float(hi))

    def gc_alpha():
        lo, hi = window or (max(nl.a + 1.0, 1.0), 1e4)
        return classtests.gc_alpha_test(nl, args.alpha, lo, hi).to_dict()

    def gc_ratio():
        lo, hi = window or (max(nl.a + 1.0, 1.0), 1e4)
        return classtests.gc_ratio_monotone_test(nl, args.alpha, lo, hi).to_dict()

    def hh():
        lo, hi = window or (nl.a, nl.a + 1.0)
        return classtests.hh_check(nl, lo, hi).to_dict()

    def rv():
        return classtests.rv_index_estimate(nl).to_dict()

    def ko():
        return classtests.keller_osserman_test(nl, args.p).to_dict()

    def growth():
        return classtests.growth_check(nl, args.p).to_dict()

    def nfunc():
        return classtests.n_function_check(nl, seed=args.seed).to_dict()

    def delta2():
        k_hat, v = classtests.delta2_estimate(nl)
        return {"k_hat": k_hat, "verdict": v.to_dict()}

    table = {
        "gc_alpha": (gc_alpha, args.alpha is not None),
        "gc_ratio": (gc_ratio, args.alpha is not None),
        "hh": (hh, False),  # only on request: meaningful for convex entries
        "rv": (rv, True),
        "ko": (ko, args.p is not None),
        "growth": (growth, args.p is not None),
        "nfunc": (nfunc, True),
        "delta2": (delta2, True),
    }
    return table


def cmd_classify(args) -> int:
    try:
        nl = resolve(args.id)
    except UnknownCatalogId as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    table = _classify_tests(nl, args)
    if args.tests:
        requested = [t.strip() for t in args.tests.split(",") if t.strip()]
        unknown = [t for t in requested if t not in table]
        if unknown:
            print(f"error: unknown tests {unknown}", file=sys.stderr)
            return EXIT_CONFIG
        explicit = True
    else:
        requested = [name for name, (_, applicable) in table.items() if applicable]
        explicit = False

    verdicts = {}
    errored = False
    for name in requested:
        runner, _ = table[name]
        try:
            verdicts[name] = runner()
        except TypeError as exc:  # missing --alpha / --p for a requested test
            verdicts[name] = {"error": str(exc)}
            errored = True
        except BlowupLabError as exc:
            if explicit:
                verdicts[name] = {"error": f"{type(exc).__name__}: {exc}"}
                errored = True
            else:
                verdicts[name] = {"skipped": f"{type(exc).__name__}: {exc}"}
    _emit({"id": nl.id, "notes": nl.notes, "verdicts": verdicts}, args.output)
    return EXIT_TEST_ERROR if errored else EXIT_OK


# ---------------------------------------------------------------------------
# simulate


def _run_config(cfg: RunConfig):
    """Run a config; returns (problem, outcome, trace, E0, wall_time)."""
    problem = cfg.to_problem()
    e0 = diagnostics.energy(problem.u0, problem)
    trace: list = []
    t0 = time.perf_counter()
    outcome = advance(problem, [trace.append])
    wall = time.perf_counter() - t0
    return problem, outcome, trace, e0, wall


def _write_run(cfg: RunConfig, problem, outcome, trace, e0, wall) -> Path:
    outdir = Path(cfg.output_dir or f"runs/{cfg.scenario}")
    outdir.mkdir(parents=True, exist_ok=True)
    diagnostics.write_trace_csv(trace, outdir / "trace.csv")
    outcome.trace_ref = "trace.csv"
    gc = classtests.gc_alpha_test(
        problem.nl, cfg.alpha, max(problem.nl.a + 1.0, 1.0), 1e4
    )
    manifest = build_manifest(
        cfg,
        outcome,
        initial_energy=e0,
        wall_time=wall,
        trace_ref="trace.csv",
        class_verdicts={"gc_alpha": gc.to_dict()},
    )
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return outdir


def cmd_simulate(args) -> int:
    try:
        cfg = _apply_overrides(load_config(args.config), args)
        problem, outcome, trace, e0, wall = _run_config(cfg)
        outdir = _write_run(cfg, problem, outcome, trace, e0, wall)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    bracket = ""
    if outcome.blowup_bracket:
        bracket = f" bracket=[{outcome.blowup_bracket[0]:.9g}, {outcome.blowup_bracket[1]:.9g}]"
    print(
        f"{cfg.scenario}: {outcome.status} t_final={outcome.t_final:.9g}{bracket} "
        f"E0={e0:.6g} steps={len(trace) - 1} wall={wall:.2f}s -> {outdir}"
    )
    return EXIT_STALLED if outcome.status == STALLED else EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _assertions(cfg: RunConfig, trace, report, gc_holds, e0):
    """(name, passed, value, asserted) rows for the verification gate.

    The h/H inequality margins are asserted only under the hypotheses
    that make them theorems: reaction in the order-alpha class, E(u0)
    <= 0, and a positive gradient coefficient 1/(Cp) - p + 1 (the chain
    that proves them discards the gradient term with that sign). Outside
    that regime they are reported as measurements.
    """
    coeff = report.coefficients["coeff_ft7"]
    hyp = gc_holds and e0 <= 0.0 and coeff > 0.0
    mean_drift = diagnostics.mean_conservation_max(trace)
    mono = diagnostics.energy_monotone_check(
        trace, cfg.tolerance("energy_slack")
    )
    rows = [
        ("mean_conservation", mean_drift <= 1e-10, mean_drift, True),
        ("energy_monotone", mono.status == HOLDS, mono.margin, True),
        ("ft5_residual", report.ft5_residual_max <= 1e-2, report.ft5_residual_max, True),
        ("necessity_bound", report.necessity_margin_min >= 0.0, report.necessity_margin_min, True),
        ("ft6_margin", report.ft6_margin_min >= -1e-6, report.ft6_margin_min, hyp),
        ("ft7_margin", report.ft7_margin_min >= -1e-6, report.ft7_margin_min, hyp),
        ("ft8_margin", report.ft8_margin_min >= -1e-6, report.ft8_margin_min, hyp),
    ]
    return rows, hyp


def cmd_verify(args) -> int:
    try:
        cfg = _apply_overrides(load_config(args.config), args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    outdir = Path(cfg.output_dir or f"runs/{cfg.scenario}")
    trace_path = outdir / "trace.csv"
    try:
        problem = cfg.to_problem()
        if trace_path.is_file() and (outdir / "manifest.json").is_file():
            trace = diagnostics.read_trace_csv(trace_path)
            manifest = json.loads((outdir / "manifest.json").read_text())
            status = manifest["outcome"]["status"]
            t_final = manifest["outcome"]["t_final"]
            e0 = manifest["initial_energy"]
        else:
            problem2, outcome, trace, e0, _ = _run_config(cfg)
            problem = problem2
            status, t_final = outcome.status, outcome.t_final
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    # blow-up traces are checked up to 0.9 of the detected time; the last
    # stretch before detection has no resolvable finite differences
    checked = (
        diagnostics.truncate_trace(trace, 0.9 * t_final) if status == BLEW_UP else trace
    )
    report = diagnostics.lemma_checks(checked, problem, cfg.alpha)
    gc = classtests.gc_alpha_test(problem.nl, cfg.alpha, max(problem.nl.a + 1.0, 1.0), 1e4)
    rows, hyp = _assertions(cfg, checked, report, gc.status == HOLDS, e0)

    payload = {
        "scenario": cfg.scenario,
        "status": status,
        "hypotheses": {
            "gc_alpha_holds": gc.status == HOLDS,
            "initial_energy_nonpositive": e0 <= 0.0,
            "ft7_coefficient": report.coefficients["coeff_ft7"],
            "asserted_regime": hyp,
        },
        "lemma_report": report.to_dict(),
        "assertions": [
            {"name": n, "passed": ok, "value": v, "asserted": a} for n, ok, v, a in rows
        ],
    }
    _emit(payload, args.output)

    failed = [n for n, ok, v, a in rows if a and not ok]
    for n, ok, v, a in rows:
        flag = "PASS" if ok else ("FAIL" if a else "report")
        print(f"  {flag:6s} {n} = {v:.6g}", file=sys.stderr)
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep


def _set_by_path(obj, path: str, value: float):
    keys = path.split(".")
    cur = obj
    for k in keys[:-1]:
        if isinstance(cur, list):
            cur = cur[int(k)]
        elif isinstance(cur, dict) and k in cur:
            cur = cur[k]
        else:
            raise ConfigError(f"sweep parameter path {path!r}: no key {k!r}")
    leaf = keys[-1]
    if isinstance(cur, list):
        i = int(leaf)
        if not isinstance(cur[i], (int, float)):
            raise ConfigError(f"sweep parameter {path!r} is not numeric")
        cur[i] = value
    elif isinstance(cur, dict) and leaf in cur and isinstance(cur[leaf], (int, float)):
        cur[leaf] = value
    else:
        raise ConfigError(f"sweep parameter {path!r} missing or not numeric")


def cmd_sweep(args) -> int:
    try:
        base = _apply_overrides(load_config(args.config), args)
        values = [float(v) for v in args.values.split(",") if v.strip()]
        if not values:
            raise ConfigError("--values must list at least one number")
        base_dict = base.to_dict()
        _set_by_path(json.loads(json.dumps(base_dict)), args.param, values[0])  # address check
    except (ConfigError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    outdir = Path(base.output_dir or f"runs/sweep_{base.scenario}_{args.param.replace('.', '_')}")
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    for v in values:
        d = json.loads(json.dumps(base_dict))
        _set_by_path(d, args.param, v)
        d["output_dir"] = str(outdir / f"{args.param}={v:g}")
        try:
            cfg = RunConfig.from_dict(d)
            problem, outcome, trace, e0, wall = _run_config(cfg)
            _write_run(cfg, problem, outcome, trace, e0, wall)
            t_star = ""
            if outcome.status == BLEW_UP and outcome.blowup_bracket:
                t_star = f"{0.5 * sum(outcome.blowup_bracket):.17g}"
            rows.append((v, e0, outcome.status, t_star))
            print(f"  {args.param}={v:g}: {outcome.status} E0={e0:.6g} {t_star}")
        except BlowupLabError as exc:
            rows.append((v, float("nan"), f"error: {exc}", ""))
            print(f"  {args.param}={v:g}: error {exc}", file=sys.stderr)

    with open(outdir / "summary.csv", "w", newline="\n") as fh:
        fh.write("value,E0,outcome,t_star\n")
        for v, e0, status, t_star in rows:
            fh.write(f"{v:.17g},{e0:.17g},{status},{t_star}\n")

    outcomes = [r[2] for r in rows]
    flips = [i for i in range(1, len(outcomes)) if outcomes[i] != outcomes[i - 1]]
    if len(flips) == 1 and {COMPLETED, BLEW_UP} == set(outcomes[flips[0] - 1 : flips[0] + 1]):
        print(
            f"monotone frontier between {args.param}={rows[flips[0] - 1][0]:g} "
            f"and {rows[flips[0]][0]:g}"
        )
    print(f"summary -> {outdir / 'summary.csv'}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# catalog


def cmd_catalog(args) -> int:
    print("catalog entries (ids take key=value parameters, e.g. power:sigma=2):")
    for example, notes in catalog_entries():
        print(f"  {example:24s} {notes}")
    print("\npackaged scenarios:")
    for name in packaged_scenarios():
        print(f"  {name}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blowup-lab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="run class tests on a catalog entry")
    c.add_argument("id", help="catalog id, e.g. power:sigma=2")
    c.add_argument("--tests", help="comma list: gc_alpha,gc_ratio,hh,rv,ko,growth,nfunc,delta2")
    c.add_argument("--alpha", type=float, help="order for the mean-value tests")
    c.add_argument("--p", type=float, help="order for the integrability/growth tests")
    c.add_argument("--window", help="TMIN,TMAX probe window")
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--output", help="write the JSON report here instead of stdout")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("simulate", help="run a scenario config")
    s.add_argument("config", help="config path or packaged scenario name")
    s.add_argument("--output-dir")
    s.add_argument("--seed", type=int)
    s.add_argument("--tol", action="append", metavar="KEY=VAL")
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("verify", help="check the inequality suite on a run")
    v.add_argument("config", help="config path or packaged scenario name")
    v.add_argument("--output-dir")
    v.add_argument("--seed", type=int)
    v.add_argument("--tol", action="append", metavar="KEY=VAL")
    v.add_argument("--output", help="write the JSON report here instead of stdout")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("sweep", help="rerun a config over one numeric parameter")
    w.add_argument("config")
    w.add_argument("--param", required=True, help="dotted path, e.g. u0.amplitude or p")
    w.add_argument("--values", required=True, help="comma list of numbers")
    w.add_argument("--output-dir")
    w.add_argument("--seed", type=int)
    w.add_argument("--tol", action="append", metavar="KEY=VAL")
    w.set_defaults(func=cmd_sweep)

    k = sub.add_parser("catalog", help="list catalog entries and scenarios")
    k.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, UnknownCatalogId) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
