"""Command-line entry point: ``burnin {recommend,metrics,simulate,table,delta}``."""

import argparse
import csv
import io
import math
import sys
import warnings
from pathlib import Path

from burnin import __version__
from burnin.designs import DESIGN_NAMES, DISPLAY_LABELS, ConfigurationError, design_key, make_design
from burnin.harness import (
    DEFAULT_SEED,
    NULL_POINTS,
    TABLE_IDS,
    ProfileError,
    ScenarioProfile,
    burnin_for,
    compare_to_published,
    load_profile,
    reproduce_table,
    run_oc,
)
from burnin.metrics import (
    MODES,
    VARIANTS,
    UndefinedEffectError,
    burnin_budget,
    burnin_formula,
    reactiveness_global,
    reactiveness_scenario,
    standardized_effect,
)
from burnin.parallel import default_workers
from burnin.trial import InvalidBurnInError, InvalidScenarioError, TrialScenario

VALIDATION_ERRORS = (InvalidScenarioError, InvalidBurnInError, ConfigurationError, ProfileError, UndefinedEffectError)


class UsageError(Exception):
    pass


def _prob(text):
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return v


def _pos_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} must be a positive integer")
    return v


def _burnin_arg(text):
    if text.isdigit():
        return int(text)
    up = text.upper()
    if up not in ("MIN", "FORMULA", "THIRD", "HALF"):
        raise argparse.ArgumentTypeError("burn-in must be an integer or MIN, FORMULA, THIRD, HALF")
    return up


def provenance(seed, variant, n_half, mode) -> str:
    return f"# burnin {__version__} seed={seed} variant={variant} n_half={n_half:g} mode={mode}"


def _designs(arg):
    if arg in (None, "all"):
        return [make_design(d) for d in DESIGN_NAMES]
    return [make_design(d.strip()) for d in arg.split(",")]


def _pct(v, ci=None):
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "-"
    s = f"{100 * v:.2f}"
    return s if ci is None else f"{s} ±{100 * ci:.2f}"


def _report_lines(reps) -> list:
    head = f"{'design':9s} {'r':>14s} {'eps':>14s} {'r+eps':>14s} {'delta':>7s} {'budget':>8s} {'b':>9s} {'BP':>14s}"
    lines = [head + "   (r, eps, BP x100)"]
    for rep in reps:
        ci = rep.ci_radii
        b = f"{rep.b} ±{ci.get('b', 0):.1f}" if rep.adaptive else f"{rep.b}"
        bp = _pct(rep.BP, ci.get("BP", 0)) if rep.adaptive else "-"
        lines.append(
            f"{DISPLAY_LABELS.get(rep.design, rep.design):9s} {_pct(rep.r, ci.get('r', 0)):>14s} "
            f"{_pct(rep.eps_rho, ci.get('eps_rho', 0)):>14s} {_pct(rep.risk, ci.get('risk', 0)):>14s} "
            f"{rep.delta:7.4f} {rep.budget:8.2f} {b:>9s} {bp:>14s}"
        )
        if not rep.adaptive:
            lines.append("  note: non-adaptive design, burn-in has no effect (floor b=2)")
        for note in rep.notes:
            lines.append(f"  note: {note}")
    return lines


def _write_rows(path, reps):
    buf = io.StringIO()
    rows = [r.row() for r in reps]
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: "" if v is None else (f"{v:.6f}" if isinstance(v, float) else v) for k, v in row.items()})
    Path(path).write_text(buf.getvalue())


# --- subcommands ---------------------------------------------------------------


def cmd_recommend(a, out):
    scenario = TrialScenario(a.p0, a.p1, a.n, n_half=a.n_half)
    print(provenance(a.seed, a.delta_variant, a.n_half, a.mode), file=out)
    delta = standardized_effect(a.p0, a.p1, a.delta_variant)
    if (a.r is None) != (a.eps is None):
        raise UsageError("--r and --eps go together")
    if a.r is not None:
        b = burnin_formula(a.n, a.n_half, a.r + a.eps, delta)
        print(f"delta={delta:.4f} budget={burnin_budget(a.n, a.n_half):.2f} r+eps={a.r + a.eps:.4f} "
              f"b={b} BP={2 * b / a.n:.4f}", file=out)
        return 0
    reps = [reactiveness_scenario(d, scenario, a.nsim, a.seed, variant=a.delta_variant, mode=a.mode,
                                  workers=a.threads) for d in _designs(a.design)]
    print("\n".join(_report_lines(reps)), file=out)
    if a.out:
        _write_rows(a.out, reps)
    return 0


def cmd_metrics(a, out):
    print(provenance(a.seed, a.delta_variant, a.n_half, a.mode), file=out)
    reps = [reactiveness_global(d, a.n, a.nsim, a.seed, n_half=a.n_half, variant=a.delta_variant, mode=a.mode,
                                workers=a.threads) for d in _designs(a.design)]
    print(f"global sweep: (p0, p1) ~ U[0,1]^2, n={a.n}, {a.nsim} replications", file=out)
    print("\n".join(_report_lines(reps)), file=out)
    if a.out:
        _write_rows(a.out, reps)
    return 0


def cmd_simulate(a, out):
    if a.profile:
        prof = load_profile(Path(a.profile).read_text())
        if a.seed is not None:
            prof.seed = a.seed
    else:
        if a.p0 is None or a.p1 is None or a.n is None:
            raise UsageError("simulate needs --p0 --p1 --n or --profile")
        prof = ScenarioProfile("cli", TrialScenario(a.p0, a.p1, a.n, n_half=a.n_half),
                               designs=_designs(a.design), null_point=a.null_point,
                               seed=DEFAULT_SEED if a.seed is None else a.seed,
                               delta_variant=a.delta_variant)
    if a.nsim:
        prof.n_sim_oc = a.nsim
    options = [a.burnin] if a.burnin is not None else list(prof.burnin_options)
    print(provenance(prof.seed, prof.delta_variant, prof.n_half, prof.mode), file=out)
    print(f"{'design':9s} {'b':>4s} {'T1 Z1':>7s} {'T1 Z0':>7s} {'pow Z1':>7s} {'pow Z0':>7s} {'n1/n':>6s} {'MSE':>8s}"
          "   (rates x100)", file=out)
    rows = []
    for d in prof.designs:
        for opt in (options if d.adaptive else ["MIN"]):
            b = burnin_for(prof, d, opt, a.threads)
            oc = run_oc(prof, d, b, a.threads)
            t = d.tests
            cells = [oc.type1_z1 if "z1" in t else None, oc.type1_z0 if "z0" in t else None,
                     oc.power_z1 if "z1" in t else None, oc.power_z0 if "z0" in t else None]
            bs = str(b) if d.adaptive else "-"
            print(f"{DISPLAY_LABELS.get(design_key(d), d.label):9s} {bs:>4s} "
                  + " ".join(f"{_pct(c):>7s}" for c in cells)
                  + f" {oc.mean_prop_arm1:6.3f} {oc.mse:8.4f}", file=out)
            rows.append([design_key(d), b if d.adaptive else ""] + cells + [oc.mean_prop_arm1, oc.mse])
    if a.out:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["design", "burnin", "type1_z1", "type1_z0", "power_z1", "power_z0", "prop_arm1", "mse"])
        for r in rows:
            w.writerow(["" if v is None else (f"{v:.6f}" if isinstance(v, float) else v) for v in r])
        Path(a.out).write_text(buf.getvalue())
    return 0


def cmd_table(a, out):
    ov = {"seed": a.seed, "workers": a.threads, "formula_source": a.formula_source}
    if a.nsim:
        # OC tables take the flag as the OC budget; metric tables as the metric budget
        ov["n_sim_oc" if a.id in ("t3", "t4") else "n_sim_metrics"] = a.nsim
    if a.nsim_metrics:
        ov["n_sim_metrics"] = a.nsim_metrics
    if a.n_half is not None:
        ov["n_half"] = a.n_half
    if a.delta_variant:
        ov["variant"] = a.delta_variant
    art = reproduce_table(a.id, ov)
    variant = a.delta_variant or ("rss" if a.id in ("t1", "fig1") else "ssd")
    n_half = a.n_half if a.n_half is not None else 1000.0
    print(provenance(a.seed, variant, n_half, "perrep"), file=out)
    if art.provenance.get("reduced_precision"):
        print("reduced precision: replication budget below the published 1000 metrics / 10000 OC", file=out)
    print(f"{len(art.rows)} rows; computed (published)", file=out)
    for line in compare_to_published(art):
        print(line, file=out)
    if a.out:
        Path(a.out).write_bytes(art.csv_bytes)
        if a.json:
            Path(a.out).with_suffix(".json").write_bytes(art.json_bytes)
    return 0


def cmd_delta(a, out):
    variants = [a.variant] if a.variant else list(VARIANTS)
    for v in variants:
        try:
            d = standardized_effect(a.p0, a.p1, v)
        except UndefinedEffectError:
            print(f"{v}: undefined (0/0)", file=sys.stderr)
            return 2
        print(f"{v} {d:.4f}" if math.isfinite(d) else f"{v} inf", file=out)
    return 0


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="burnin", description="Burn-in calibration for response-adaptive trials.")
    p.add_argument("--version", action="version", version=f"burnin {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed_default=DEFAULT_SEED):
        sp.add_argument("--seed", type=int, default=seed_default)
        sp.add_argument("--threads", type=_pos_int, default=default_workers())
        sp.add_argument("--out", help="write a CSV here")

    r = sub.add_parser("recommend", help="estimate r and eps, then recommend b")
    r.add_argument("--p0", type=_prob, required=True)
    r.add_argument("--p1", type=_prob, required=True)
    r.add_argument("--n", type=_pos_int, required=True)
    r.add_argument("--n-half", type=float, default=1000.0)
    r.add_argument("--design", default="all", help="comma list of " + ",".join(DESIGN_NAMES) + " or 'all'")
    r.add_argument("--delta-variant", choices=VARIANTS, default="ssd")
    r.add_argument("--mode", choices=MODES, default="perrep")
    r.add_argument("--nsim", type=_pos_int, default=1000)
    r.add_argument("--r", type=float, help="skip simulation: known reactiveness")
    r.add_argument("--eps", type=float, help="skip simulation: known allocation error")
    common(r)
    r.set_defaults(func=cmd_recommend)

    m = sub.add_parser("metrics", help="global reactiveness sweep over uniform (p0, p1)")
    m.add_argument("--n", type=_pos_int, required=True)
    m.add_argument("--n-half", type=float, default=1000.0)
    m.add_argument("--design", default="all")
    m.add_argument("--delta-variant", choices=VARIANTS, default="rss")
    m.add_argument("--mode", choices=MODES, default="perrep")
    m.add_argument("--nsim", type=_pos_int, default=1000)
    common(m)
    m.set_defaults(func=cmd_metrics)

    s = sub.add_parser("simulate", help="operating characteristics by Monte Carlo")
    s.add_argument("--p0", type=_prob)
    s.add_argument("--p1", type=_prob)
    s.add_argument("--n", type=_pos_int)
    s.add_argument("--n-half", type=float, default=1000.0)
    s.add_argument("--design", default="all")
    s.add_argument("--burnin", type=_burnin_arg, help="integer b or MIN/FORMULA/THIRD/HALF")
    s.add_argument("--delta-variant", choices=VARIANTS, default="ssd")
    s.add_argument("--null-point", choices=NULL_POINTS, default="control")
    s.add_argument("--nsim", type=_pos_int)
    s.add_argument("--profile", help="scenario profile file")
    common(s, seed_default=None)
    s.set_defaults(func=cmd_simulate)

    t = sub.add_parser("table", help="reproduce a published table or figure data")
    t.add_argument("--id", required=True, type=str.lower, choices=TABLE_IDS)
    t.add_argument("--nsim", type=_pos_int)
    t.add_argument("--nsim-metrics", type=_pos_int)
    t.add_argument("--n-half", type=float)
    t.add_argument("--delta-variant", choices=VARIANTS)
    t.add_argument("--formula-source", choices=("published", "computed"), default="published")
    t.add_argument("--json", action="store_true", help="also write a JSON mirror next to --out")
    common(t)
    t.set_defaults(func=cmd_table)

    d = sub.add_parser("delta", help="standardized treatment effect")
    d.add_argument("--p0", type=_prob, required=True)
    d.add_argument("--p1", type=_prob, required=True)
    d.add_argument("--variant", choices=VARIANTS)
    d.set_defaults(func=cmd_delta)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return args.func(args, out)
    except (UsageError, *VALIDATION_ERRORS) as exc:
        print(f"burnin: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"burnin: runtime error: {exc}", file=sys.stderr)
        return 1


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
