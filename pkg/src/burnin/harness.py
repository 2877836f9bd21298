"""Monte Carlo driver: operating characteristics, metric runs and table
reproduction."""

import configparser
import csv
import importlib
import io
import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from burnin import reference
from burnin.designs import DESIGN_NAMES, DISPLAY_LABELS, DesignSpec, design_key, make_design
from burnin.inference import OperatingCharacteristics, trial_contributions
from burnin.metrics import (
    MetricReport,
    burnin_budget,
    reactiveness_global,
    reactiveness_scenario,
    standardized_effect,
    UndefinedEffectError,
)
from burnin.parallel import map_replications
from burnin.rng import NS_ALTERNATIVE, NS_NULL, RngStream
from burnin.trial import TrialScenario, check_feasible, simulate_trial

BURNIN_KEYWORDS = ("MIN", "FORMULA", "THIRD", "HALF")
NULL_POINTS = ("control", "midpoint")
TABLE_IDS = ("t1", "t2", "t2_arrest", "t2_calisto", "t3", "t4", "fig1", "fig2")
T1_SIZES = (200, 500, 1000, 2000)
DEFAULT_SEED = 20251018

COLUMNS = {
    "t1": ("n", "design", "r_x100", "r_ci", "eps_x100", "eps_ci", "sum_x100", "sum_ci", "b", "b_ci", "BP_x100", "BP_ci"),
    "t2": ("scenario", "design", "r_x100", "r_ci", "eps_x100", "eps_ci", "sum_x100", "sum_ci", "b", "b_ci", "BP_x100", "BP_ci"),
    "t3": ("design", "burnin", "type1_z1", "type1_z0", "power_z1", "power_z0", "prop_arm1", "mse"),
    "fig1": ("p0", "p1", "delta"),
    "fig2": ("n", "budget"),
}
COLUMNS["t4"] = COLUMNS["t3"]


class ProfileError(ValueError):
    pass


@dataclass
class ScenarioProfile:
    name: str
    scenario: TrialScenario
    designs: list = field(default_factory=lambda: [make_design(d) for d in DESIGN_NAMES])
    burnin_options: tuple = ("MIN", "FORMULA", "THIRD")
    n_sim_metrics: int = 1000
    n_sim_oc: int = 10000
    delta_variant: str = "ssd"
    null_point: str = "control"
    seed: int = DEFAULT_SEED
    mode: str = "perrep"
    perrep_rule: str = "rho"
    # design key -> burn-in used for the FORMULA option; computed when absent
    formula_b: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.burnin_options:
            raise ProfileError("burnin_options must be nonempty")
        for opt in self.burnin_options:
            if isinstance(opt, int):
                if not 2 <= opt <= self.scenario.n // 2:
                    raise ProfileError(f"fixed burn-in {opt} outside [2, n/2]")
            elif opt not in BURNIN_KEYWORDS:
                raise ProfileError(f"unknown burn-in option {opt!r}")
        if self.null_point not in NULL_POINTS:
            raise ProfileError(f"unknown null point {self.null_point!r}")

    @property
    def n_half(self) -> float:
        return self.scenario.n_half

    def null_scenario(self) -> TrialScenario:
        p = self.scenario.p0 if self.null_point == "control" else 0.5 * (self.scenario.p0 + self.scenario.p1)
        return replace(self.scenario, p0=p, p1=p)

    def design(self, key: str) -> DesignSpec:
        for d in self.designs:
            if design_key(d) == key:
                return d
        raise KeyError(key)


def arrest_profile(**kw) -> ScenarioProfile:
    kw.setdefault("formula_b", reference.formula_b("ARREST"))
    return ScenarioProfile("ARREST", TrialScenario(0.12, 0.37, 86, n_half=1000.0), **kw)


def calisto_profile(**kw) -> ScenarioProfile:
    kw.setdefault("formula_b", reference.formula_b("CALISTO"))
    return ScenarioProfile("CALISTO", TrialScenario(0.941, 0.991, 360, n_half=1000.0), **kw)


PROFILES = {"arrest": arrest_profile, "calisto": calisto_profile}


def resolve_burnin(option, n: int, formula_b: int | None = None) -> int:
    if isinstance(option, int):
        b = option
    elif option == "MIN":
        b = 2
    elif option == "THIRD":
        b = int(round(n / 3))
    elif option == "HALF":
        b = n // 2
    elif option == "FORMULA":
        if formula_b is None:
            raise ProfileError("FORMULA burn-in needs a computed or configured b")
        b = int(formula_b)
    else:
        raise ProfileError(f"unknown burn-in option {option!r}")
    if not 2 <= b <= n // 2:
        raise ProfileError(f"burn-in {b} infeasible for n = {n}")
    return b


# --- operating characteristics ---------------------------------------------


def _oc_block(start, stop, scenario, design, b, seed, namespace):
    out = np.empty((stop - start, 5))
    for row, m in enumerate(range(start, stop)):
        path = simulate_trial(scenario, design, b, RngStream(seed, m, namespace))
        out[row] = trial_contributions(path, scenario)
    return out


def oc_contributions(scenario, design, b, n_sim, seed, namespace, workers=1) -> np.ndarray:
    check_feasible(scenario, design, b)
    return map_replications(_oc_block, n_sim, workers, scenario=scenario, design=design, b=b,
                            seed=seed, namespace=namespace)


def run_oc(profile: ScenarioProfile, design: DesignSpec, burnin, workers: int = 1,
           n_sim: int | None = None, which: str = "both") -> OperatingCharacteristics:
    """Operating characteristics under the alternative and the null.

    ``which`` = ``"null"`` or ``"alt"`` skips the other half (its fields are nan).
    """
    n_sim = n_sim or profile.n_sim_oc
    b = burnin_for(profile, design, burnin, workers)
    alt = null = None
    if which in ("both", "alt"):
        alt = oc_contributions(profile.scenario, design, b, n_sim, profile.seed, NS_ALTERNATIVE, workers)
    if which in ("both", "null"):
        null = oc_contributions(profile.null_scenario(), design, b, n_sim, profile.seed, NS_NULL, workers)
    blank = np.full((n_sim, 5), np.nan)
    oc = OperatingCharacteristics.from_contributions(alt if alt is not None else blank,
                                                     null if null is not None else blank)
    return oc


def burnin_for(profile, design, burnin, workers=1) -> int:
    if not design.adaptive:
        return 2
    formula = None
    if burnin == "FORMULA":
        key = design_key(design)
        formula = profile.formula_b.get(key)
        if formula is None:
            formula = run_metrics(profile, design, workers).b
    return resolve_burnin(burnin, profile.scenario.n, formula)


def run_metrics(profile: ScenarioProfile, design: DesignSpec, workers: int = 1) -> MetricReport:
    return reactiveness_scenario(design, profile.scenario, profile.n_sim_metrics, profile.seed,
                                 variant=profile.delta_variant, mode=profile.mode, workers=workers,
                                 perrep_rule=profile.perrep_rule)


# --- tables -----------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    v = float(v)
    if math.isnan(v):
        return ""
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.6f}"


@dataclass
class TableArtifact:
    table_id: str
    rows: list
    provenance: dict = field(default_factory=dict)

    @property
    def columns(self) -> tuple:
        return COLUMNS[self.table_id]

    @property
    def csv_bytes(self) -> bytes:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_fmt(row.get(c)) for c in self.columns])
        return buf.getvalue().encode()

    @property
    def json_bytes(self) -> bytes:
        def clean(v):
            if isinstance(v, (np.integer,)):
                return int(v)
            if isinstance(v, (float, np.floating)):
                v = float(v)
                return None if math.isnan(v) else (str(v) if math.isinf(v) else v)
            return v

        doc = {
            "table_id": self.table_id,
            "provenance": self.provenance,
            "rows": [{k: clean(v) for k, v in r.items()} for r in self.rows],
        }
        return json.dumps(doc, indent=1, sort_keys=True).encode()


def _t1(ov) -> TableArtifact:
    rows = []
    designs = [make_design(d) for d in ov.get("designs", DESIGN_NAMES)]
    for n in ov.get("sizes", T1_SIZES):
        for d in designs:
            rep = reactiveness_global(d, n, ov["n_sim_metrics"], ov["seed"], n_half=ov.get("n_half", 1000.0),
                                      variant=ov.get("variant", "rss"), mode="perrep", workers=ov["workers"],
                                      perrep_rule=ov.get("perrep_rule", "rho"))
            row = rep.row()
            row["design"] = design_key(d)
            rows.append(row)
    return TableArtifact("t1", rows)


def _profiles(ov):
    kw = {k: ov[k] for k in ("n_sim_metrics", "n_sim_oc", "seed") if k in ov}
    if "variant" in ov:
        kw["delta_variant"] = ov["variant"]
    if "perrep_rule" in ov:
        kw["perrep_rule"] = ov["perrep_rule"]
    return kw


def _t2(ov) -> TableArtifact:
    rows = []
    for name in ov.get("scenarios", ("arrest", "calisto")):
        prof = PROFILES[name](**_profiles(ov))
        if "n_half" in ov:
            prof.scenario = replace(prof.scenario, n_half=ov["n_half"])
        for d in prof.designs:
            if "designs" in ov and design_key(d) not in ov["designs"]:
                continue
            row = run_metrics(prof, d, ov["workers"]).row()
            row.update(scenario=prof.name, design=design_key(d))
            rows.append(row)
    return TableArtifact("t2", rows)


def _oc_table(table_id, prof, ov) -> TableArtifact:
    if ov.get("formula_source", "published") == "computed":
        prof.formula_b = {}
    rows = []
    for d in prof.designs:
        key = design_key(d)
        if "designs" in ov and key not in ov["designs"]:
            continue
        options = (None,) if not d.adaptive else prof.burnin_options
        for opt in options:
            b = None if opt is None else burnin_for(prof, d, opt, ov["workers"])
            oc = run_oc(prof, d, b if b is not None else "MIN", ov["workers"])
            tests = d.tests
            rows.append({
                "design": key,
                "burnin": b,
                "option": opt,
                "type1_z1": oc.type1_z1 if "z1" in tests else None,
                "type1_z0": oc.type1_z0 if "z0" in tests else None,
                "power_z1": oc.power_z1 if "z1" in tests else None,
                "power_z0": oc.power_z0 if "z0" in tests else None,
                "prop_arm1": oc.mean_prop_arm1,
                "mse": oc.mse,
                "patient_benefit": oc.patient_benefit,
                "se": oc.se,
            })
    return TableArtifact(table_id, rows)


def _fig1(ov) -> TableArtifact:
    step = ov.get("step", 0.005)
    variant = ov.get("variant", "rss")
    grid = np.round(np.arange(0, 1 + step / 2, step), 10)
    rows = []
    for p0 in grid:
        for p1 in grid:
            try:
                d = standardized_effect(float(p0), float(p1), variant)
            except UndefinedEffectError:
                d = math.nan
            rows.append({"p0": float(p0), "p1": float(p1), "delta": d, "ge_one": bool(d >= 1.0)})
    return TableArtifact("fig1", rows)


def _fig2(ov) -> TableArtifact:
    n_half = ov.get("n_half", 1000.0)
    sizes = ov.get("sizes", range(10, 5001, 10))
    return TableArtifact("fig2", [{"n": int(n), "budget": burnin_budget(n, n_half)} for n in sizes])


def reproduce_table(table_id: str, overrides: dict | None = None) -> TableArtifact:
    """Recompute one of the published tables or figure data sets."""
    table_id = table_id.lower()
    if table_id not in TABLE_IDS:
        raise ValueError(f"unknown table id {table_id!r}")
    ov = {"n_sim_metrics": 1000, "n_sim_oc": 10000, "seed": DEFAULT_SEED, "workers": 1}
    ov.update(overrides or {})
    if table_id == "t1":
        art = _t1(ov)
    elif table_id.startswith("t2"):
        if table_id != "t2":
            ov.setdefault("scenarios", (table_id[3:],))
        art = _t2(ov)
        art.table_id = "t2"
    elif table_id in ("t3", "t4"):
        prof = (arrest_profile if table_id == "t3" else calisto_profile)(**_profiles(ov))
        art = _oc_table(table_id, prof, ov)
    elif table_id == "fig1":
        art = _fig1(ov)
    else:
        art = _fig2(ov)
    prov = {k: v for k, v in ov.items() if k != "workers" and isinstance(v, (int, float, str))}
    prov["reduced_precision"] = (
        (table_id.startswith(("t1", "t2")) and ov["n_sim_metrics"] < 1000)
        or (table_id in ("t3", "t4") and (ov["n_sim_oc"] < 10000 or ov["n_sim_metrics"] < 1000))
    )
    art.provenance = prov
    return art


def compare_to_published(art: TableArtifact) -> list:
    """Lines contrasting computed cells with the published ones."""
    lines = []
    if art.table_id in ("t1", "t2"):
        for row in art.rows:
            if art.table_id == "t1":
                ref = reference.TABLE1.get(row["n"], {}).get(row["design"])
                tag = f"n={row['n']:<5d}"
            else:
                ref = reference.TABLE2.get(row["scenario"], {}).get(row["design"])
                tag = f"{row['scenario']:<8s}"
            if ref is None:
                continue
            b = "-" if row["b"] is None else str(row["b"])
            lines.append(
                f"{tag} {DISPLAY_LABELS.get(row['design'], row['design']):9s} "
                f"r {row['r_x100']:6.2f} ({ref[0]:6.2f})  eps {row['eps_x100']:6.2f} ({ref[1]:6.2f})  "
                f"b {b:>4s} ({'-' if ref[3] is None else ref[3]})"
            )
    elif art.table_id in ("t3", "t4"):
        table = reference.TABLE3 if art.table_id == "t3" else reference.TABLE4
        for row in art.rows:
            ref = table.get((row["design"], row["burnin"]))
            cells = []
            for i, col in enumerate(("type1_z1", "type1_z0", "power_z1", "power_z0")):
                v = row[col]
                r = None if ref is None else ref[i]
                cells.append(f"{'-' if v is None else f'{100 * v:6.2f}':>6s} ({'-' if r is None else f'{r:6.2f}'})")
            rp = "" if ref is None else f" ({ref[4]:.3f})"
            rm = "" if ref is None else f" ({ref[5]:.4f})"
            b = "-" if row["burnin"] is None else str(row["burnin"])
            lines.append(
                f"{DISPLAY_LABELS.get(row['design'], row['design']):9s} b={b:>4s} " + " ".join(cells)
                + f" n1/n {row['prop_arm1']:.3f}{rp} mse {row['mse']:.4f}{rm}"
            )
    elif art.table_id == "fig2":
        for row in art.rows:
            if row["n"] == 1000:
                lines.append(f"n=1000 budget {row['budget']:.2f} (500)")
    elif art.table_id == "fig1":
        finite = [r["delta"] for r in art.rows if r["p0"] == 0.5 and not math.isnan(r["delta"])]
        lines.append(f"p0=0.5 max delta {max(finite):.4f} (1)")
    return lines


# --- profile files ------------------------------------------------------------

_PROFILE_KEYS = {
    "name", "p0", "p1", "n", "n_half", "alpha", "designs", "burnin_options", "n_sim_metrics",
    "n_sim_oc", "delta_variant", "null_point", "seed", "mode", "perrep_rule",
}
_DESIGN_KEYS = {"rho_fn", "estimator", "erade_alpha", "tuning", "prior", "rptw_burnin_update", "formula_b"}


def _import_object(path: str):
    module, _, attr = path.partition(":")
    if not attr:
        raise ProfileError(f"rho_fn must look like 'module:function', got {path!r}")
    return getattr(importlib.import_module(module), attr)


def _parse_option(tok: str):
    tok = tok.strip()
    return int(tok) if tok.isdigit() else tok.upper()


def load_profile(text: str) -> ScenarioProfile:
    """Parse a scenario profile (INI-style ``key = value`` sections)."""
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ProfileError(str(exc)) from exc
    if "profile" not in cp:
        raise ProfileError("missing [profile] section")
    sec = cp["profile"]
    unknown = set(sec) - _PROFILE_KEYS
    if unknown:
        raise ProfileError(f"unknown profile keys: {sorted(unknown)}")
    try:
        scenario = TrialScenario(
            float(sec["p0"]), float(sec["p1"]), int(sec["n"]),
            float(sec.get("n_half", 1000)), float(sec.get("alpha", 0.05)),
        )
    except KeyError as exc:
        raise ProfileError(f"missing profile key {exc}") from exc
    names = [d.strip() for d in sec.get("designs", ",".join(DESIGN_NAMES)).split(",") if d.strip()]
    design_opts, formula = {}, {}
    for section in cp.sections():
        if section == "profile":
            continue
        if not section.startswith("design."):
            raise ProfileError(f"unknown section [{section}]")
        key = section[len("design."):]
        if key not in names:
            raise ProfileError(f"section [{section}] names a design not in 'designs'")
        opts = dict(cp[section])
        unknown = set(opts) - _DESIGN_KEYS
        if unknown:
            raise ProfileError(f"unknown keys in [{section}]: {sorted(unknown)}")
        if "formula_b" in opts:
            formula[key] = int(opts.pop("formula_b"))
        design_opts[key] = opts
    designs = []
    for name in names:
        opts = design_opts.get(name, {})
        kw = {}
        if "erade_alpha" in opts:
            kw["erade_alpha"] = float(opts["erade_alpha"])
        if "tuning" in opts:
            kw["tuning"] = float(opts["tuning"])
        if "prior" in opts:
            kw["prior"] = tuple(float(x) for x in opts["prior"].split(","))
        if "rptw_burnin_update" in opts:
            kw["rptw_burnin_update"] = opts["rptw_burnin_update"].strip().lower() in ("1", "true", "yes")
        rho_fn = _import_object(opts["rho_fn"]) if "rho_fn" in opts else None
        designs.append(make_design(name, rho_fn=rho_fn, estimator=opts.get("estimator", "mle"), **kw))
    options = tuple(_parse_option(t) for t in sec.get("burnin_options", "MIN,FORMULA,THIRD").split(","))
    return ScenarioProfile(
        name=sec.get("name", "custom"),
        scenario=scenario,
        designs=designs,
        burnin_options=options,
        n_sim_metrics=int(sec.get("n_sim_metrics", 1000)),
        n_sim_oc=int(sec.get("n_sim_oc", 10000)),
        delta_variant=sec.get("delta_variant", "ssd"),
        null_point=sec.get("null_point", "control"),
        seed=int(sec.get("seed", DEFAULT_SEED)),
        mode=sec.get("mode", "perrep"),
        perrep_rule=sec.get("perrep_rule", "rho"),
        formula_b=formula,
    )
