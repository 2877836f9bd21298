"""Standardized effect, burn-in budget, reactiveness, allocation error and the
burn-in recommendation."""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from burnin.designs import DesignSpec
from burnin.parallel import map_replications
from burnin.rng import NS_METRICS, RngStream
from burnin.trial import TrialPath, TrialScenario, simulate_trial

VARIANTS = ("rss", "ssd")
MODES = ("plugin", "perrep")
Z95 = 1.959963984540054


class UndefinedEffectError(ValueError):
    pass


class BurnInWarning(UserWarning):
    pass


def standardized_effect(p0: float, p1: float, variant: str = "rss") -> float:
    """|p1 - p0| scaled by response variability.

    ``rss`` divides by the root of the summed variances, ``ssd`` by the sum
    of the two standard deviations.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown delta variant {variant!r}")
    if not (0.0 <= p0 <= 1.0 and 0.0 <= p1 <= 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    diff = abs(p1 - p0)
    v0, v1 = p0 * (1.0 - p0), p1 * (1.0 - p1)
    den = math.sqrt(v0 + v1) if variant == "rss" else math.sqrt(v0) + math.sqrt(v1)
    if den == 0.0:
        if diff == 0.0:
            raise UndefinedEffectError(f"delta undefined for p0 = p1 = {p0} (0/0)")
        return math.inf
    return diff / den


def burnin_budget(n: float, n_half: float) -> float:
    """Total sample size available for burn-in, n*n_half/(n + n_half)."""
    return n * n_half / (n + n_half)


def geometric_slope(path, rho: float, n: int | None = None) -> float:
    """Mean geometric rate at which n1(i)/i approaches ``rho``.

    ``path`` is a TrialPath or the running arm-1 counts n1(1..n). Deviations
    from ``rho`` are floored at 1/(2n) before taking logs; the sum over
    i = 2..n is divided by n.
    """
    running = path.running_n1 if isinstance(path, TrialPath) else np.asarray(path)
    n = len(running) if n is None else n
    if rho == 0.5:
        return 0.0
    i = np.arange(2, len(running) + 1, dtype=np.float64)
    dev = np.maximum(np.abs(running[1:] / i - rho), 1.0 / (2 * n))
    terms = -np.log(dev / abs(0.5 - rho)) / np.log(i)
    return float(terms.sum() / n)


def allocation_error(prop1: float, rho: float) -> float:
    """Asymmetric distance of the final arm-1 proportion from the interval
    between 1/2 and ``rho``.

    Overshooting past ``rho`` costs the distance past ``rho``; ending on the
    wrong side of 1/2 costs the distance below 1/2. For ``rho < 1/2`` the
    same rule is applied to the arm-0 proportion against ``1 - rho``.
    """
    if rho < 0.5:
        # mirrored: arm 0 judged against 1 - rho, written without 1 - x rounding
        if prop1 < rho:
            return rho - prop1
        if prop1 > 0.5:
            return prop1 - 0.5
        return 0.0
    if prop1 > rho:
        return prop1 - rho
    if prop1 < 0.5:
        return 0.5 - prop1
    return 0.0


def final_allocation_error(path, rho: float) -> float:
    if isinstance(path, TrialPath):
        return allocation_error(path.alloc_counts[1] / path.n, rho)
    return allocation_error(float(path), rho)


def burnin_formula_raw(n: int, n_half: float, risk: float, delta: float) -> float:
    """0.5 * budget * risk**delta before flooring (0**0 taken as 1)."""
    if delta == 0.0:
        factor = 1.0
    elif risk == 0.0:
        factor = 0.0
    else:
        factor = risk**delta
    return 0.5 * burnin_budget(n, n_half) * factor


def burnin_formula(n: int, n_half: float, risk: float, delta: float) -> int:
    """Burn-in per arm: max(2, floor(0.5 * budget * risk**delta)), capped at n/2."""
    if risk < 0 or delta < 0:
        raise ValueError("risk and delta must be nonnegative")
    if risk > 1.0:
        warnings.warn(f"r + eps = {risk:.4f} exceeds 1; clamped", BurnInWarning, stacklevel=2)
        risk = 1.0
    b = max(2, math.floor(burnin_formula_raw(n, n_half, risk, delta)))
    if 2 * b > n:
        warnings.warn(f"formula burn-in {b} exceeds n/2; capped at {n // 2}", BurnInWarning, stacklevel=2)
        b = n // 2
    return b


@dataclass
class MetricReport:
    design: str
    n: int
    n_half: float
    r_tilde_rho: float
    r_tilde_0: float
    r_tilde_1: float
    r: float
    eps_rho: float
    delta: float
    budget: float
    b: int
    BP: float
    n_sim: int
    mode: str
    variant: str
    adaptive: bool = True
    ci_radii: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def risk(self) -> float:
        return self.r + self.eps_rho

    def row(self) -> dict:
        ci = self.ci_radii
        return {
            "n": self.n,
            "design": self.design,
            "r_x100": 100 * self.r,
            "r_ci": 100 * ci.get("r", 0.0),
            "eps_x100": 100 * self.eps_rho,
            "eps_ci": 100 * ci.get("eps_rho", 0.0),
            "sum_x100": 100 * self.risk,
            "sum_ci": 100 * ci.get("risk", 0.0),
            "b": self.b if self.adaptive else None,
            "b_ci": ci.get("b", 0.0) if self.adaptive else None,
            "BP_x100": 100 * self.BP if self.adaptive else None,
            "BP_ci": 100 * ci.get("BP", 0.0) if self.adaptive else None,
        }


def _ci(x) -> float:
    x = np.asarray(x, dtype=np.float64)
    if len(x) < 2:
        return 0.0
    return float(Z95 * x.std(ddof=1) / math.sqrt(len(x)))


def _metric_block(start, stop, design, n, n_half, seed, variant, p0=None, p1=None):
    # columns: c(rho), c(0), c(1), eps, delta, rho
    out = np.empty((stop - start, 6))
    for row, m in enumerate(range(start, stop)):
        gen = RngStream(seed, m, NS_METRICS).generator()
        if p0 is None:
            q0, q1 = gen.random(2)
        else:
            q0, q1 = p0, p1
        scenario = TrialScenario(float(q0), float(q1), n, n_half)
        rho = design.limit_rho(scenario.p0, scenario.p1)
        path = simulate_trial(scenario, design, 2, gen)
        running = path.running_n1
        try:
            delta = standardized_effect(scenario.p0, scenario.p1, variant)
        except UndefinedEffectError:
            delta = 0.0
        out[row] = (
            geometric_slope(running, rho, n),
            geometric_slope(running, 0.0, n),
            geometric_slope(running, 1.0, n),
            final_allocation_error(path, rho),
            delta,
            rho,
        )
    return out


PERREP_RULES = ("rho", "selected", "max")


def per_replication_r(sims: np.ndarray, rule: str, selected: str = "rho") -> np.ndarray:
    """Per-replication reactiveness r_m, floored at 0.

    ``rho``: c_m(rho); ``selected``: the component (rho, 0 or 1) that wins
    the aggregate maximum; ``max``: the largest of the three for each m.
    """
    if rule == "rho":
        r_m = sims[:, 0]
    elif rule == "selected":
        r_m = sims[:, {"rho": 0, "0": 1, "1": 2}[selected]]
    elif rule == "max":
        r_m = np.max(sims[:, :3], axis=1)
    else:
        raise ValueError(f"unknown per-replication rule {rule!r}")
    return np.maximum(0.0, r_m)


def _report(design, n, n_half, sims, variant, mode, delta, global_mode, perrep_rule="rho") -> MetricReport:
    if not design.adaptive:
        # boundary components only guard against adaptive rules sticking at 0 or 1
        sims = sims.copy()
        sims[:, 1:3] = 0.0
    c_rho, c_0, c_1, eps, deltas = sims[:, 0], sims[:, 1], sims[:, 2], sims[:, 3], sims[:, 4]
    n_sim = len(sims)
    means = {"rho": c_rho.mean(), "0": c_0.mean(), "1": c_1.mean()}
    best = max(means, key=lambda k: means[k])
    r = max(0.0, means[best])
    chosen = {"rho": c_rho, "0": c_0, "1": c_1}[best]
    eps_rho = float(eps.mean())
    budget = burnin_budget(n, n_half)
    ci = {
        "r_tilde_rho": _ci(c_rho),
        "r_tilde_0": _ci(c_0),
        "r_tilde_1": _ci(c_1),
        "r": _ci(chosen) if means[best] > 0 else 0.0,
        "eps_rho": _ci(eps),
        "risk": _ci(chosen + eps) if means[best] > 0 else _ci(eps),
    }
    notes = []
    if design.placeholder:
        notes.append(f"{design.label}: score-test target not configured; Wald counterpart used")
    if not design.adaptive:
        b = 2
        ci.update(b=0.0, BP=0.0)
        BP = 2 * b / n
        report_delta = float(np.median(deltas)) if global_mode else delta
    elif mode == "perrep":
        r_m = per_replication_r(sims, perrep_rule, best)
        risk_m = np.minimum(r_m + eps, 1.0)
        d_m = deltas if global_mode else np.full(n_sim, delta)
        raw = np.array([burnin_formula_raw(n, n_half, rk, dm) for rk, dm in zip(risk_m, d_m)])
        b_m = np.minimum(np.maximum(2, np.floor(raw)), n // 2)
        b = int(round(b_m.mean()))
        BP = float((2 * b_m / n).mean())
        ci.update(b=_ci(b_m), BP=_ci(2 * b_m / n))
        report_delta = float(np.median(d_m)) if global_mode else delta
    else:
        report_delta = float(np.median(deltas)) if global_mode else delta
        risk = r + eps_rho
        b = burnin_formula(n, n_half, risk, report_delta)
        lo = burnin_formula(n, n_half, max(0.0, risk - ci["risk"]), report_delta)
        hi = burnin_formula(n, n_half, min(1.0, risk + ci["risk"]), report_delta)
        BP = 2 * b / n
        ci.update(b=(hi - lo) / 2, BP=(hi - lo) / n)
        if global_mode:
            notes.append("plug-in b in global mode uses the median sampled delta")
    return MetricReport(
        design=design.label,
        n=n,
        n_half=n_half,
        r_tilde_rho=float(means["rho"]),
        r_tilde_0=float(means["0"]),
        r_tilde_1=float(means["1"]),
        r=float(r),
        eps_rho=eps_rho,
        delta=report_delta,
        budget=budget,
        b=b,
        BP=BP,
        n_sim=n_sim,
        mode=mode,
        variant=variant,
        adaptive=design.adaptive,
        ci_radii=ci,
        notes=notes,
    )


def reactiveness_global(design: DesignSpec, n: int, n_sim: int, seed: int, n_half: float = 1000.0,
                        variant: str = "rss", mode: str = "perrep", workers: int = 1,
                        perrep_rule: str = "rho") -> MetricReport:
    """Reactiveness and allocation error averaged over (p0, p1) ~ U([0,1]^2).

    In ``perrep`` mode the burn-in is the rounded mean of per-replication
    recommendations, each using that replication's own sampled delta.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    sims = map_replications(_metric_block, n_sim, workers, design=design, n=n, n_half=n_half,
                            seed=seed, variant=variant)
    return _report(design, n, n_half, sims, variant, mode, None, True, perrep_rule)


def reactiveness_scenario(design: DesignSpec, scenario: TrialScenario, n_sim: int, seed: int,
                          variant: str = "rss", mode: str = "perrep", workers: int = 1,
                          perrep_rule: str = "rho") -> MetricReport:
    """Reactiveness and allocation error at the planned (p0, p1, n)."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    delta = standardized_effect(scenario.p0, scenario.p1, variant)
    sims = map_replications(_metric_block, n_sim, workers, design=design, n=scenario.n,
                            n_half=scenario.n_half, seed=seed, variant=variant,
                            p0=scenario.p0, p1=scenario.p1)
    return _report(design, scenario.n, scenario.n_half, sims, variant, mode, delta, False, perrep_rule)


def recommend_burnin(scenario: TrialScenario, r: float, eps: float, delta: float) -> int:
    """Plug-in burn-in recommendation for known (r, eps, delta)."""
    return burnin_formula(scenario.n, scenario.n_half, r + eps, delta)
