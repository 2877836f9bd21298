"""Trial data model and the sequential trial engine.

A trial runs a balanced, order-randomized burn-in of ``b`` patients per arm,
then allocates each further patient from the design's rule evaluated on all
data accrued so far. Every random quantity is drawn up front from the
replication's stream (burn-in permutation, one allocation uniform and one
outcome uniform per patient), so the compiled kernel and the Python
reference loop consume identical randomness.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from burnin.designs import (
    KIND_CODE,
    DesignSpec,
    alloc_prob,
    erade_prob,
    ptw_next,
    shrink_estimate,
    target_neyman_wald,
    target_rshir_wald,
    thompson_prob_beta,
)
from burnin.rng import RngStream


class InvalidBurnInError(ValueError):
    pass


class InvalidScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class TrialScenario:
    p0: float
    p1: float
    n: int
    n_half: float = 1000.0
    alpha: float = 0.05

    def __post_init__(self):
        for name in ("p0", "p1"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise InvalidScenarioError(f"{name} must lie in [0, 1], got {v}")
        if int(self.n) != self.n or self.n < 4:
            raise InvalidScenarioError(f"n must be an integer >= 4, got {self.n}")
        if self.n_half < 1:
            raise InvalidScenarioError("n_half must be >= 1")
        if not 0.0 < self.alpha < 1.0:
            raise InvalidScenarioError("alpha must lie in (0, 1)")


@dataclass(frozen=True)
class BurnInPlan:
    b: int
    schedule: np.ndarray

    def __post_init__(self):
        if self.b < 2:
            raise InvalidBurnInError(f"burn-in needs b >= 2, got {self.b}")
        s = np.asarray(self.schedule)
        if s.shape != (2 * self.b,) or int(s.sum()) != self.b or not np.isin(s, (0, 1)).all():
            raise InvalidBurnInError("schedule must hold b zeros and b ones")


@dataclass(frozen=True)
class TrialPath:
    assignments: np.ndarray
    outcomes: np.ndarray

    @property
    def n(self) -> int:
        return len(self.assignments)

    @property
    def running_n1(self) -> np.ndarray:
        return np.cumsum(self.assignments, dtype=np.int64)

    @property
    def alloc_counts(self) -> tuple:
        n1 = int(self.assignments.sum())
        return self.n - n1, n1

    @property
    def successes(self) -> tuple:
        S1 = int((self.assignments & self.outcomes).sum())
        return int(self.outcomes.sum()) - S1, S1


def make_burnin_schedule(b: int, rng) -> BurnInPlan:
    """Random allocation rule over the first 2b patients."""
    if b < 2:
        raise InvalidBurnInError(f"burn-in needs b >= 2, got {b}")
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    base = np.repeat(np.array([0, 1], dtype=np.int8), b)
    return BurnInPlan(b, gen.permutation(base))


def check_feasible(scenario: TrialScenario, design: DesignSpec, b: int):
    if b < 2:
        raise InvalidBurnInError(f"burn-in needs b >= 2, got {b}")
    if 2 * b > scenario.n:
        raise InvalidBurnInError(f"burn-in 2b = {2 * b} exceeds n = {scenario.n}")
    if design.kind == "ER" and scenario.n % 2:
        raise InvalidScenarioError("ER needs an even n for exact 1:1 balance")


@njit(cache=True)
def _run_kernel(kind, target_code, estimator_code, p0, p1, n, schedule, u_alloc, u_out,
                erade_alpha, gamma, prior, urn_burnin):
    b2 = schedule.shape[0]
    a = np.empty(n, np.int8)
    y = np.empty(n, np.int8)
    n1 = 0
    S0 = 0
    S1 = 0
    urn0 = 1
    urn1 = 1
    pbb_arm = 1 if p1 >= p0 else 0
    for t in range(n):
        i = t + 1
        if t < b2:
            arm = schedule[t]
        else:
            n0 = t - n1
            if kind == 0:  # ER
                prob = (n // 2 - n1) / (n - t)
            elif kind == 1:  # PBB
                prob = float(pbb_arm)
            elif kind == 2 or kind == 3:  # BRAR
                prob = thompson_prob_beta(prior[0] + S0, prior[1] + n0 - S0,
                                          prior[2] + S1, prior[3] + n1 - S1)
                if kind == 3:
                    c = gamma * i / n
                    num = prob**c
                    prob = num / (num + (1.0 - prob) ** c)
            elif kind == 4:  # ERADE towards a plug-in target
                q0 = shrink_estimate(S0, n0, estimator_code)
                q1 = shrink_estimate(S1, n1, estimator_code)
                if target_code == 0:
                    rho = target_neyman_wald(q0, q1)
                else:
                    rho = target_rshir_wald(q0, q1)
                prob = erade_prob(rho, n1 / t, erade_alpha)
            elif kind == 5:  # PTW
                prob = float(ptw_next(a[t - 1], y[t - 1]))
            else:  # RPTW
                prob = urn1 / (urn0 + urn1)
            arm = 1 if u_alloc[t] < prob else 0
        pk = p1 if arm == 1 else p0
        out = 1 if u_out[t] < pk else 0
        a[t] = arm
        y[t] = out
        if arm == 1:
            n1 += 1
            S1 += out
        else:
            S0 += out
        if kind == 6 and (urn_burnin or t >= b2):
            if (out == 1) == (arm == 1):
                urn1 += 1
            else:
                urn0 += 1
    return a, y


def draw_randomness(n: int, b: int, rng):
    """Burn-in schedule plus per-patient allocation and outcome uniforms."""
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    plan = make_burnin_schedule(b, gen)
    return plan, gen.random(n), gen.random(n)


def simulate_trial(scenario: TrialScenario, design: DesignSpec, b: int, rng, engine: str = "auto") -> TrialPath:
    """Simulate one trial with burn-in ``b`` per arm.

    ``engine`` is ``"auto"`` (compiled kernel when the design allows it),
    ``"kernel"`` or ``"python"`` (the reference loop).
    """
    check_feasible(scenario, design, b)
    plan, u_alloc, u_out = draw_randomness(scenario.n, b, rng)
    use_kernel = engine == "kernel" or (engine == "auto" and design.kernel_ok)
    if use_kernel:
        if not design.kernel_ok:
            raise ValueError(f"design {design.label} cannot run on the compiled kernel")
        return _simulate_kernel(scenario, design, plan, u_alloc, u_out)
    return _simulate_python(scenario, design, plan, u_alloc, u_out)


def _simulate_kernel(scenario, design, plan, u_alloc, u_out) -> TrialPath:
    target = design.target
    a, y = _run_kernel(
        KIND_CODE[design.kind],
        target.kernel_code if target is not None else 0,
        (0 if target.estimator == "mle" else 1) if target is not None else 0,
        float(scenario.p0),
        float(scenario.p1),
        int(scenario.n),
        plan.schedule,
        u_alloc,
        u_out,
        float(design.erade_alpha),
        float(design.tuning_gamma),
        np.asarray(design.prior, dtype=np.float64),
        bool(design.rptw_burnin_update),
    )
    return TrialPath(a, y)


def _simulate_python(scenario, design, plan, u_alloc, u_out) -> TrialPath:
    n = scenario.n
    b2 = 2 * plan.b
    a = np.zeros(n, np.int8)
    y = np.zeros(n, np.int8)
    for t in range(n):
        if t < b2:
            arm = int(plan.schedule[t])
        else:
            prob = alloc_prob(design, a, y, scenario, t + 1, plan.b)
            arm = 1 if u_alloc[t] < prob else 0
        pk = scenario.p1 if arm == 1 else scenario.p0
        a[t] = arm
        y[t] = 1 if u_out[t] < pk else 0
    return TrialPath(a, y)
