"""The ten allocation rules and their building blocks.

Scalar rules are numba-compiled so the trial kernel can call them; they are
equally callable from Python.
"""

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
from numba import njit
from scipy import integrate, stats

KINDS = ("ER", "PBB", "BRAR_U", "BRAR_T", "ERADE_TARGET", "PTW", "RPTW")
KIND_CODE = {k: i for i, k in enumerate(KINDS)}

TARGET_IDS = ("NEYMAN_WALD", "RSHIR_WALD", "NEYMAN_SCORE", "RSHIR_SCORE", "CUSTOM")
ESTIMATORS = ("mle", "half")


class ConfigurationError(ValueError):
    pass


class PlaceholderTargetWarning(UserWarning):
    """A score-test target is running on its Wald stand-in."""


# --- scalar rules ---------------------------------------------------------


@njit(cache=True)
def _log_beta(a, b):
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


@njit(cache=True)
def _prob_b_beats_a(alpha_a, beta_a, alpha_b, beta_b):
    # P(X_B > X_A) for X_A ~ Beta(alpha_a, beta_a), X_B ~ Beta(alpha_b, beta_b);
    # alpha_b must be a positive integer. All terms are positive.
    total = 0.0
    lb_a = _log_beta(alpha_a, beta_a)
    for i in range(int(alpha_b)):
        total += math.exp(
            _log_beta(alpha_a + i, beta_a + beta_b)
            - math.log(beta_b + i)
            - _log_beta(1.0 + i, beta_b)
            - lb_a
        )
    return total


@njit(cache=True)
def thompson_prob_beta(a0, b0, a1, b1):
    """P(P1 > P0) for P0 ~ Beta(a0, b0), P1 ~ Beta(a1, b1), integer parameters.

    Picks whichever of four equivalent finite sums has the fewest terms.
    """
    m = min(a0, b0, a1, b1)
    if m == a1:
        p = _prob_b_beats_a(a0, b0, a1, b1)
    elif m == a0:
        p = 1.0 - _prob_b_beats_a(a1, b1, a0, b0)
    elif m == b0:
        # 1 - P0 ~ Beta(b0, a0) beats 1 - P1 ~ Beta(b1, a1)
        p = _prob_b_beats_a(b1, a1, b0, a0)
    else:
        p = 1.0 - _prob_b_beats_a(b0, a0, b1, a1)
    return min(1.0, max(0.0, p))


def _thompson_quad(a0, b0, a1, b1):
    # P(P1 > P0) = E[F0(P1)] integrated over the density of P1
    f = lambda x: stats.beta.pdf(x, a1, b1) * stats.beta.cdf(x, a0, b0)
    val, _ = integrate.quad(f, 0.0, 1.0, epsabs=1e-12, epsrel=1e-12, limit=200)
    return float(min(1.0, max(0.0, val)))


def _is_integral(x) -> bool:
    return float(x).is_integer()


def thompson_prob(S0, n0, S1, n1, prior=(1.0, 1.0, 1.0, 1.0)) -> float:
    """Posterior probability that arm 1 has the higher response rate.

    ``prior`` is (a0, b0, a1, b1) for independent Beta priors. Integer
    posteriors use an exact finite sum; anything else falls back to
    adaptive quadrature.
    """
    if not (0 <= S0 <= n0 and 0 <= S1 <= n1):
        raise ValueError("successes must lie in [0, n_k]")
    a0, b0, a1, b1 = prior
    post = (a0 + S0, b0 + n0 - S0, a1 + S1, b1 + n1 - S1)
    if all(_is_integral(v) for v in post):
        return float(thompson_prob_beta(*(float(v) for v in post)))
    return _thompson_quad(*post)


@njit(cache=True)
def brar_tuned_prob(posterior_superiority, patient_index, n, gamma=0.5):
    c = gamma * patient_index / n
    num = posterior_superiority**c
    den = num + (1.0 - posterior_superiority) ** c
    return num / den


@njit(cache=True)
def erade_prob(target_rho, current_prop, alpha):
    if current_prop > target_rho:
        return alpha * target_rho
    if current_prop < target_rho:
        return 1.0 - alpha * (1.0 - target_rho)
    return target_rho


@njit(cache=True)
def target_neyman_wald(p0, p1):
    s0 = math.sqrt(p0 * (1.0 - p0))
    s1 = math.sqrt(p1 * (1.0 - p1))
    if s0 + s1 == 0.0:
        return 0.5
    return s1 / (s0 + s1)


@njit(cache=True)
def target_rshir_wald(p0, p1):
    r0 = math.sqrt(p0)
    r1 = math.sqrt(p1)
    if r0 + r1 == 0.0:
        return 0.5
    return r1 / (r0 + r1)


@njit(cache=True)
def ptw_next(last_arm, last_outcome):
    if last_outcome == 1:
        return last_arm
    return 1 - last_arm


@njit(cache=True)
def shrink_estimate(successes, count, estimator_code):
    if estimator_code == 1:
        return (successes + 0.5) / (count + 1.0)
    if count == 0:
        return 0.5
    return successes / count


# --- allocation targets ---------------------------------------------------


def target_score_placeholder(kind: str) -> Callable[[float, float], float]:
    """Stand-in for the score-test targets: returns the Wald counterpart."""
    if kind == "NEYMAN_SCORE":
        return target_neyman_wald
    if kind == "RSHIR_SCORE":
        return target_rshir_wald
    raise ValueError(kind)


@dataclass(frozen=True)
class AllocationTarget:
    id: str
    rho_fn: Optional[Callable[[float, float], float]] = None
    estimator: str = "mle"

    def __post_init__(self):
        if self.id not in TARGET_IDS:
            raise ConfigurationError(f"unknown target id {self.id!r}")
        if self.estimator not in ESTIMATORS:
            raise ConfigurationError(f"unknown estimator {self.estimator!r}")
        if self.id == "CUSTOM" and self.rho_fn is None:
            raise ConfigurationError("CUSTOM target needs rho_fn")

    @property
    def is_placeholder(self) -> bool:
        return self.id in ("NEYMAN_SCORE", "RSHIR_SCORE") and self.rho_fn is None

    @property
    def kernel_code(self) -> int:
        """0 = Neyman (Wald), 1 = RSHIR (Wald), -1 = needs the Python path."""
        if self.rho_fn is not None:
            return -1
        return 0 if self.id in ("NEYMAN_WALD", "NEYMAN_SCORE") else 1

    def rho(self, p0: float, p1: float) -> float:
        if self.rho_fn is not None:
            return float(self.rho_fn(p0, p1))
        if self.is_placeholder:
            warnings.warn(
                f"{self.id} has no configured rho_fn; using its Wald counterpart",
                PlaceholderTargetWarning,
                stacklevel=2,
            )
        if self.kernel_code == 0:
            return float(target_neyman_wald(p0, p1))
        return float(target_rshir_wald(p0, p1))

    def estimate(self, S0, n0, S1, n1) -> float:
        code = ESTIMATORS.index(self.estimator)
        return self.rho(shrink_estimate(S0, n0, code), shrink_estimate(S1, n1, code))


# --- urn ------------------------------------------------------------------


@dataclass(frozen=True)
class UrnState:
    balls: tuple = (1, 1)

    def __post_init__(self):
        if min(self.balls) < 1:
            raise ValueError("urn counts must be >= 1")

    @property
    def prob_arm1(self) -> float:
        return self.balls[1] / (self.balls[0] + self.balls[1])


def rptw_step(urn: UrnState, rng: np.random.Generator) -> int:
    return int(rng.random() < urn.prob_arm1)


def rptw_update(urn: UrnState, arm: int, outcome: int) -> UrnState:
    added = arm if outcome == 1 else 1 - arm
    balls = list(urn.balls)
    balls[added] += 1
    return UrnState(tuple(balls))


# --- design specification -------------------------------------------------


@dataclass(frozen=True)
class DesignSpec:
    kind: str
    target: Optional[AllocationTarget] = None
    erade_alpha: float = 0.5
    # None: c(i) = i/(2n); a float g: c(i) = g*i/n; a callable: c(i, n)
    tuning: object = None
    prior: tuple = (1.0, 1.0, 1.0, 1.0)
    rptw_burnin_update: bool = True
    label: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigurationError(f"unknown design kind {self.kind!r}")
        if self.kind == "ERADE_TARGET" and self.target is None:
            raise ConfigurationError("ERADE_TARGET designs need a target")
        if min(self.prior) <= 0:
            raise ConfigurationError("prior parameters must be positive")
        if not 0.0 <= self.erade_alpha < 1.0:
            raise ConfigurationError("erade_alpha must lie in [0, 1)")
        if not self.label:
            object.__setattr__(self, "label", self.kind)

    @property
    def adaptive(self) -> bool:
        return self.kind != "ER"

    @property
    def tests(self) -> tuple:
        """Final-analysis tests reported for this design ('z1' Wald, 'z0' score)."""
        if self.target is not None:
            return ("z0",) if self.target.id in ("NEYMAN_SCORE", "RSHIR_SCORE") else ("z1",)
        return ("z1", "z0")

    @property
    def tuning_gamma(self) -> float:
        if self.tuning is None:
            return 0.5
        if callable(self.tuning):
            return math.nan
        return float(self.tuning)

    @property
    def kernel_ok(self) -> bool:
        """True if the compiled trial kernel can run this design."""
        if callable(self.tuning):
            return False
        if self.target is not None and self.target.kernel_code < 0:
            return False
        if self.kind in ("BRAR_U", "BRAR_T") and not all(_is_integral(v) for v in self.prior):
            return False
        return True

    @property
    def placeholder(self) -> bool:
        return self.target is not None and self.target.is_placeholder

    def with_target_fn(self, rho_fn) -> "DesignSpec":
        return replace(self, target=replace(self.target, rho_fn=rho_fn))

    def tuning_exponent(self, i: int, n: int) -> float:
        if callable(self.tuning):
            return float(self.tuning(i, n))
        return self.tuning_gamma * i / n

    def limit_rho(self, p0: float, p1: float) -> float:
        """Limiting proportion on arm 1 under true rates (p0, p1)."""
        if self.kind == "ER":
            return 0.5
        if self.kind == "PBB":
            return 1.0 if p1 >= p0 else 0.0
        if self.kind in ("BRAR_U", "BRAR_T"):
            if p1 == p0:
                return 0.5
            return 1.0 if p1 > p0 else 0.0
        if self.kind in ("PTW", "RPTW"):
            q0, q1 = 1.0 - p0, 1.0 - p1
            if q0 + q1 == 0.0:
                return 0.5
            return q0 / (q0 + q1)
        return self.target.rho(p0, p1)


DESIGN_NAMES = ("er", "pbb", "brar-u", "brar-t", "n0", "n1", "r0", "r1", "ptw", "rpw")
_ALIASES = {"rptw": "rpw", "brar_u": "brar-u", "brar_t": "brar-t"}
DISPLAY_LABELS = {
    "er": "ER",
    "pbb": "PBB",
    "brar-u": "BRAR (U)",
    "brar-t": "BRAR (T)",
    "n0": "N0",
    "n1": "N1",
    "r0": "R0",
    "r1": "R1",
    "ptw": "PTW",
    "rpw": "RPW",
}


def make_design(name: str, rho_fn=None, estimator: str = "mle", **kwargs) -> DesignSpec:
    """Build one of the ten designs by its short name (``er``, ``brar-t``, ``n1`` ...)."""
    key = _ALIASES.get(name.lower(), name.lower())
    label = DISPLAY_LABELS.get(key)
    if key == "er":
        return DesignSpec("ER", label=label, **kwargs)
    if key == "pbb":
        return DesignSpec("PBB", label=label, **kwargs)
    if key == "brar-u":
        return DesignSpec("BRAR_U", label=label, **kwargs)
    if key == "brar-t":
        return DesignSpec("BRAR_T", label=label, **kwargs)
    if key == "ptw":
        return DesignSpec("PTW", label=label, **kwargs)
    if key == "rpw":
        return DesignSpec("RPTW", label=label, **kwargs)
    target_id = {"n1": "NEYMAN_WALD", "r1": "RSHIR_WALD", "n0": "NEYMAN_SCORE", "r0": "RSHIR_SCORE"}.get(key)
    if target_id is None:
        raise ConfigurationError(f"unknown design {name!r}")
    target = AllocationTarget(target_id, rho_fn=rho_fn, estimator=estimator)
    return DesignSpec("ERADE_TARGET", target=target, label=label, **kwargs)


def design_key(design: DesignSpec) -> str:
    for key, label in DISPLAY_LABELS.items():
        if label == design.label:
            return key
    return design.label.lower()


# --- dispatcher (reference path) ------------------------------------------


def alloc_prob(design: DesignSpec, assignments, outcomes, scenario, patient_index: int, b: int) -> float:
    """P(patient ``patient_index`` (1-based) goes to arm 1) given the history.

    ``assignments``/``outcomes`` hold the first ``patient_index - 1`` patients.
    """
    i = patient_index
    a = np.asarray(assignments[: i - 1], dtype=np.int64)
    y = np.asarray(outcomes[: i - 1], dtype=np.int64)
    n1 = int(a.sum())
    n0 = (i - 1) - n1
    S1 = int((a * y).sum())
    S0 = int(y.sum()) - S1
    kind = design.kind
    if kind == "ER":
        return (scenario.n // 2 - n1) / (scenario.n - (i - 1))
    if kind == "PBB":
        return 1.0 if scenario.p1 >= scenario.p0 else 0.0
    if kind == "BRAR_U":
        return thompson_prob(S0, n0, S1, n1, design.prior)
    if kind == "BRAR_T":
        pi = thompson_prob(S0, n0, S1, n1, design.prior)
        c = design.tuning_exponent(i, scenario.n)
        num = pi**c
        return num / (num + (1.0 - pi) ** c)
    if kind == "ERADE_TARGET":
        rho_hat = design.target.estimate(S0, n0, S1, n1)
        return float(erade_prob(rho_hat, n1 / (i - 1), design.erade_alpha))
    if kind == "PTW":
        return float(ptw_next(int(a[-1]), int(y[-1])))
    if kind == "RPTW":
        urn = UrnState()
        start = 0 if design.rptw_burnin_update else 2 * b
        for arm, out in zip(a[start:], y[start:]):
            urn = rptw_update(urn, int(arm), int(out))
        return urn.prob_arm1
    raise ConfigurationError(f"unknown design kind {kind!r}")
