"""Final-analysis tests and per-trial operating-characteristic contributions."""

import math
from dataclasses import dataclass, field
from statistics import NormalDist

import numpy as np


class DegenerateArmError(ValueError):
    pass


def critical_value(alpha: float = 0.05) -> float:
    return NormalDist().inv_cdf(1.0 - alpha / 2.0)


def _check(n0, n1):
    if n0 < 1 or n1 < 1:
        raise DegenerateArmError("both arms need at least one patient")


def wald_z(S0, n0, S1, n1) -> float:
    """Unpooled Wald statistic; nan when undefined, +-inf for a certain difference."""
    _check(n0, n1)
    p0, p1 = S0 / n0, S1 / n1
    var = p0 * (1 - p0) / n0 + p1 * (1 - p1) / n1
    diff = p1 - p0
    if var == 0.0:
        if diff == 0.0:
            return math.nan
        return math.copysign(math.inf, diff)
    return diff / math.sqrt(var)


def score_z(S0, n0, S1, n1) -> float:
    """Pooled score statistic; nan when the pooled rate is 0 or 1."""
    _check(n0, n1)
    pbar = (S0 + S1) / (n0 + n1)
    var = pbar * (1 - pbar) * (1 / n0 + 1 / n1)
    if var == 0.0:
        return math.nan
    return (S1 / n1 - S0 / n0) / math.sqrt(var)


@dataclass(frozen=True)
class TestResult:
    z1: float
    z0: float
    critical: float

    __test__ = False  # not a pytest class

    @property
    def reject1(self) -> bool:
        return not math.isnan(self.z1) and abs(self.z1) > self.critical

    @property
    def reject0(self) -> bool:
        return not math.isnan(self.z0) and abs(self.z0) > self.critical


def run_tests(S0, n0, S1, n1, alpha: float = 0.05) -> TestResult:
    return TestResult(wald_z(S0, n0, S1, n1), score_z(S0, n0, S1, n1), critical_value(alpha))


# per-trial record columns
CONTRIB_FIELDS = ("reject1", "reject0", "prop_arm1", "prop_best", "sq_error")


def trial_contributions(path, scenario) -> np.ndarray:
    """(reject Z1, reject Z0, n1/n, share on the better arm, (dhat - d)^2) for one trial."""
    n0, n1 = path.alloc_counts
    S0, S1 = path.successes
    res = run_tests(S0, n0, S1, n1, scenario.alpha)
    n = n0 + n1
    best = n1 if scenario.p1 > scenario.p0 else n0
    dhat = S1 / n1 - S0 / n0
    err = (dhat - (scenario.p1 - scenario.p0)) ** 2
    return np.array([res.reject1, res.reject0, n1 / n, best / n, err], dtype=np.float64)


def _mean_se(x):
    x = np.asarray(x, dtype=np.float64)
    se = float(x.std(ddof=1) / math.sqrt(len(x))) if len(x) > 1 else 0.0
    return float(x.mean()), se


@dataclass
class OperatingCharacteristics:
    type1_z1: float
    type1_z0: float
    power_z1: float
    power_z0: float
    mean_prop_arm1: float
    patient_benefit: float
    mse: float
    n_sim: int
    se: dict = field(default_factory=dict)

    @classmethod
    def from_contributions(cls, alt: np.ndarray, null: np.ndarray) -> "OperatingCharacteristics":
        vals, se = {}, {}
        for name, arr, col in (
            ("type1_z1", null, 0),
            ("type1_z0", null, 1),
            ("power_z1", alt, 0),
            ("power_z0", alt, 1),
            ("mean_prop_arm1", alt, 2),
            ("patient_benefit", alt, 3),
            ("mse", alt, 4),
        ):
            vals[name], se[name] = _mean_se(arr[:, col])
        return cls(n_sim=len(alt), se=se, **vals)
