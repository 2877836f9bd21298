import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from burnin.designs import make_design
from burnin.metrics import (
    BurnInWarning,
    UndefinedEffectError,
    allocation_error,
    burnin_budget,
    burnin_formula,
    burnin_formula_raw,
    geometric_slope,
    per_replication_r,
    reactiveness_global,
    reactiveness_scenario,
    recommend_burnin,
    standardized_effect,
)
from burnin.trial import TrialScenario

probs = st.floats(0, 1)


def test_delta_edge_cases():
    assert standardized_effect(0.0, 1.0) == math.inf
    assert standardized_effect(0.4, 0.4) == 0.0
    with pytest.raises(UndefinedEffectError):
        standardized_effect(1.0, 1.0, "ssd")
    with pytest.raises(ValueError):
        standardized_effect(0.2, 0.3, "abs")
    assert standardized_effect(0.5, 1.0) == pytest.approx(1.0)


@given(probs, probs)
def test_delta_variants_ordered(p0, p1):
    if p0 == p1 and p0 in (0.0, 1.0):
        return
    rss, ssd = standardized_effect(p0, p1, "rss"), standardized_effect(p0, p1, "ssd")
    # sqrt(a+b) <= sqrt(a)+sqrt(b)
    assert ssd <= rss + 1e-12
    assert standardized_effect(p1, p0) == pytest.approx(rss)


@given(st.floats(0.5, 1), st.floats(0, 1))
def test_delta_at_most_one_when_control_is_half(_, p1):
    assert standardized_effect(0.5, p1) <= 1.0 + 1e-12


def test_budget_limits():
    assert burnin_budget(1000, 1000) == 500
    assert burnin_budget(86, 10000) == pytest.approx(85.27, abs=0.01)


def test_formula_examples():
    assert burnin_formula(86, 10000, 0.0668, 0.3095) == 18
    assert burnin_formula(86, 10000, 0.0, 0.3) == 2
    assert burnin_formula(1000, 1000, 0.3, 0.0) == 250
    # zero exponent wins over zero base
    assert burnin_formula(1000, 1000, 0.0, 0.0) == 250
    assert burnin_formula(100, 1000, 0.5, math.inf) == 2
    assert recommend_burnin(TrialScenario(0.12, 0.37, 86, 10000), 0.06, 0.0068, 0.3095) == 18


def test_formula_warnings():
    with pytest.warns(BurnInWarning):
        b = burnin_formula(86, 1000, 1.3, 0.2)
    assert b == burnin_formula(86, 1000, 1.0, 0.2)
    with pytest.raises(ValueError):
        burnin_formula(86, 1000, -0.1, 0.2)


@given(n=st.integers(4, 5000), nh=st.floats(1, 1e5), risk=st.floats(0, 1), delta=st.floats(0, 10))
def test_formula_bounds(n, nh, risk, delta):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        b = burnin_formula(n, nh, risk, delta)
    assert 2 <= b <= max(2, n // 2)


@given(n=st.integers(4, 3000), risk=st.floats(0, 0.99), d1=st.floats(0, 5), d2=st.floats(0, 5))
def test_formula_monotone_in_delta(n, risk, d1, d2):
    lo, hi = sorted((d1, d2))
    assert burnin_formula_raw(n, 1000, risk, hi) <= burnin_formula_raw(n, 1000, risk, lo) + 1e-9


@given(n=st.integers(4, 3000), r1=st.floats(0, 1), r2=st.floats(0, 1), d=st.floats(0, 5))
def test_formula_monotone_in_risk(n, r1, r2, d):
    lo, hi = sorted((r1, r2))
    assert burnin_formula_raw(n, 1000, lo, d) <= burnin_formula_raw(n, 1000, hi, d) + 1e-9


def test_eps_fixtures_and_mirror():
    assert allocation_error(0.7, 0.6) == pytest.approx(0.1)
    assert allocation_error(0.3, 0.6) == pytest.approx(0.2)
    assert allocation_error(0.55, 0.6) == 0.0
    assert allocation_error(0.3, 0.4) == pytest.approx(0.1)
    assert allocation_error(0.6, 0.4) == pytest.approx(0.1)
    assert allocation_error(0.0, 0.0) == 0.0
    assert allocation_error(0.5, 0.5) == 0.0


@given(st.floats(0, 1), st.floats(0, 1))
def test_eps_zero_iff_in_interval(prop, rho):
    lo, hi = sorted((0.5, rho))
    inside = lo <= prop <= hi
    assert (allocation_error(prop, rho) == 0.0) == inside
    assert allocation_error(prop, rho) >= 0


def test_geometric_slope_perfect_and_stuck():
    n = 100
    # always arm 1 -> fastest approach to rho = 1
    fast = geometric_slope(np.arange(1, n + 1), 1.0)
    half = geometric_slope(np.arange(1, n + 1) // 2, 1.0)
    assert fast > 0.5 and half < 0.1
    assert geometric_slope(np.arange(1, n + 1), 0.5) == 0.0
    assert geometric_slope(np.zeros(n), 1.0) < 0


def test_perrep_rules():
    sims = np.array([[0.1, -0.2, 0.3, 0, 0, 0], [-0.1, 0.4, 0.0, 0, 0, 0]])
    assert list(per_replication_r(sims, "rho")) == [0.1, 0.0]
    assert list(per_replication_r(sims, "max")) == [0.3, 0.4]
    assert list(per_replication_r(sims, "selected", "0")) == [0.0, 0.4]
    with pytest.raises(ValueError):
        per_replication_r(sims, "median")


def test_er_report_is_zero():
    rep = reactiveness_global(make_design("er"), 200, 300, 1)
    assert rep.r == 0 and rep.b == 2 and rep.eps_rho == 0
    assert rep.row()["b"] is None


def test_scenario_report_fields():
    sc = TrialScenario(0.12, 0.37, 86, 1000)
    rep = reactiveness_scenario(make_design("brar-u"), sc, 200, 3, variant="ssd")
    assert rep.delta == pytest.approx(0.3095, abs=5e-4)
    assert rep.r >= 0 and 0 <= rep.eps_rho <= 0.5
    assert 2 <= rep.b <= 43
    assert rep.ci_radii["b"] >= 0
    plug = reactiveness_scenario(make_design("brar-u"), sc, 200, 3, variant="ssd", mode="plugin")
    assert plug.r == rep.r
    assert plug.b == burnin_formula(86, 1000, plug.r + plug.eps_rho, plug.delta)


def test_metric_ci_shrinks_with_nsim():
    sc = TrialScenario(0.12, 0.37, 86, 1000)
    d = make_design("brar-u")
    small = reactiveness_scenario(d, sc, 250, 8).ci_radii["r_tilde_rho"]
    big = reactiveness_scenario(d, sc, 1000, 8).ci_radii["r_tilde_rho"]
    assert big == pytest.approx(small / 2, rel=0.2)


def test_bad_mode():
    with pytest.raises(ValueError):
        reactiveness_global(make_design("pbb"), 50, 10, 1, mode="median")
