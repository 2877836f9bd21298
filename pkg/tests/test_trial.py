import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from burnin.designs import DESIGN_NAMES, make_design
from burnin.rng import NS_ALTERNATIVE, NS_NULL, RngStream
from burnin.trial import (
    BurnInPlan,
    InvalidBurnInError,
    InvalidScenarioError,
    TrialPath,
    TrialScenario,
    draw_randomness,
    make_burnin_schedule,
    simulate_trial,
)


def test_rng_streams_are_distinct_and_repeatable():
    a = RngStream(7, 3).generator().random(4)
    assert np.array_equal(a, RngStream(7, 3).generator().random(4))
    assert not np.array_equal(a, RngStream(7, 4).generator().random(4))
    assert not np.array_equal(
        RngStream(7, 3, NS_ALTERNATIVE).generator().random(4), RngStream(7, 3, NS_NULL).generator().random(4)
    )
    assert RngStream(7).child(5) == RngStream(7, 5)
    with pytest.raises(ValueError):
        RngStream(-1)


def test_scenario_validation():
    with pytest.raises(InvalidScenarioError):
        TrialScenario(1.2, 0.3, 10)
    with pytest.raises(InvalidScenarioError):
        TrialScenario(0.2, 0.3, 3)
    with pytest.raises(InvalidScenarioError):
        TrialScenario(0.2, 0.3, 10, alpha=0)


def test_burnin_plan():
    plan = make_burnin_schedule(5, np.random.default_rng(0))
    assert plan.schedule.sum() == 5 and len(plan.schedule) == 10
    with pytest.raises(InvalidBurnInError):
        BurnInPlan(1, np.array([0, 1]))
    with pytest.raises(InvalidBurnInError):
        BurnInPlan(2, np.array([0, 0, 0, 1]))


def test_infeasible_burnin():
    sc = TrialScenario(0.2, 0.4, 20)
    with pytest.raises(InvalidBurnInError):
        simulate_trial(sc, make_design("pbb"), 11, RngStream(1))
    with pytest.raises(InvalidBurnInError):
        simulate_trial(sc, make_design("pbb"), 1, RngStream(1))
    with pytest.raises(InvalidScenarioError):
        simulate_trial(TrialScenario(0.2, 0.4, 21), make_design("er"), 2, RngStream(1))


def test_path_accessors():
    p = TrialPath(np.array([0, 1, 1, 0, 1], np.int8), np.array([1, 1, 0, 0, 1], np.int8))
    assert p.alloc_counts == (2, 3)
    assert p.successes == (1, 2)
    assert list(p.running_n1) == [0, 1, 2, 2, 3]


@pytest.mark.parametrize("key", DESIGN_NAMES)
@pytest.mark.parametrize("scenario", [(0.12, 0.37, 86), (0.941, 0.991, 60), (0.5, 0.5, 40), (0.0, 1.0, 30)])
def test_kernel_matches_reference_loop(key, scenario):
    sc = TrialScenario(*scenario)
    d = make_design(key)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for m in range(15):
            b = 2 + m % 5
            k = simulate_trial(sc, d, b, RngStream(99, m), engine="kernel")
            p = simulate_trial(sc, d, b, RngStream(99, m), engine="python")
            assert np.array_equal(k.assignments, p.assignments)
            assert np.array_equal(k.outcomes, p.outcomes)


def test_kernel_refuses_python_only_design():
    d = make_design("n0", rho_fn=lambda p0, p1: 0.6)
    with pytest.raises(ValueError):
        simulate_trial(TrialScenario(0.2, 0.4, 20), d, 2, RngStream(1), engine="kernel")
    path = simulate_trial(TrialScenario(0.2, 0.4, 20), d, 2, RngStream(1))
    assert path.n == 20


def test_ptw_hand_trace():
    # deterministic outcomes: arm 1 always succeeds, arm 0 always fails,
    # so after the burn-in PTW locks onto arm 1
    sc = TrialScenario(0.0, 1.0, 30)
    for m in range(10):
        path = simulate_trial(sc, make_design("ptw"), 3, RngStream(5, m))
        assert path.assignments[6:].sum() == 24
    # reversed: arm 0 always succeeds
    sc = TrialScenario(1.0, 0.0, 30)
    for m in range(10):
        path = simulate_trial(sc, make_design("ptw"), 3, RngStream(5, m))
        assert path.assignments[6:].sum() == 0


def test_ptw_follows_last_outcome():
    sc = TrialScenario(0.3, 0.6, 200)
    path = simulate_trial(sc, make_design("ptw"), 2, RngStream(11))
    a, y = path.assignments, path.outcomes
    for t in range(4, 200):
        expect = a[t - 1] if y[t - 1] == 1 else 1 - a[t - 1]
        assert a[t] == expect


def test_pbb_goes_to_better_arm():
    path = simulate_trial(TrialScenario(0.3, 0.6, 50), make_design("pbb"), 4, RngStream(2))
    assert path.assignments[8:].all()
    path = simulate_trial(TrialScenario(0.6, 0.3, 50), make_design("pbb"), 4, RngStream(2))
    assert not path.assignments[8:].any()


def test_draws_consumed_in_fixed_order():
    plan, ua, uo = draw_randomness(10, 2, RngStream(3))
    gen = RngStream(3).generator()
    gen.permutation(np.repeat(np.array([0, 1], np.int8), 2))
    assert np.array_equal(ua, gen.random(10))
    assert np.array_equal(uo, gen.random(10))


@given(
    p0=st.floats(0, 1), p1=st.floats(0, 1), half=st.integers(2, 40),
    b=st.integers(2, 10), key=st.sampled_from(DESIGN_NAMES), seed=st.integers(0, 10**9),
)
def test_counts_and_balance(p0, p1, half, b, key, seed):
    n = 2 * half
    b = min(b, half)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        path = simulate_trial(TrialScenario(p0, p1, n), make_design(key), b, RngStream(seed))
    assert path.assignments[: 2 * b].sum() == b
    n0, n1 = path.alloc_counts
    assert n0 + n1 == n
    S0, S1 = path.successes
    assert 0 <= S0 <= n0 and 0 <= S1 <= n1
    if key == "er":
        assert n0 == n1
    if p0 == 0.0:
        assert S0 == 0
    if p1 == 1.0:
        assert S1 == n1
