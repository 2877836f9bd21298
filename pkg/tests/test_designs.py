import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from burnin.designs import (
    DESIGN_NAMES,
    DISPLAY_LABELS,
    AllocationTarget,
    ConfigurationError,
    DesignSpec,
    PlaceholderTargetWarning,
    UrnState,
    _thompson_quad,
    brar_tuned_prob,
    design_key,
    erade_prob,
    make_design,
    ptw_next,
    rptw_update,
    shrink_estimate,
    target_neyman_wald,
    target_rshir_wald,
    thompson_prob,
)

counts = st.integers(0, 40).flatmap(lambda n: st.tuples(st.integers(0, n), st.just(n)))


def test_thompson_closed_form():
    assert thompson_prob(0, 1, 1, 1) == pytest.approx(5 / 6, abs=1e-12)
    assert thompson_prob(0, 0, 0, 0) == pytest.approx(0.5, abs=1e-12)


@given(counts, counts)
def test_thompson_matches_quadrature(a, b):
    (S0, n0), (S1, n1) = a, b
    exact = thompson_prob(S0, n0, S1, n1)
    quad = _thompson_quad(1 + S0, 1 + n0 - S0, 1 + S1, 1 + n1 - S1)
    assert exact == pytest.approx(quad, abs=1e-7)


@given(counts, counts)
def test_thompson_swap_symmetry(a, b):
    (S0, n0), (S1, n1) = a, b
    assert thompson_prob(S0, n0, S1, n1) + thompson_prob(S1, n1, S0, n0) == pytest.approx(1.0, abs=1e-9)


def test_thompson_fractional_prior_uses_quadrature():
    got = thompson_prob(2, 5, 3, 5, prior=(0.5, 0.5, 0.5, 0.5))
    assert got == pytest.approx(_thompson_quad(2.5, 3.5, 3.5, 2.5), abs=1e-12)
    assert 0.5 < got < 1


def test_thompson_rejects_bad_counts():
    with pytest.raises(ValueError):
        thompson_prob(3, 2, 0, 0)


def test_tuned_brar():
    assert brar_tuned_prob(0.75, 100, 100, 0.5) == pytest.approx(math.sqrt(3) / (math.sqrt(3) + 1))
    # c(n) = 1/2 at the end; c -> 0 early pulls towards 1/2
    assert brar_tuned_prob(0.9, 1, 1000, 0.5) == pytest.approx(0.5, abs=1e-3)
    assert brar_tuned_prob(0.5, 40, 86, 0.5) == pytest.approx(0.5)


@given(st.floats(0.001, 0.999), st.integers(1, 500))
def test_tuned_brar_shrinks_towards_half(pi, i):
    v = brar_tuned_prob(pi, i, 500, 0.5)
    assert min(pi, 0.5) - 1e-12 <= v <= max(pi, 0.5) + 1e-12


def test_erade_points():
    assert erade_prob(0.6, 0.7, 0.5) == pytest.approx(0.30)
    assert erade_prob(0.6, 0.5, 0.5) == pytest.approx(0.80)
    assert erade_prob(0.6, 0.6, 0.5) == pytest.approx(0.60)


def test_targets_fixture():
    assert target_neyman_wald(0.12, 0.37) == pytest.approx(0.59770, abs=1e-5)
    assert target_rshir_wald(0.12, 0.37) == pytest.approx(0.63714, abs=1e-5)
    assert target_neyman_wald(0.0, 1.0) == 0.5
    assert target_rshir_wald(0.0, 0.0) == 0.5
    assert target_rshir_wald(0.0, 0.4) == 1.0


@given(st.floats(0, 1), st.floats(0, 1))
def test_targets_in_unit_interval(p0, p1):
    for f in (target_neyman_wald, target_rshir_wald):
        assert 0.0 <= f(p0, p1) <= 1.0


def test_ptw_rule():
    assert [ptw_next(a, y) for a, y in ((0, 1), (0, 0), (1, 1), (1, 0))] == [0, 1, 1, 0]


def test_shrink_estimators():
    assert shrink_estimate(0, 0, 0) == 0.5
    assert shrink_estimate(3, 4, 0) == 0.75
    assert shrink_estimate(0, 3, 1) == pytest.approx(0.125)


def test_urn_updates():
    urn = UrnState()
    urn = rptw_update(urn, 1, 1)  # success on arm 1: arm-1 ball
    assert urn.balls == (1, 2)
    urn = rptw_update(urn, 1, 0)  # failure on arm 1: arm-0 ball
    assert urn.balls == (2, 2)
    urn = rptw_update(urn, 0, 0)
    assert urn.balls == (2, 3)
    assert urn.prob_arm1 == pytest.approx(0.6)
    with pytest.raises(ValueError):
        UrnState((0, 1))


def test_registry():
    assert len(DESIGN_NAMES) == 10
    for name in DESIGN_NAMES:
        d = make_design(name)
        assert design_key(d) == name
        assert d.label == DISPLAY_LABELS[name]
    assert make_design("RPTW").kind == "RPTW"
    with pytest.raises(ConfigurationError):
        make_design("bogus")


def test_tests_per_design():
    assert make_design("er").tests == ("z1", "z0")
    assert make_design("n1").tests == ("z1",)
    assert make_design("r0").tests == ("z0",)


def test_placeholder_warns_and_uses_wald():
    d = make_design("n0")
    assert d.placeholder
    with pytest.warns(PlaceholderTargetWarning):
        assert d.limit_rho(0.12, 0.37) == pytest.approx(target_neyman_wald(0.12, 0.37))
    custom = d.with_target_fn(lambda p0, p1: 0.7)
    assert not custom.placeholder and not custom.kernel_ok
    assert custom.limit_rho(0.1, 0.2) == 0.7


def test_limits():
    assert make_design("pbb").limit_rho(0.3, 0.3) == 1.0
    assert make_design("brar-u").limit_rho(0.3, 0.3) == 0.5
    assert make_design("brar-t").limit_rho(0.4, 0.3) == 0.0
    assert make_design("ptw").limit_rho(0.12, 0.37) == pytest.approx(0.88 / (0.88 + 0.63))


def test_design_validation():
    with pytest.raises(ConfigurationError):
        DesignSpec("ERADE_TARGET")
    with pytest.raises(ConfigurationError):
        DesignSpec("BRAR_U", prior=(0, 1, 1, 1))
    with pytest.raises(ConfigurationError):
        AllocationTarget("CUSTOM")
    with pytest.raises(ConfigurationError):
        AllocationTarget("NEYMAN_WALD", estimator="bayes")


def test_tuning_variants():
    d = make_design("brar-t", tuning=lambda i, n: 1.0)
    assert d.tuning_exponent(3, 10) == 1.0 and not d.kernel_ok
    assert make_design("brar-t").tuning_exponent(43, 86) == pytest.approx(0.25)
    assert np.isnan(d.tuning_gamma)
