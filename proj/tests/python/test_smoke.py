import math

import pytest

import deconv


def test_bandwidth_known_value():
    cls = deconv.SmoothnessClass(alpha=1.0, r=1.0, L=1.0 / math.pi)
    noise = deconv.make_noise("gaussian", {"sigma": 1.0})
    b = deconv.solve_hstar(cls, noise, 1000000)
    assert abs(b["h"] - 0.5511528593981729) < 1e-10
    assert abs(b["residual"]) < 1e-10
    assert deconv.solve_hplus(cls, noise, 1000000)["h"] < b["h"]
    assert deconv.adaptive_bandwidth(noise, 1000000)["h"] > 0


def test_rates_and_bounds():
    cls = deconv.SmoothnessClass(alpha=1.0, r=1.0, L=1.0 / math.pi)
    noise = deconv.make_noise("gaussian", {"sigma": 1.0})
    rv = deconv.rates(cls, noise, 1000000)
    assert rv["l2"] == pytest.approx(0.008450858417746005, rel=1e-9)
    assert rv["pointwise"] > 0
    assert deconv.bias_bound_l2(cls, 0.5) == pytest.approx(
        math.exp(-4.0) / math.pi, rel=1e-12
    )
    assert deconv.variance_bound_l2(noise, 0.5, 1000000) > 0
    assert deconv.sup_density_bound(cls) > cls.L


def test_stable_density():
    assert deconv.stable_density(1.0, 0.0) == pytest.approx(1.0 / math.pi, rel=1e-6)
    assert deconv.stable_density(2.0, 0.0) == pytest.approx(
        1.0 / (2.0 * math.sqrt(math.pi)), rel=1e-6
    )


def test_membership_gate():
    cls = deconv.SmoothnessClass(alpha=0.5, r=1.0, L=1.0 / math.pi)
    rep = deconv.class_membership("cauchy", {"scale": 1.0}, cls)
    assert rep["pass"]
    assert rep["integral"] == pytest.approx(2.0, rel=1e-6)

    narrow = deconv.SmoothnessClass(alpha=1.5, r=1.0, L=1.0 / math.pi)
    with pytest.raises(deconv.ModelError):
        deconv.class_membership("cauchy", {"scale": 1.0}, narrow)


def test_estimate_density_integrates_to_one():
    noise = deconv.make_noise("noiseless", {})
    samples = [0.1 * k - 2.0 for k in range(40)]
    xs, fs = deconv.estimate_density(samples, noise, 0.5)
    dx = xs[1] - xs[0]
    assert sum(fs) * dx == pytest.approx(1.0, abs=1e-6)


def test_validation_errors_surface():
    with pytest.raises(deconv.ValidationError):
        deconv.make_noise("gaussian", {})
    with pytest.raises(deconv.ValidationError):
        deconv.two_point_risk_bound(1.0, 1.5)
