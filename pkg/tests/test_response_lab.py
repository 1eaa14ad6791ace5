import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from disperse import response_lab as rl
from disperse import spectral_models as sm
from disperse import temporal_kernels as tk
from disperse.errors import UnboundedSpectrum, UnsupportedModel

DRUDE = sm.Drude(1.0, 0.5)
THETA = sm.RegularizedDrude(1.0, 0.5, 0.1)
LORENTZ = sm.LorentzSum([sm.Oscillator(1.0, 1.0, 0.1)])
SKIN = sm.NormalSkin(1 / (4 * math.pi))
PLASMA = sm.Plasma(1.0)
PULSE = rl.GaussianPulse(1.0, 0.2)

D_INF = 7.9266545952120220267       # (wp^2/gamma) sqrt(pi/beta)
D_AT_0 = 2.6382793039094335271      # Drude closed form at t = 0
D_THETA_001_T30 = 7.7078            # theta = 0.001, T = 30 (4 digits, see below)


def test_pulse_examples():
    assert rl.pulse_value(PULSE, 0.0) == 1.0
    assert rl.pulse_value(PULSE, 1e3) == 0.0
    assert rl.pulse_value(rl.GaussianPulse(2.0, 0.5), 1.0) == pytest.approx(1.2130613194252668, rel=1e-15)
    assert rl.pulse_spectrum(PULSE, 0.0) == pytest.approx(0.63078313050504001, rel=1e-15)
    w = np.linspace(0, 5, 11)
    np.testing.assert_array_equal(rl.pulse_spectrum(PULSE, w), rl.pulse_spectrum(PULSE, -w))
    grid = np.linspace(-12, 12, 4801)
    assert np.trapezoid(rl.pulse_spectrum(PULSE, grid), grid) == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(ValueError):
        rl.GaussianPulse(1.0, 0.0)


def test_convolution_residual_and_causality():
    k = tk.kernel_for(DRUDE)
    assert rl.displacement_convolution(k, PULSE, 30.0) == pytest.approx(D_INF, abs=1e-5)
    for m in (DRUDE, THETA, LORENTZ, SKIN, PLASMA):
        assert abs(rl.displacement_convolution(tk.kernel_for(m), PULSE, -30.0)) <= 1e-10


def test_convolution_normal_skin():
    k = tk.kernel_for(SKIN)
    assert rl.displacement_convolution(k, PULSE, 30.0) == pytest.approx(3.9633272976060110, abs=1e-5)
    t = np.linspace(-5, 5, 11)
    exact = rl.pulse_value(PULSE, t) + 0.5 * math.sqrt(math.pi / 0.2) * (1 + np.vectorize(math.erf)(math.sqrt(0.2) * t))
    np.testing.assert_allclose(rl.displacement_convolution(k, PULSE, t), exact, rtol=1e-9)


def test_convolution_plasma_closed_form():
    # int_0^inf tau exp(-beta (t - tau)^2) dtau in closed form
    t = np.linspace(-5, 10, 7)
    b = 0.2
    inner = (np.exp(-b * t * t) / (2 * b)
             + t * 0.5 * math.sqrt(math.pi / b) * (1 + np.vectorize(math.erf)(math.sqrt(b) * t)))
    got = rl.displacement_convolution(tk.kernel_for(PLASMA), PULSE, t)
    np.testing.assert_allclose(got, rl.pulse_value(PULSE, t) + inner, rtol=1e-9)


def test_closed_form_examples():
    assert rl.displacement_closed_form(DRUDE, PULSE, 0.0) == pytest.approx(D_AT_0, rel=1e-13)
    assert rl.displacement_convolution(tk.kernel_for(DRUDE), PULSE, 0.0) == pytest.approx(D_AT_0, rel=1e-9)
    for m in (PLASMA, SKIN):
        with pytest.raises(UnsupportedModel):
            rl.displacement_closed_form(m, PULSE, 0.0)


def test_closed_form_theta_to_zero():
    base = rl.displacement_closed_form(DRUDE, PULSE, 1.0)
    devs = [abs(rl.displacement_closed_form(sm.RegularizedDrude(1, 0.5, th), PULSE, 1.0) - base)
            for th in (0.1, 0.01, 0.001)]
    assert devs[0] > devs[1] > devs[2]
    assert devs[1] / devs[2] == pytest.approx(10.0, rel=0.05)


def test_closed_form_lorentz_decays():
    assert abs(rl.displacement_closed_form(LORENTZ, PULSE, -30.0)) <= 1e-10
    # the ringing decays like exp(-gamma t / 2); at t = 30 it is still O(0.1)
    d30 = rl.displacement_closed_form(LORENTZ, PULSE, 30.0)
    assert d30 == pytest.approx(-0.25526765905088, rel=1e-10)
    assert d30 == pytest.approx(rl.displacement_convolution(tk.kernel_for(LORENTZ), PULSE, 30.0), rel=1e-8)
    T = rl.t_star(LORENTZ, PULSE)
    for t in (-T, T):
        assert abs(rl.displacement_closed_form(LORENTZ, PULSE, t)) <= 1e-8


def test_closed_form_large_times_no_overflow():
    t = np.array([-1e3, -100.0, 100.0, 1e3, 1e5])
    for m in (DRUDE, THETA, LORENTZ):
        assert np.all(np.isfinite(rl.displacement_closed_form(m, PULSE, t)))
    assert rl.displacement_closed_form(DRUDE, PULSE, 1e5) == pytest.approx(D_INF, rel=1e-14)


def test_closed_form_theta_equal_gamma():
    t = np.linspace(-10, 20, 13)
    at = rl.displacement_closed_form(sm.RegularizedDrude(1, 0.5, 0.5), PULSE, t)
    conv = rl.displacement_convolution(tk.kernel_for(sm.RegularizedDrude(1, 0.5, 0.5)), PULSE, t)
    np.testing.assert_allclose(at, conv, atol=1e-9)


@pytest.mark.parametrize("model", [DRUDE, THETA, LORENTZ, sm.LorentzSum([(1, 1, 0.5), (0.5, 2.5, 0.3)])],
                         ids=["drude", "theta", "lorentz", "lorentz2"])
def test_convolution_equals_closed_form(model):
    t = np.linspace(-10, 10, 41)
    conv = rl.displacement_convolution(tk.kernel_for(model), PULSE, t)
    closed = rl.displacement_closed_form(model, PULSE, t)
    assert np.max(np.abs(conv - closed)) <= 1e-6 * np.max(np.abs(closed))


def test_spectral_drude_is_d_tilde():
    t = np.linspace(-10, 10, 41)
    sig = rl.displacement_spectral(DRUDE, PULSE, t)
    assert sig.metadata["quantity"] == "D_tilde"
    diff = sig.values - rl.displacement_closed_form(DRUDE, PULSE, t)
    assert np.max(np.abs(diff + D_INF / 2)) <= 1e-4
    assert np.std(diff) <= 1e-4 * D_INF / 2
    ends = rl.displacement_spectral(DRUDE, PULSE, np.array([-30.0, 30.0])).values
    np.testing.assert_allclose(ends, [-D_INF / 2, D_INF / 2], atol=1e-4)


def test_spectral_unbounded_cases():
    t = np.linspace(-1, 1, 3)
    with pytest.raises(UnboundedSpectrum):
        rl.displacement_spectral(PLASMA, PULSE, t)
    with pytest.raises(UnboundedSpectrum):
        rl.displacement_spectral(DRUDE, PULSE, t, rl.SpectralSettings(symmetric_cancellation=False))


@pytest.mark.parametrize("model", [THETA, LORENTZ], ids=["theta", "lorentz"])
def test_spectral_equals_closed_form(model):
    t = np.linspace(-10, 10, 41)
    sig = rl.displacement_spectral(model, PULSE, t)
    assert sig.metadata["quantity"] == "D"
    closed = rl.displacement_closed_form(model, PULSE, t)
    assert np.max(np.abs(sig.values - closed)) <= 1e-6 * np.max(np.abs(closed))


def test_spectral_requires_uniform_grid():
    with pytest.raises(ValueError):
        rl.displacement_spectral(THETA, PULSE, np.array([0.0, 1.0, 3.0]))


def test_asymptotic_limits():
    a = rl.asymptotic_limits(DRUDE, PULSE)
    assert a.D_plus == pytest.approx(D_INF, rel=1e-15)
    assert a.D_minus == 0.0
    assert (a.D_tilde_plus, a.D_tilde_minus) == pytest.approx((D_INF / 2, -D_INF / 2), rel=1e-15)
    assert rl.asymptotic_limits(THETA, PULSE).D_plus == 0.0
    assert rl.asymptotic_limits(LORENTZ, PULSE).D_minus == 0.0
    with pytest.raises(UnsupportedModel, match="Divergent"):
        rl.asymptotic_limits(PLASMA, PULSE)


def test_drude_residual_monotone_approach():
    beta = PULSE.beta
    T = np.linspace(5 / math.sqrt(beta), 30 / math.sqrt(beta), 60)
    d = rl.displacement_convolution(tk.kernel_for(DRUDE), PULSE, T)
    assert np.all(np.diff(d) > 0)
    assert abs(d[-1] - D_INF) / D_INF <= 1e-6


def test_t_star():
    assert rl.t_star(DRUDE, PULSE) == pytest.approx(30 / math.sqrt(0.2))
    assert rl.t_star(LORENTZ, PULSE) == pytest.approx(400.0)
    assert rl.t_star(THETA, PULSE) == pytest.approx(200.0)


def test_limit_probe_examples():
    probe = rl.limit_order_probe(DRUDE, PULSE, [0.1, 0.01, 0.001], [30.0, 3000.0])
    # theta = 0 row equals the bare Drude closed form exactly
    np.testing.assert_array_equal(probe.D_plus[0], rl.displacement_closed_form(DRUDE, PULSE, [30.0, 3000.0]))
    # theta = 0.001 at T = 30: still close to, but visibly below, the residual
    assert probe.D_plus[3, 0] == pytest.approx(D_THETA_001_T30, abs=1e-4)
    conv = rl.displacement_convolution(tk.kernel_for(sm.RegularizedDrude(1, 0.5, 0.001)), PULSE, 30.0)
    assert probe.D_plus[3, 0] == pytest.approx(conv, rel=1e-9)
    # theta = 0.1 at T = 3000 has decayed
    assert abs(probe.D_plus[1, 1]) <= 1e-6


def test_limits_do_not_commute():
    probe = rl.limit_order_probe(DRUDE, PULSE, [0.1, 0.03, 0.01, 0.003, 0.001],
                                 [10.0, 30.0, 100.0, 1e3, 1e4, 1e5])
    assert probe.limit_T_then_theta == pytest.approx(D_INF, abs=1e-6)
    assert abs(probe.limit_theta_then_T) <= 1e-6
    assert probe.gap == pytest.approx(D_INF, abs=1e-5)
    ev = probe.evidence()
    assert ev["theta_column_monotone"] and ev["theta0_row_monotone"] and ev["fixed_theta_decays"]
    # causality once the Gaussian itself is negligible, t <= -10/sqrt(beta)
    far = np.array(probe.Ts) >= 10 / math.sqrt(PULSE.beta)
    assert np.max(np.abs(probe.D_minus[:, far])) <= 1e-10
    json.dumps(probe.to_json())


def test_theta_uniform_on_compacts():
    t = np.linspace(-10, 10, 81)
    base = rl.displacement_closed_form(DRUDE, PULSE, t)
    sup = [np.max(np.abs(rl.displacement_closed_form(sm.RegularizedDrude(1, 0.5, th), PULSE, t) - base))
           for th in (0.1, 0.01, 0.001, 1e-4)]
    assert all(a > b for a, b in zip(sup, sup[1:]))
    # first order in theta: each decade of theta removes one decade of error
    for a, b in zip(sup[1:], sup[2:]):
        assert a / b == pytest.approx(10.0, rel=0.05)
    assert sup[-1] / 1e-4 == pytest.approx(63.5, rel=0.01)


def test_consistency_report_drude():
    rep = rl.consistency_report(DRUDE, PULSE, np.linspace(-10, 10, 41), scenario_id="d")
    assert rep.deviations["conv-closed"] <= 1e-6 * rep.max_abs_D()
    assert "conv-spec" not in rep.deviations
    assert rep.spectral_quantity == "D_tilde"
    assert rep.offset["mean"] == pytest.approx(-D_INF / 2, abs=1e-4)
    assert rep.offset["expected"] == pytest.approx(-3.9633272976060110, rel=1e-15)
    assert "D_spec=D_tilde" in rep.to_csv().splitlines()[1]


def test_consistency_report_lorentz():
    rep = rl.consistency_report(LORENTZ, PULSE, np.linspace(-10, 10, 41))
    assert set(rep.deviations) == {"conv-closed", "conv-spec", "closed-spec"}
    assert max(rep.deviations.values()) <= 1e-6 * rep.max_abs_D()
    assert not rep.failures
    assert all(abs(v) <= 1e-8 for vals in rep.at_t_star.values() for v in vals)


def test_consistency_report_plasma_records_failures():
    rep = rl.consistency_report(PLASMA, PULSE, np.linspace(-5, 5, 11))
    assert "conv" in rep.paths
    assert rep.failures["closed"].startswith("UnsupportedModel")
    assert rep.failures["spec"].startswith("UnboundedSpectrum")
    assert rep.limits == {"divergent": True}
    json.loads(rep.dumps())
    header = rep.to_csv().splitlines()[0]
    assert header == "t,E,D_conv,D_spec,D_closed,flags"


def test_consistency_report_deterministic():
    a = rl.consistency_report(THETA, PULSE, np.linspace(-5, 5, 11))
    b = rl.consistency_report(THETA, PULSE, np.linspace(-5, 5, 11))
    assert a.to_csv() == b.to_csv() and a.dumps() == b.dumps()


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["drude", "theta", "lorentz"]), st.floats(-10, 10))
def test_linearity_in_amplitude(name, t):
    model = {"drude": DRUDE, "theta": THETA, "lorentz": LORENTZ}[name]
    p2 = rl.GaussianPulse(2.0, 0.2)
    d1 = rl.displacement_closed_form(model, PULSE, t)
    d2 = rl.displacement_closed_form(model, p2, t)
    assert d2 == pytest.approx(2 * d1, rel=1e-14, abs=1e-300)
    c1 = rl.displacement_convolution(tk.kernel_for(model), PULSE, t)
    c2 = rl.displacement_convolution(tk.kernel_for(model), p2, t)
    assert c2 == pytest.approx(2 * c1, rel=1e-14, abs=1e-300)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.05, 2.0), st.floats(0.1, 2.0))
def test_causality_property(beta, gamma):
    p = rl.GaussianPulse(1.0, beta)
    t = -10 / math.sqrt(beta)
    for m in (sm.Drude(1.0, gamma), sm.LorentzSum([(1.0, 1.0, min(gamma, 1.9))])):
        assert abs(rl.displacement_closed_form(m, p, t)) <= 1e-10
