import numpy as np
import pytest

from kuramoto_daido import bifurcation as bf
from kuramoto_daido.densities import Gaussian, Lorentzian, LorentzianMixture
from kuramoto_daido.errors import AssumptionViolation, NoBranch
from kuramoto_daido.spectral import CouplingParams

L1 = Lorentzian(1.0)


def test_lorentzian_cubic_coefficients():
    c = bf.coefficients(L1, CouplingParams(1.0, 0.3))
    np.testing.assert_allclose(c.p1, np.exp(0.3j) / 2, atol=1e-12)
    np.testing.assert_allclose(c.p3, -np.exp(-0.3j) / np.cos(0.3), atol=1e-12)
    assert c.p2 is None
    assert c.kind == "pitchfork"
    assert c.criticality == "supercritical"


def test_lorentzian_quadratic_coefficient():
    c = bf.coefficients(L1, CouplingParams(1.0, h=0.5))
    np.testing.assert_allclose(c.p2, 2.0, atol=1e-12)
    assert c.kind == "transcritical"
    assert c.criticality == "subcritical"
    # p2 = 2 gamma h / (1 - h) for wider Lorentzians too
    c = bf.coefficients(Lorentzian(1.5), CouplingParams(1.0, h=0.25))
    np.testing.assert_allclose(c.p2, 2 * 1.5 * 0.25 / 0.75, atol=1e-10)


def test_coefficient_routes_agree():
    p = CouplingParams(1.0, 0.2)
    for model in (L1, Gaussian(1.0)):
        a = bf.coefficients(model, p)
        b = bf.coefficients(model, p, "quadrature")
        assert abs(a.p1 - b.p1) < 1e-8
        assert abs(a.p3 - b.p3) < 1e-7


def test_gaussian_is_supercritical():
    c = bf.coefficients(Gaussian(1.0), CouplingParams(1.0))
    assert c.p3.real < 0 and c.p1.real > 0


def test_coefficients_raise_on_assumptions():
    with pytest.raises(AssumptionViolation) as info:
        bf.coefficients(L1, CouplingParams(1.0, h=2.0))
    assert info.value.assumption == "A1"
    twin = LorentzianMixture(((0.5, -1.0, 0.5), (0.5, 1.0, 0.5)))
    with pytest.raises(AssumptionViolation) as info:
        bf.coefficients(twin, CouplingParams(1.0))
    assert info.value.assumption == "A3"


def test_fixed_point_examples():
    c = bf.coefficients(L1, CouplingParams(1.0, 0.0))
    fp = bf.fixed_point(c, 2.2)
    assert fp.r0 == pytest.approx(np.sqrt(0.1), rel=1e-10)
    assert fp.side == "above" and fp.stable
    assert bf.fixed_point(c, 1.8) is None
    assert bf.fixed_point(c, 2.0).r0 == 0.0

    c = bf.coefficients(L1, CouplingParams(1.0, h=0.5))
    fp = bf.fixed_point(c, 1.9)
    assert fp.r0 == pytest.approx(0.025, rel=1e-10)
    assert fp.side == "below" and not fp.stable
    assert bf.fixed_point(c, 2.1) is None


def test_reduced_flow():
    c = bf.coefficients(L1, CouplingParams(1.0, 0.0))
    assert bf.reduced_flow(c, 2.2, 0.0).dr_dt == 0.0
    assert bf.reduced_flow(c, 2.2, 0.1).dr_dt == pytest.approx(0.009, rel=1e-10)
    r0 = bf.fixed_point(c, 2.2).r0
    assert abs(bf.reduced_flow(c, 2.2, r0).dr_dt) < 1e-14
    with pytest.raises(ValueError):
        bf.reduced_flow(c, 2.2, -0.1)


def test_predicted_order_parameter():
    c = bf.coefficients(L1, CouplingParams(1.0, 0.3))
    K = 1.1 * c.K_c
    pred = bf.predicted_order_parameter(c, K)
    assert pred.velocity == pytest.approx(np.tan(0.3), rel=1e-10)
    np.testing.assert_allclose(pred.phase_offset, np.exp(-0.3j), atol=1e-14)
    # exact Lorentzian rotation is y_c (2K/K_c - 1); the drift term carries it
    assert pred.velocity_corrected == pytest.approx(np.tan(0.3) * 1.2, rel=1e-10)
    with pytest.raises(NoBranch):
        bf.predicted_order_parameter(c, 0.9 * c.K_c)


def test_outside_validity():
    c = bf.coefficients(L1, CouplingParams(1.0))
    assert not bf.outside_validity(c, 2.3)
    assert bf.outside_validity(c, 2.5)


def test_small_alpha_estimate():
    est = bf.small_alpha_yc(L1, 0.1)
    assert est.root_value == pytest.approx(np.tan(0.1), rel=1e-10)
    # the root lies on the positive-slope side
    assert abs(est.estimate_plus - est.root_value) < abs(est.estimate_minus - est.root_value)
    assert abs(est.estimate_plus - est.root_value) < 1e-3
    with pytest.raises(ValueError):
        bf.small_alpha_yc(L1, 0.5)


def test_coefficients_dict_roundtrip():
    for p in (CouplingParams(1.0, 0.3), CouplingParams(1.0, h=0.5)):
        c = bf.coefficients(L1, p)
        d = bf.BifurcationCoefficients.from_dict(c.to_dict())
        assert d == c
