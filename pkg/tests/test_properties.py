import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from kuramoto_daido import densities as dens
from kuramoto_daido import spectral as sp
from kuramoto_daido.bifurcation import coefficients, fixed_point, reduced_flow
from kuramoto_daido.densities import Gaussian, Lorentzian

gammas = st.floats(0.2, 3.0)
alphas = st.floats(-1.2, 1.2)
ys = st.floats(-5.0, 5.0)

FAST = settings(max_examples=40, deadline=None)


@FAST
@given(gammas, alphas)
def test_lorentzian_transition_closed_form(gamma, alpha):
    cp = sp.critical_point(Lorentzian(gamma), sp.CouplingParams(1.0, alpha))
    assert abs(cp.K_c - 2 * gamma / np.cos(alpha)) < 1e-8 * cp.K_c
    assert abs(cp.y_c - gamma * np.tan(alpha)) < 1e-8 * max(1, abs(cp.y_c))


@FAST
@given(gammas, ys)
def test_lorentzian_hilbert_closed_form(gamma, y):
    expected = y / (np.pi * (y * y + gamma * gamma))
    assert abs(dens.hilbert(Lorentzian(gamma), y) - expected) < 1e-14


@FAST
@given(st.floats(0.3, 3.0), ys)
def test_gaussian_hilbert_odd(sigma, y):
    m = Gaussian(sigma)
    assert abs(dens.hilbert(m, y) + dens.hilbert(m, -y)) < 1e-15


@FAST
@given(gammas, st.floats(0.01, 5.0), ys)
def test_D_is_holomorphic_in_right_half_plane(sigma, x, y):
    # Cauchy-Riemann: dD/dx = D', dD/dy = i D'
    m, lam, h = Gaussian(sigma), complex(x, y), 1e-6
    d1 = sp.D(m, lam, 1)
    dx = (sp.D(m, lam + h) - sp.D(m, lam - h)) / (2 * h)
    dy = (sp.D(m, lam + 1j * h) - sp.D(m, lam - 1j * h)) / (2 * h)
    assert abs(dx - d1) < 1e-6 * max(1, abs(d1))
    assert abs(dy - 1j * d1) < 1e-6 * max(1, abs(d1))


@FAST
@given(gammas, ys)
def test_D_continuous_across_axis(sigma, y):
    m = Gaussian(sigma)
    d = 1e-7
    left = sp.D(m, complex(-d, y))
    right = sp.D(m, complex(d, y))
    axis = sp.D_boundary(m, y)
    assert abs(left - axis) < 1e-5 and abs(right - axis) < 1e-5


@FAST
@given(st.floats(0.5, 6.0), alphas)
def test_eigenvalues_in_right_half_plane(K, alpha):
    lam = sp.eigenvalue_solve(Lorentzian(1.0), sp.CouplingParams(K, alpha))
    exact = K / 2 * np.exp(1j * alpha) - 1
    if lam is None:
        assert exact.real <= 1e-9
    else:
        assert lam.real > 0
        assert abs(lam - exact) < 1e-8


@FAST
@given(st.floats(2.1, 5.0), alphas, st.floats(0.1, 2.0), st.floats(-1.0, 1.0))
def test_projection_idempotent(K, alpha, ar, ai):
    # Pi phi = c v and Pi v = v, so Pi (Pi phi) = c Pi v = Pi phi
    m, p = Gaussian(1.0), sp.CouplingParams(K, alpha)
    lam = sp.eigenvalue_solve(m, p)
    if lam is None:
        return
    phi = sp.CauchyPole(complex(ar, ai), 0.5 - 0.2j)
    c = sp.projection_coefficient(m, p, lam, phi)
    cv = sp.projection_coefficient(m, p, lam, sp.eigenfunction(lam))
    assert abs(c * cv - c) < 1e-8 * max(1, abs(c))


@FAST
@given(alphas, st.floats(0.001, 0.2))
def test_supercritical_fixed_point_is_a_zero_of_the_flow(alpha, frac):
    c = coefficients(Lorentzian(1.0), sp.CouplingParams(1.0, alpha))
    K = c.K_c * (1 + frac)
    fp = fixed_point(c, K)
    assert fp.stable and fp.r0 > 0
    assert abs(reduced_flow(c, K, fp.r0).dr_dt) < 1e-12
    # the flow pushes towards r0 from both sides
    assert reduced_flow(c, K, 0.5 * fp.r0).dr_dt > 0
    assert reduced_flow(c, K, 1.5 * fp.r0).dr_dt < 0


@FAST
@given(st.integers(1, 5000), st.sampled_from([Lorentzian(1.0), Gaussian(0.7)]))
def test_quantile_sample_symmetric(n, model):
    x = dens.sample(model, n)
    np.testing.assert_allclose(x, -x[::-1], atol=1e-9)
