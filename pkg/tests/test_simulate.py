import numpy as np
import pytest

from kuramoto_daido import simulate as sim
from kuramoto_daido.densities import Lorentzian
from kuramoto_daido.errors import ClosureOverflow, WindowTooShort
from kuramoto_daido.spectral import CouplingParams, P0

L1 = Lorentzian(1.0)


def test_small_coherence_initial_moment():
    cfg = sim.FiniteNConfig(2000, L1, CouplingParams(1.0), t_end=1.0, burn_in=0.0,
                            init=sim.SmallCoherence(0.05))
    th = sim._initial_phases(cfg, 2000)
    np.testing.assert_allclose(np.mean(np.exp(1j * th)), 0.05, atol=1e-9)


def test_finite_n_zero_coupling_free_rotation():
    omega = np.array([0.5, -1.0, 2.0])
    theta0 = np.array([0.1, 0.2, 0.3])
    cfg = sim.FiniteNConfig(3, L1, CouplingParams(1e-300), dt=0.01, t_end=2.0, burn_in=0.0)
    tr = sim.simulate_finite_n(cfg, omega=omega, theta0=theta0)
    expected = np.mean(np.exp(1j * (theta0 + 2.0 * omega)))
    np.testing.assert_allclose(tr.eta1[-1], expected, atol=1e-12)


def test_finite_n_synchronized_pair():
    # two oscillators at +-0.5 lock when K > 1 with phase gap asin(1/K)
    cfg = sim.FiniteNConfig(2, L1, CouplingParams(2.0), dt=0.01, t_end=60.0, burn_in=30.0)
    tr = sim.simulate_finite_n(cfg, omega=np.array([-0.5, 0.5]),
                               theta0=np.array([0.0, 1.0]))
    m = sim.measure_steady_state(tr)
    assert m.r_mean == pytest.approx(np.cos(np.arcsin(0.5) / 2), abs=1e-8)
    assert abs(m.velocity) < 1e-8


def test_finite_n_bad_inputs():
    with pytest.raises(ValueError):
        sim.FiniteNConfig(0, L1, CouplingParams(1.0))
    with pytest.raises(ValueError):
        sim.FiniteNConfig(10, L1, CouplingParams(1.0), dt=0.1)
    cfg = sim.FiniteNConfig(3, L1, CouplingParams(1.0), t_end=1.0, burn_in=0.0)
    with pytest.raises(ValueError):
        sim.simulate_finite_n(cfg, omega=np.zeros(4))


def test_galerkin_config_validation():
    with pytest.raises(ValueError):
        sim.GalerkinConfig(L1, CouplingParams(1.0), j_max=2)
    with pytest.raises(ValueError):
        sim.GalerkinConfig(L1, CouplingParams(1.0), closure="spline")
    with pytest.raises(ValueError):
        sim.GalerkinConfig(L1, CouplingParams(1.0), burn_in=300.0)


def test_galerkin_free_streaming():
    # K -> 0: Z_1(t, w) = eps e^{i w t}, so eta_1 is eps times the sampled
    # characteristic function
    cfg = sim.GalerkinConfig(L1, CouplingParams(1e-300), m_nodes=200, dt=0.01,
                             t_end=3.0, burn_in=0.0, init_amplitude=1e-2,
                             sponge_strength=0.0)
    tr = sim.simulate_galerkin(cfg, record_modes=True)
    w = tr.meta["nodes"]
    np.testing.assert_allclose(tr.eta1[-1], 1e-2 * np.mean(np.exp(3j * w)), atol=1e-12)


def test_galerkin_incoherent_state_is_invariant():
    cfg = sim.GalerkinConfig(L1, CouplingParams(3.0), m_nodes=50, t_end=5.0,
                             burn_in=0.0, init_amplitude=0.0)
    tr = sim.simulate_galerkin(cfg)
    assert np.all(tr.eta1 == 0) and np.all(tr.eta2 == 0)


def test_galerkin_overflow_is_reported():
    cfg = sim.GalerkinConfig(L1, CouplingParams(8.0), j_max=4, m_nodes=50,
                             t_end=40.0, burn_in=0.0, init_amplitude=0.3,
                             sponge_strength=0.0)
    with pytest.raises(ClosureOverflow):
        sim.simulate_galerkin(cfg)


def test_trace_csv_roundtrip(tmp_path):
    cfg = sim.GalerkinConfig(L1, CouplingParams(2.5), m_nodes=40, t_end=1.0, burn_in=0.0)
    tr = sim.simulate_galerkin(cfg)
    path = tmp_path / "trace.csv"
    text = tr.to_csv(path)
    assert text.splitlines()[1] == ",".join(sim.CSV_HEADER)
    assert tr.meta["config_hash"] in text.splitlines()[0]
    back = sim.Trace.from_csv(path)
    np.testing.assert_array_equal(back.times, tr.times)
    np.testing.assert_array_equal(back.eta1, tr.eta1)
    np.testing.assert_array_equal(back.eta2, tr.eta2)
    # a rerun is bit-identical
    assert sim.simulate_galerkin(cfg).to_csv() == text


def test_config_hash_depends_on_settings():
    a = sim.GalerkinConfig(L1, CouplingParams(2.5))
    b = sim.GalerkinConfig(L1, CouplingParams(2.6))
    assert sim.config_hash(a) == sim.config_hash(sim.GalerkinConfig(L1, CouplingParams(2.5)))
    assert sim.config_hash(a) != sim.config_hash(b)
    assert len(sim.config_hash(a)) == 16


def test_measure_steady_state_on_synthetic_trace():
    t = np.linspace(0, 100, 10001)
    eta = 0.3 * np.exp(1j * (0.7 * t + 1.0))
    tr = sim.Trace(t, eta, eta ** 2, {"burn_in": 50.0})
    m = sim.measure_steady_state(tr)
    assert m.r_mean == pytest.approx(0.3)
    assert m.r_std < 1e-14
    assert m.velocity == pytest.approx(0.7, rel=1e-12)
    assert m.n_samples == 5001
    with pytest.raises(WindowTooShort):
        sim.measure_steady_state(tr, window=(99.9, 100.0))


def test_fit_decay_rate_and_echo_time():
    t = np.linspace(0, 10, 101)
    assert sim.fit_decay_rate(t, 2 * np.exp(-0.3 * t), (1, 9)) == pytest.approx(-0.3)
    with pytest.raises(WindowTooShort):
        sim.fit_decay_rate(t, t, (3.01, 3.02))
    assert sim.echo_time([0.0, 0.5, 2.0]) == pytest.approx(4 * np.pi)
    assert sim.echo_time([1.0]) == np.inf


def test_linearized_free_mode():
    # j = 3 carries no coupling: the pairing is the sampled characteristic function
    cfg = sim.GalerkinConfig(L1, CouplingParams(1.6), m_nodes=100, t_end=2.0, burn_in=0.0)
    lt = sim.simulate_linearized(cfg, 3, P0(), P0())
    w = sim._nodes(cfg)
    np.testing.assert_allclose(lt.pairing[-1], np.mean(np.exp(6j * w)), atol=1e-12)
    with pytest.raises(ValueError):
        sim.simulate_linearized(cfg, 0, P0(), P0())
