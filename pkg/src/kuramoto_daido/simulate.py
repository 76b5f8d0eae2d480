"""Direct simulations of the oscillator model.

Two independent discretizations are provided:

* :func:`simulate_finite_n` integrates ``N`` phase oscillators,
  ``d theta_i/dt = w_i + K Im(e^{i a1} eta_1 e^{-i theta_i})
  + K h Im(e^{2 i a2} eta_2 e^{-2 i theta_i})``, with classical RK4.
* :func:`simulate_galerkin` evolves the Fourier modes ``Z_j(t, w)``,
  ``j = 1..J``, of the continuum density on ``M`` frequency nodes,

      dZ_j/dt = i j w Z_j + i j K sum_{l = +-1, +-2} f_l eta_l Z_{j-l},

  with ``Z_0 = 1`` and ``Z_{-j} = conj(Z_j)``.

The Galerkin system is stiff in ``w`` (the outermost quantile node of a
Lorentzian with ``M = 400`` sits near ``w = 255``), so it is advanced with an
integrating-factor RK4 that treats ``i j w`` exactly.  A hyperviscous sponge
``-nu (j/J)^p Z_j`` on the top modes absorbs the cascade that otherwise
reflects off the truncation; it is part of the same exact linear factor.
"""
import csv
import hashlib
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Union

import numpy as np

from .densities import DensityModel, sample
from .errors import ClosureOverflow, WindowTooShort
from .spectral import CouplingParams, fourier_pair

__all__ = [
    "UniformPhases",
    "SmallCoherence",
    "FiniteNConfig",
    "GalerkinConfig",
    "Trace",
    "LinearTrace",
    "SteadyState",
    "simulate_finite_n",
    "simulate_galerkin",
    "simulate_linearized",
    "measure_steady_state",
    "echo_time",
    "fit_decay_rate",
    "config_hash",
]

CSV_HEADER = ("t", "re_eta1", "im_eta1", "re_eta2", "im_eta2")
CSV_VERSION = 1
MIN_WINDOW_SAMPLES = 50
BOUND_TOL = 1e-6


# -- configuration ---------------------------------------------------------

@dataclass(frozen=True)
class UniformPhases:
    """Independent uniform initial phases."""

    seed: int = 0


@dataclass(frozen=True)
class SmallCoherence:
    """Initial phases with first moment ``epsilon``.

    Phases are the quantile midpoints of ``(1 + 2 eps cos t)/(2 pi)``,
    randomly permuted against the frequencies.
    """

    epsilon: float = 1e-3


@dataclass(frozen=True)
class FiniteNConfig:
    n: int
    model: DensityModel
    params: CouplingParams
    dt: float = 0.01
    t_end: float = 200.0
    burn_in: float = 100.0
    sampling: str = "quantile"
    seed: int = 0
    init: Union[UniformPhases, SmallCoherence] = SmallCoherence(1e-3)

    def __post_init__(self):
        if int(self.n) < 1:
            raise ValueError("n must be positive")
        _check_time(self.dt, self.t_end, self.burn_in)

    def to_dict(self):
        return {"simulator": "finite-n", "n": int(self.n),
                "model": self.model.to_dict(), "params": self.params.to_dict(),
                "dt": self.dt, "t_end": self.t_end, "burn_in": self.burn_in,
                "sampling": self.sampling, "seed": self.seed,
                "init": {"kind": type(self.init).__name__, **asdict(self.init)}}


@dataclass(frozen=True)
class GalerkinConfig:
    """Galerkin truncation settings.

    ``closure`` selects what replaces ``Z_{J+1}, Z_{J+2}``: ``"zero"``, or
    ``"poisson"`` (``Z_1 Z_J`` and ``Z_1^2 Z_J``, exact on Poisson kernels
    and point masses).  ``sponge_strength`` and ``sponge_power`` set the
    damping ``nu (j/J)^p``; ``nu = 0`` disables it.  ``init_profile`` is
    ``"uniform"`` (``Z_1 = eps``, higher modes zero) or ``"poisson"``
    (``Z_j = eps^j``).  With ``enforce_bound`` the run aborts as soon as some
    ``|Z_j(w)|`` exceeds ``1 + 1e-6``.
    """

    model: DensityModel
    params: CouplingParams
    j_max: int = 16
    m_nodes: int = 400
    node_scheme: str = "quantile"
    dt: float = 0.01
    t_end: float = 200.0
    burn_in: float = 100.0
    init_amplitude: float = 1e-3
    init_profile: str = "uniform"
    closure: str = "zero"
    sponge_strength: float = 2.0
    sponge_power: float = 4.0
    enforce_bound: bool = False

    def __post_init__(self):
        if int(self.j_max) < 4:
            raise ValueError("j_max must be at least 4")
        if int(self.m_nodes) < 1:
            raise ValueError("m_nodes must be positive")
        if self.closure not in ("zero", "poisson"):
            raise ValueError(f"unknown closure {self.closure!r}")
        if self.init_profile not in ("uniform", "poisson"):
            raise ValueError(f"unknown init_profile {self.init_profile!r}")
        if self.sponge_strength < 0:
            raise ValueError("sponge_strength must be nonnegative")
        _check_time(self.dt, self.t_end, self.burn_in)

    def to_dict(self):
        d = {k: getattr(self, k) for k in (
            "j_max", "m_nodes", "node_scheme", "dt", "t_end", "burn_in",
            "init_amplitude", "init_profile", "closure", "sponge_strength",
            "sponge_power", "enforce_bound")}
        d.update(simulator="galerkin", model=self.model.to_dict(),
                 params=self.params.to_dict())
        return d


def _check_time(dt, t_end, burn_in):
    if not 0 < dt <= 0.05:
        raise ValueError("dt must lie in (0, 0.05]")
    if not 0 <= burn_in < t_end:
        raise ValueError("need 0 <= burn_in < t_end")


def config_hash(config):
    text = json.dumps(config.to_dict(), sort_keys=True, default=str)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


# -- traces ----------------------------------------------------------------

@dataclass
class Trace:
    """Order-parameter time series ``eta_1(t)``, ``eta_2(t)``."""

    times: np.ndarray
    eta1: np.ndarray
    eta2: np.ndarray
    meta: dict = field(default_factory=dict)

    def to_csv(self, path=None):
        buf = io.StringIO()
        buf.write(f"# kuramoto-daido trace v{CSV_VERSION} "
                  f"config={self.meta.get('config_hash', '')}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for t, a, b in zip(self.times, self.eta1, self.eta2):
            w.writerow([repr(float(v)) for v in (t, a.real, a.imag, b.real, b.imag)])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text

    @classmethod
    def from_csv(cls, path):
        data = np.loadtxt(path, delimiter=",", comments="#", skiprows=2)
        data = np.atleast_2d(data)
        return cls(data[:, 0], data[:, 1] + 1j * data[:, 2],
                   data[:, 3] + 1j * data[:, 4], {})

    def to_json(self, measurement=None):
        out = {"meta": self.meta,
               "n_samples": int(len(self.times)),
               "t_final": float(self.times[-1]) if len(self.times) else None}
        if measurement is not None:
            out["measurement"] = asdict(measurement)
        return json.dumps(out, indent=2, sort_keys=True, default=str)


@dataclass
class LinearTrace:
    times: np.ndarray
    pairing: np.ndarray
    meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SteadyState:
    r_mean: float
    r_std: float
    velocity: float
    velocity_stderr: float
    n_samples: int


def measure_steady_state(trace, window=None):
    """Mean and spread of ``|eta_1|`` and its rotation velocity in ``window``.

    The velocity is the least-squares slope of the unwrapped argument of
    ``eta_1``.  ``window`` defaults to ``(burn_in, t_end)`` from the trace
    metadata.

    Raises
    ------
    WindowTooShort
        If fewer than 50 samples fall in the window.
    """
    t = np.asarray(trace.times)
    if window is None:
        window = (trace.meta.get("burn_in", t[0]), t[-1])
    ta, tb = window
    sel = (t >= ta) & (t <= tb)
    n = int(sel.sum())
    if n < MIN_WINDOW_SAMPLES:
        raise WindowTooShort(f"{n} samples in window {window}")
    z = np.asarray(trace.eta1)[sel]
    r = np.abs(z)
    ts = t[sel]
    phase = np.unwrap(np.angle(z))
    A = np.vstack([ts, np.ones_like(ts)]).T
    coef, res, *_ = np.linalg.lstsq(A, phase, rcond=None)
    slope = coef[0]
    resid = phase - A @ coef
    dof = max(n - 2, 1)
    sxx = np.sum((ts - ts.mean()) ** 2)
    stderr = np.sqrt(np.sum(resid ** 2) / dof / sxx) if sxx > 0 else np.inf
    return SteadyState(float(r.mean()), float(r.std()), float(slope),
                       float(stderr), n)


def fit_decay_rate(times, values, window):
    """Slope of ``log|values|`` against time over ``window`` (least squares)."""
    t = np.asarray(times)
    sel = (t >= window[0]) & (t <= window[1])
    if sel.sum() < 2:
        raise WindowTooShort("decay window holds fewer than two samples")
    y = np.log(np.abs(np.asarray(values)[sel]))
    return float(np.polyfit(t[sel], y, 1)[0])


def echo_time(nodes):
    """Recurrence time ``2 pi / min gap`` of a discrete frequency grid."""
    w = np.sort(np.asarray(nodes, dtype=float))
    if w.size < 2:
        return np.inf
    gap = np.min(np.diff(w))
    return np.inf if gap <= 0 else 2 * np.pi / gap


# -- finite-N --------------------------------------------------------------

def _initial_phases(config, n):
    init = config.init
    if isinstance(init, UniformPhases):
        rng = np.random.default_rng(init.seed)
        return rng.uniform(0.0, 2 * np.pi, n)
    eps = float(init.epsilon)
    if not abs(eps) < 0.5:
        raise ValueError("SmallCoherence needs |epsilon| < 1/2")
    # invert (t + 2 eps sin t)/(2 pi) at the quantile midpoints by Newton
    p = 2 * np.pi * (np.arange(n) + 0.5) / n
    th = p.copy()
    for _ in range(50):
        step = (th + 2 * eps * np.sin(th) - p) / (1 + 2 * eps * np.cos(th))
        th -= step
        if np.max(np.abs(step)) < 1e-15:
            break
    rng = np.random.default_rng(config.seed)
    return rng.permutation(th)


def simulate_finite_n(config, omega=None, theta0=None):
    """Integrate the finite-``N`` model with classical RK4 at fixed ``dt``.

    ``omega`` and ``theta0`` override the sampled frequencies and the
    initial phases (both length ``n``).
    """
    n = int(config.n)
    if omega is None:
        scheme = "quantile" if config.sampling == "quantile" else "seeded"
        omega = sample(config.model, n, scheme, seed=config.seed)
    omega = np.asarray(omega, dtype=float)
    theta = (np.asarray(theta0, dtype=float).copy() if theta0 is not None
             else _initial_phases(config, n))
    if omega.shape != (n,) or theta.shape != (n,):
        raise ValueError("omega and theta0 must have length n")
    p = config.params
    K = p.K
    c1 = np.exp(1j * p.alpha1)
    c2 = p.h * np.exp(2j * p.alpha2)

    def rhs(th):
        z = np.exp(1j * th)
        z2 = z * z
        e1 = z.mean()
        e2 = z2.mean()
        zc = np.conj(z)
        return omega + K * (np.imag(c1 * e1 * zc) + np.imag(c2 * e2 * zc * zc))

    dt = config.dt
    steps = int(round(config.t_end / dt))
    times = np.arange(steps + 1) * dt
    eta1 = np.empty(steps + 1, complex)
    eta2 = np.empty(steps + 1, complex)
    z = np.exp(1j * theta)
    eta1[0], eta2[0] = z.mean(), (z * z).mean()
    twopi = 2 * np.pi
    for s in range(1, steps + 1):
        k1 = rhs(theta)
        k2 = rhs(theta + 0.5 * dt * k1)
        k3 = rhs(theta + 0.5 * dt * k2)
        k4 = rhs(theta + dt * k3)
        theta = np.mod(theta + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4), twopi)
        z = np.exp(1j * theta)
        eta1[s] = z.mean()
        eta2[s] = (z * z).mean()
    meta = {"simulator": "finite-n", "config_hash": config_hash(config),
            "burn_in": config.burn_in, "n": n,
            "max_abs_eta": float(max(np.abs(eta1).max(), np.abs(eta2).max()))}
    return Trace(times, eta1, eta2, meta)


# -- Galerkin --------------------------------------------------------------

def _nodes(config):
    if config.node_scheme not in ("quantile", "QuantileMidpoint"):
        raise ValueError(f"unknown node scheme {config.node_scheme!r}")
    return sample(config.model, int(config.m_nodes), "quantile")


def _if_rk4(Z, N, E, Eh, dt):
    """One integrating-factor RK4 step for ``dZ/dt = L Z + N(Z)``."""
    k1 = N(Z)
    k2 = N(Eh * (Z + 0.5 * dt * k1))
    k3 = N(Eh * Z + 0.5 * dt * k2)
    k4 = N(E * Z + dt * (Eh * k3))
    return E * Z + dt / 6.0 * (E * k1 + 2.0 * Eh * (k2 + k3) + k4)


def _galerkin_rhs(J, M, K, fp, closure):
    """Nonlinear part ``i j K sum_l f_l eta_l Z_{j-l}`` on a ``(J, M)`` array."""
    j = np.arange(1, J + 1)[:, None]
    fl = {l: fp.coefficient(l) for l in (1, -1, 2, -2)}
    active = [l for l in fl if fl[l] != 0]
    ext = np.zeros((J + 5, M), complex)  # rows hold Z_k for k = -2..J+2
    ext[2] = 1.0

    def N(Z):
        ext[3:J + 3] = Z
        ext[1] = np.conj(Z[0])
        ext[0] = np.conj(Z[1])
        if closure == "poisson":
            ext[J + 3] = Z[0] * Z[J - 1]
            ext[J + 4] = Z[0] * ext[J + 3]
        e1 = Z[0].mean()
        e2 = Z[1].mean()
        eta = {1: e1, -1: np.conj(e1), 2: e2, -2: np.conj(e2)}
        acc = np.zeros((J, M), complex)
        for l in active:
            # rows j - l for j = 1..J start at index 3 - l
            acc += (fl[l] * eta[l]) * ext[3 - l:3 - l + J]
        return 1j * K * j * acc

    return N


def simulate_galerkin(config, record_modes=False):
    """Evolve the truncated mode system on quantile frequency nodes.

    Returns a :class:`Trace` of ``eta_1``, ``eta_2``.  ``meta`` records the
    largest ``|Z_j(w)|`` seen (``max_abs_Z``), the final mean ``|Z_J|`` and,
    with ``record_modes``, the final mode array under ``"Z_final"``.

    Raises
    ------
    ClosureOverflow
        If the mean of ``|Z_J|`` over nodes exceeds 0.5 or the state becomes
        non-finite.
    FloatingPointError
        With ``enforce_bound``, on ``|Z_j(w)| > 1 + 1e-6``.
    """
    J, M = int(config.j_max), int(config.m_nodes)
    w = _nodes(config)
    fp = fourier_pair(config.params)
    K = config.params.K
    j = np.arange(1, J + 1)[:, None]
    damp = config.sponge_strength * (j / J) ** config.sponge_power
    L = 1j * j * w[None, :] - damp
    dt = config.dt
    E, Eh = np.exp(L * dt), np.exp(L * dt / 2)
    N = _galerkin_rhs(J, M, K, fp, config.closure)

    Z = np.zeros((J, M), complex)
    eps = config.init_amplitude
    if config.init_profile == "uniform":
        Z[0] = eps
    else:
        Z[:] = (eps ** np.arange(1, J + 1))[:, None]

    steps = int(round(config.t_end / dt))
    times = np.arange(steps + 1) * dt
    eta1 = np.empty(steps + 1, complex)
    eta2 = np.empty(steps + 1, complex)
    eta1[0], eta2[0] = Z[0].mean(), Z[1].mean()
    max_abs = float(np.abs(Z).max())
    for s in range(1, steps + 1):
        Z = _if_rk4(Z, N, E, Eh, dt)
        eta1[s], eta2[s] = Z[0].mean(), Z[1].mean()
        if s % 10 == 0 or s == steps:
            a = np.abs(Z)
            m = float(a.max())
            if not np.isfinite(m) or a[J - 1].mean() > 0.5:
                raise ClosureOverflow(
                    f"mean |Z_J| = {a[J - 1].mean():.3g} at t = {times[s]:.4g}; "
                    f"increase j_max")
            max_abs = max(max_abs, m)
            if config.enforce_bound and m > 1 + BOUND_TOL:
                raise FloatingPointError(
                    f"|Z_j| reached {m:.8f} at t = {times[s]:.4g}")
    meta = {"simulator": "galerkin", "config_hash": config_hash(config),
            "burn_in": config.burn_in, "j_max": J, "m_nodes": M,
            "max_abs_Z": max_abs,
            "mean_abs_ZJ": float(np.abs(Z[J - 1]).mean()),
            "max_abs_eta": float(max(np.abs(eta1).max(), np.abs(eta2).max())),
            "echo_time": echo_time(w)}
    if record_modes:
        meta["Z_final"] = Z
        meta["nodes"] = w
    return Trace(times, eta1, eta2, meta)


def simulate_linearized(config, j, phi, psi):
    """Evolve one linear mode ``dZ_j/dt = i j w Z_j + i j K f_j <Z_j>``.

    ``Z_j(0, w) = phi(w)`` on the quantile nodes; the record is the discrete
    weak pairing ``(1/M) sum_m Z_j(t, w_m) psi(w_m)``.  Any ``j >= 1`` is
    accepted; for ``j >= 3`` the coupling coefficient vanishes and the mode
    streams freely.  The Galerkin sponge is not applied here.
    """
    j = int(j)
    if j < 1:
        raise ValueError("j must be positive")
    w = _nodes(config)
    fj = fourier_pair(config.params).coefficient(j)
    c = 1j * j * config.params.K * fj
    dt = config.dt
    L = 1j * j * w
    E, Eh = np.exp(L * dt), np.exp(L * dt / 2)
    N = lambda Z: np.full_like(Z, c * Z.mean())
    Z = np.asarray(phi(w), dtype=complex).copy()
    psi_w = np.asarray(psi(w), dtype=complex)
    steps = int(round(config.t_end / dt))
    times = np.arange(steps + 1) * dt
    pair = np.empty(steps + 1, complex)
    pair[0] = np.mean(Z * psi_w)
    for s in range(1, steps + 1):
        Z = _if_rk4(Z, N, E, Eh, dt)
        pair[s] = np.mean(Z * psi_w)
    return LinearTrace(times, pair, {"j": j, "echo_time": echo_time(w),
                                     "config_hash": config_hash(config)})
