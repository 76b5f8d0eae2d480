"""Orchestration: single runs, sweeps and predicted-vs-measured verification."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from ..bifurcation import (coefficients, fixed_point, outside_validity,
                           predicted_order_parameter)
from ..errors import ClosureOverflow, KuramotoDaidoError, NoConvergence
from ..simulate import (FiniteNConfig, GalerkinConfig, SmallCoherence,
                        fit_decay_rate, measure_steady_state,
                        simulate_finite_n, simulate_galerkin,
                        simulate_linearized)
from ..spectral import (P0, check_assumptions, critical_point,
                        fourier_pair, generalized_eigenvalue_solve)

__all__ = ["SweepRow", "VerificationRow", "VerificationReport",
           "simulation_config", "run_simulation", "sweep", "verify",
           "SWEEP_COLUMNS"]

SWEEP_COLUMNS = ("K", "r_measured", "r_std", "velocity_measured",
                 "r0_predicted", "velocity_predicted", "status")

#: velocity tolerance floor when the predicted velocity is zero
VELOCITY_FLOOR = 1e-2
DECAY_WINDOW = (2.0, 15.0)


def simulation_config(spec, K):
    model = spec.model()
    params = spec.params(K)
    if spec.simulator == "finite-n":
        return FiniteNConfig(spec.n, model, params, spec.dt, spec.t_end,
                             spec.burn_in, "quantile", spec.seed,
                             SmallCoherence(spec.eps))
    return GalerkinConfig(model, params, spec.j_max, spec.m_nodes,
                          dt=spec.dt, t_end=spec.t_end, burn_in=spec.burn_in,
                          init_amplitude=spec.eps)


def run_simulation(spec, K):
    cfg = simulation_config(spec, K)
    if isinstance(cfg, FiniteNConfig):
        return simulate_finite_n(cfg)
    return simulate_galerkin(cfg)


@dataclass
class SweepRow:
    K: float
    r_measured: float = float("nan")
    r_std: float = float("nan")
    velocity_measured: float = float("nan")
    r0_predicted: float = float("nan")
    velocity_predicted: float = float("nan")
    status: str = "ok"

    def csv_fields(self):
        return [repr(float(getattr(self, c))) if c != "status" else self.status
                for c in SWEEP_COLUMNS]


def _sweep_point(args):
    spec, K, coeff_dict = args
    from ..bifurcation import BifurcationCoefficients

    row = SweepRow(K)
    if coeff_dict is not None:
        coeffs = BifurcationCoefficients.from_dict(coeff_dict)
        fp = fixed_point(coeffs, K)
        row.r0_predicted = fp.r0 if fp is not None else 0.0
        row.velocity_predicted = coeffs.y_c
    try:
        trace = run_simulation(spec, K)
        m = measure_steady_state(trace)
        row.r_measured, row.r_std = m.r_mean, m.r_std
        row.velocity_measured = m.velocity
    except ClosureOverflow as exc:
        row.status = f"closure-overflow: {exc}"
    except (KuramotoDaidoError, FloatingPointError, ValueError) as exc:
        row.status = f"failed: {exc}"
    return row


def _map(fn, items, jobs):
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _coefficients_or_none(model, params):
    try:
        return coefficients(model, params)
    except KuramotoDaidoError:
        return None


def sweep(spec):
    """Simulate and measure at every ``K`` of the grid (ordered result)."""
    grid = spec.K_grid()
    model = spec.model()
    coeffs = _coefficients_or_none(model, spec.params(grid[0]))
    cd = coeffs.to_dict() if coeffs is not None else None
    return _map(_sweep_point, [(spec, K, cd) for K in grid], spec.jobs)


@dataclass
class VerificationRow:
    K: float
    r0_predicted: Optional[float]
    r_measured: float
    r_std: float
    velocity_predicted: Optional[float]
    velocity_measured: float
    within_tolerance: bool
    regime: str
    notes: list = field(default_factory=list)


@dataclass
class VerificationReport:
    rows: list
    coefficients: Optional[dict]
    critical_point: Optional[dict]
    assumptions: dict
    checks: dict
    passed: bool

    def to_dict(self):
        return {"rows": [asdict(r) for r in self.rows],
                "coefficients": self.coefficients,
                "critical_point": self.critical_point,
                "assumptions": self.assumptions,
                "checks": self.checks, "passed": self.passed}


def _rel_ok(measured, predicted, tol, floor=0.0):
    scale = max(abs(predicted), floor)
    return bool(np.isfinite(measured) and abs(measured - predicted) <= tol * scale)


def _verify_point(args):
    """Tolerance rules.

    Stable branch (K on the supercritical side): ``|r - r0| <= amp_tol r0``
    and ``|v - y_c| <= vel_tol max(|y_c|, 0.01)``.  No stable branch: the
    final ``|eta_1|`` must lie below the initial amplitude and, for a
    first-harmonic run below ``K_c``, the fitted decay rate of the linear
    pairing must be within ``decay_tol`` of ``Re lam_gen``.
    """
    spec, K, cd = args
    from ..bifurcation import BifurcationCoefficients

    coeffs = BifurcationCoefficients.from_dict(cd)
    fp = fixed_point(coeffs, K)
    notes = []
    if outside_validity(coeffs, K):
        notes.append("outside leading-order validity window")
    stable_branch = fp is not None and fp.stable
    try:
        trace = run_simulation(spec, K)
    except ClosureOverflow as exc:
        return VerificationRow(K, fp.r0 if fp else None, float("nan"),
                               float("nan"), coeffs.y_c, float("nan"),
                               False, "escaped", notes + [str(exc)])
    m = measure_steady_state(trace)
    if stable_branch and K > coeffs.K_c:
        pred = predicted_order_parameter(coeffs, K)
        ok_r = _rel_ok(m.r_mean, pred.amplitude, spec.amplitude_tol)
        ok_v = _rel_ok(m.velocity, pred.velocity, spec.velocity_tol, VELOCITY_FLOOR)
        if not ok_r:
            notes.append("amplitude outside tolerance")
        if not ok_v:
            notes.append("velocity outside tolerance")
        notes.append(f"velocity with first-order drift: {pred.velocity_corrected:.6g}")
        return VerificationRow(K, pred.amplitude, m.r_mean, m.r_std,
                               pred.velocity, m.velocity, ok_r and ok_v,
                               "branch", notes)
    final = float(np.abs(trace.eta1[-1]))
    ok = final < abs(spec.eps)
    if not ok:
        notes.append(f"|eta_1| grew to {final:.3g} from {spec.eps:.3g}")
    return VerificationRow(K, fp.r0 if fp else None, m.r_mean, m.r_std,
                           None, m.velocity, ok, "incoherent", notes)


def decay_check(spec, K, model=None):
    """Fit the linear first-harmonic pairing decay and compare to ``Re lam_gen``."""
    model = model or spec.model()
    params = spec.params(K)
    lam_seed = 1j * K * fourier_pair(params).f1
    try:
        lam = generalized_eigenvalue_solve(model, params, lam_seed)
    except (NoConvergence, KuramotoDaidoError) as exc:
        return {"K": K, "ok": False, "error": str(exc)}
    cfg = GalerkinConfig(model, params, spec.j_max, spec.m_nodes, dt=spec.dt,
                         t_end=DECAY_WINDOW[1] + 1.0, burn_in=0.0)
    lt = simulate_linearized(cfg, 1, P0(), P0())
    t_hi = min(DECAY_WINDOW[1], 0.8 * lt.meta["echo_time"])
    rate = fit_decay_rate(lt.times, lt.pairing, (DECAY_WINDOW[0], t_hi))
    ok = _rel_ok(rate, lam.real, spec.decay_tol)
    return {"K": K, "rate": rate, "predicted": lam.real, "window": [DECAY_WINDOW[0], t_hi],
            "ok": ok}


def verify(spec):
    """Run the prediction-vs-simulation battery for one configuration."""
    model = spec.model()
    grid = spec.K_grid(required=False)
    params = spec.params(grid[0] if grid else None)
    report = check_assumptions(model, params)
    checks = {}
    try:
        cp = critical_point(model, params)
    except KuramotoDaidoError as exc:
        return VerificationReport([], None, None, report.to_dict(),
                                  {"critical_point": str(exc)}, False)
    coeffs = _coefficients_or_none(model, params)
    if coeffs is None:
        return VerificationReport([], None, cp.to_dict(), report.to_dict(),
                                  {"coefficients": "assumptions failed"}, False)
    if not grid:
        # default points on the side where the branch exists
        factors = (1.05, 1.10) if coeffs.criticality == "supercritical" else (0.97,)
        grid = [f * cp.K_c for f in factors]
    rows = _map(_verify_point, [(spec, K, coeffs.to_dict()) for K in grid],
                spec.jobs)
    passed = all(r.within_tolerance for r in rows)
    below = [K for K in grid if K < cp.K_c]
    if below:
        checks["decay"] = [decay_check(spec, K, model) for K in below]
        passed = passed and all(c["ok"] for c in checks["decay"])
    return VerificationReport(rows, coeffs.to_dict(), cp.to_dict(),
                              report.to_dict(), checks, passed)
