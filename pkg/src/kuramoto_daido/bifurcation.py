"""Amplitude equations on the center manifold and their fixed points.

With ``eps = K - K_c`` and the critical amplitude written ``r e^{i psi}``,
the reduced dynamics near the transition are

    dr/dt = Re(p1) eps r + Re(p3) r^3      (h = 0, pitchfork)
    dr/dt = Re(p1) eps r + Re(p2) r^2      (h != 0, transcritical)

with

    p1 = -1 / (i K_c^2 f1 D'(i y_c))
    p3 = K_c^2 D''(i y_c) / (8 D'(i y_c))
    p2 = 2 i K_c f2 cos(alpha1) / (1 - f2/f1).

``D'`` and ``D''`` are boundary values on the imaginary axis obtained from
Hilbert transforms of ``g'`` and ``g''``.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import AssumptionViolation, NoBranch
from .spectral import (D_boundary, check_assumptions, critical_point,
                       fourier_pair, transition_curve_roots)

__all__ = [
    "BifurcationCoefficients",
    "FixedPoint",
    "ReducedFlow",
    "OrderParameterPrediction",
    "SmallAlphaEstimate",
    "coefficients",
    "fixed_point",
    "reduced_flow",
    "predicted_order_parameter",
    "small_alpha_yc",
    "outside_validity",
    "VALIDITY_FRACTION",
]

#: |K - K_c| beyond this fraction of K_c is flagged as outside leading order
VALIDITY_FRACTION = 0.2


def _cjson(z):
    return None if z is None else [float(np.real(z)), float(np.imag(z))]


@dataclass(frozen=True)
class BifurcationCoefficients:
    K_c: float
    y_c: float
    alpha1: float
    h: float
    f1: complex
    f2: complex
    Dp: complex
    Dpp: complex
    p1: complex
    p3: complex
    p2: Optional[complex] = None

    @property
    def kind(self):
        return "pitchfork" if self.h == 0 else "transcritical"

    @property
    def nonlinear(self):
        """The coefficient governing the branch: ``p3`` or ``p2``."""
        return self.p3 if self.h == 0 else self.p2

    @property
    def criticality(self):
        return "supercritical" if self.nonlinear.real < 0 else "subcritical"

    @property
    def verdict(self):
        """E.g. ``"subcritical, branch below K_c, unstable"``."""
        if self.criticality == "supercritical":
            return "supercritical, branch above K_c, stable"
        return "subcritical, branch below K_c, unstable"

    def to_dict(self):
        return {
            "K_c": self.K_c, "y_c": self.y_c, "alpha1": self.alpha1,
            "h": self.h, "f1": _cjson(self.f1), "f2": _cjson(self.f2),
            "Dp": _cjson(self.Dp), "Dpp": _cjson(self.Dpp),
            "p1": _cjson(self.p1), "p2": _cjson(self.p2), "p3": _cjson(self.p3),
            "kind": self.kind, "criticality": self.criticality,
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, d):
        c = lambda v: None if v is None else complex(v[0], v[1])
        return cls(d["K_c"], d["y_c"], d["alpha1"], d["h"], c(d["f1"]),
                   c(d["f2"]), c(d["Dp"]), c(d["Dpp"]), c(d["p1"]),
                   c(d["p3"]), c(d.get("p2")))


def coefficients(model, params, method="auto"):
    """Coefficients of the reduced equation at the transition point.

    Raises
    ------
    AssumptionViolation
        If A1, A3 or A4 fails; ``exc.assumption`` names the first failure.
    """
    report = check_assumptions(model, params)
    for name, ok in (("A1", report.a1), ("A3", report.a3), ("A4", report.a4)):
        if not ok:
            raise AssumptionViolation(name, f"check failed: {report.witnesses}")
    cp = critical_point(model, params)
    fp = fourier_pair(params)
    Dp = D_boundary(model, cp.y_c, 1, method)
    Dpp = D_boundary(model, cp.y_c, 2, method)
    Kc = cp.K_c
    p1 = -1.0 / (1j * Kc ** 2 * fp.f1 * Dp)
    p3 = Kc ** 2 * Dpp / (8.0 * Dp)
    p2 = None
    if params.h != 0:
        p2 = 2j * Kc * fp.f2 * np.cos(params.alpha1) / (1.0 - fp.f2 / fp.f1)
    return BifurcationCoefficients(Kc, cp.y_c, params.alpha1, params.h,
                                   fp.f1, fp.f2, Dp, Dpp, p1, p3, p2)


@dataclass(frozen=True)
class FixedPoint:
    r0: float
    side: str  # "above" or "below" K_c
    stable: bool


def fixed_point(coeffs, K):
    """Leading-order nontrivial branch at coupling ``K``, or ``None``.

    The branch exists above ``K_c`` and is stable in the supercritical case,
    and exists below ``K_c`` and is unstable in the subcritical case.
    """
    eps = float(K) - coeffs.K_c
    a = coeffs.p1.real
    b = coeffs.nonlinear.real
    supercritical = b < 0
    side = "above" if supercritical else "below"
    if eps == 0:
        return FixedPoint(0.0, side, supercritical)
    if (eps > 0) != supercritical:
        return None
    if coeffs.h == 0:
        r0 = np.sqrt(-a * eps / b)
    else:
        r0 = -a * eps / b
    return FixedPoint(float(r0), side, supercritical)


@dataclass(frozen=True)
class ReducedFlow:
    dr_dt: float
    dpsi_dt_order: float


def reduced_flow(coeffs, K, r):
    """Right side of the truncated amplitude equation and the phase drift.

    ``dpsi_dt_order`` is ``Im(p1) eps + Im(p3) r^2`` (or ``Im(p2) r``), the
    leading-order drift of the phase relative to the frame rotating at
    ``y_c``.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    eps = float(K) - coeffs.K_c
    p1, q = coeffs.p1, coeffs.nonlinear
    if coeffs.h == 0:
        dr = p1.real * eps * r + q.real * r ** 3
        dpsi = p1.imag * eps + q.imag * r ** 2
    else:
        dr = p1.real * eps * r + q.real * r ** 2
        dpsi = p1.imag * eps + q.imag * r
    return ReducedFlow(float(dr), float(dpsi))


@dataclass(frozen=True)
class OrderParameterPrediction:
    amplitude: float
    velocity: float
    velocity_drift: float
    phase_offset: complex

    @property
    def velocity_corrected(self):
        """``y_c`` plus the phase drift at the fixed point."""
        return self.velocity + self.velocity_drift


def predicted_order_parameter(coeffs, K):
    """Leading-order ``eta_1(t) ~ amplitude * phase_offset * e^{i velocity t}``.

    Raises
    ------
    NoBranch
        If no branch exists at ``K``.
    """
    fp = fixed_point(coeffs, K)
    if fp is None:
        raise NoBranch(f"no {coeffs.criticality} branch at K={K}")
    offset = 1.0 / (2j * coeffs.f1)
    amp = fp.r0 * abs(offset)
    drift = reduced_flow(coeffs, K, fp.r0).dpsi_dt_order
    return OrderParameterPrediction(float(amp), coeffs.y_c, drift, complex(offset))


def outside_validity(coeffs, K):
    return abs(float(K) - coeffs.K_c) > VALIDITY_FRACTION * coeffs.K_c


@dataclass(frozen=True)
class SmallAlphaEstimate:
    estimate_plus: float
    estimate_minus: float
    root_value: float


def small_alpha_yc(model, alpha1):
    """Linear-in-``alpha1`` estimates of ``y_c`` next to the true root.

    Implicit differentiation of ``tan(a) g(y) = H[g](y)`` at the origin
    gives ``y ~ +g(0)/H[g]'(0) a``; the opposite sign is reported as
    ``estimate_minus`` so both can be compared with the root.
    """
    alpha1 = float(alpha1)
    if not abs(alpha1) < 0.3:
        raise ValueError("small_alpha_yc expects |alpha1| < 0.3")
    slope = float(model.pdf(0.0) / model.hilbert_closed(0.0, 1))
    roots = transition_curve_roots(model, alpha1)
    if not roots:
        root = float("nan")
    else:
        root = max(roots, key=lambda y: (model.pdf(y), -abs(y)))
    return SmallAlphaEstimate(slope * alpha1, -slope * alpha1, float(root))
