"""Spectral function, eigenvalue problems and the transition point.

The linearization of the mode equations around the incoherent state has
eigenvalues given by ``D(lam) = 1 / (i K f_1)`` where

    D(lam) = int g(w) / (lam - i w) dw.

``D`` is holomorphic for ``Re lam > 0`` and is continued across the imaginary
axis into ``Re lam > -strip`` (the "second sheet").  Roots of the continued
equation with ``Re lam <= 0`` are generalized eigenvalues; tracking one
root as ``K`` grows shows it crossing the axis at ``K = K_c``, ``lam = i y_c``.

Every function accepting ``method`` supports ``"auto"`` (closed forms of the
density model) and ``"quadrature"`` (generic integrals), so that the two can
be checked against each other.
"""
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy import optimize

from . import quadrature
from .densities import DensityModel
from .errors import (AmbiguousMaximizer, AssumptionViolation, AtSingularity,
                     DegenerateEigenvalue, InvalidHarmonic, NoConvergence,
                     NoRoots, StripViolation)

__all__ = [
    "CouplingParams",
    "FourierPair",
    "CriticalPoint",
    "AssumptionReport",
    "TestFunction",
    "P0",
    "CauchyPole",
    "EigenPathPoint",
    "fourier_pair",
    "D",
    "D_boundary",
    "D2",
    "characteristic",
    "eigenvalue_solve",
    "generalized_eigenvalue_solve",
    "track_eigenvalue",
    "transition_curve_roots",
    "critical_point",
    "transversality_slope",
    "check_assumptions",
    "pairing",
    "resolvent_bilinear",
    "projection_coefficient",
    "eigenfunction",
]

NEWTON_MAXITER = 200
RESIDUAL_TOL = 1e-10
TIE_RTOL = 1e-9
SCAN_POINTS = 2000


# -- parameters ------------------------------------------------------------

@dataclass(frozen=True)
class CouplingParams:
    """Coupling ``f(t) = sin(t + alpha1) + h sin 2(t + alpha2)`` with strength ``K``.

    Construction rejects ``K <= 0`` and ``cos(alpha1) <= 0``.  Use
    :meth:`unchecked` to build an instance that skips the phase-lag check,
    e.g. for reporting on assumption violations.
    """

    K: float
    alpha1: float = 0.0
    alpha2: float = 0.0
    h: float = 0.0
    checked: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        for name in ("K", "alpha1", "alpha2", "h"):
            object.__setattr__(self, name, float(getattr(self, name)))
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.K > 0:
            raise ValueError(f"K must be positive, got {self.K}")
        if self.checked and not np.cos(self.alpha1) > 0:
            raise AssumptionViolation(
                "A1", f"cos(alpha1) = {np.cos(self.alpha1):.6g} is not positive")

    @classmethod
    def unchecked(cls, K, alpha1=0.0, alpha2=0.0, h=0.0):
        return cls(K, alpha1, alpha2, h, checked=False)

    def with_K(self, K):
        return replace(self, K=float(K))

    def to_dict(self):
        return {"K": self.K, "alpha1": self.alpha1, "alpha2": self.alpha2,
                "h": self.h}


@dataclass(frozen=True)
class FourierPair:
    """Fourier coefficients ``f_1``, ``f_2`` of the coupling (``f_{-j} = conj f_j``)."""

    f1: complex
    f2: complex

    def coefficient(self, j):
        """``f_j`` for any integer ``j``; zero for ``|j| not in {1, 2}``."""
        if j in (1, 2):
            return self.f1 if j == 1 else self.f2
        if j in (-1, -2):
            return np.conj(self.coefficient(-j))
        return 0j


def fourier_pair(params):
    """Return the coefficients ``f_1 = (sin a1 - i cos a1)/2`` and
    ``f_2 = (h/2)(sin 2a2 - i cos 2a2)``."""
    a1, a2, h = params.alpha1, params.alpha2, params.h
    f1 = 0.5 * complex(np.sin(a1), -np.cos(a1))
    f2 = 0.5 * h * complex(np.sin(2 * a2), -np.cos(2 * a2))
    return FourierPair(f1, f2)


# -- the spectral function -------------------------------------------------

def _check_half_plane(model, lam, factor=1.0):
    if not lam.real > -factor * model.strip:
        raise StripViolation(
            f"Re(lambda) = {lam.real:.6g} is outside the continuation region "
            f"Re > {-factor * model.strip:.6g}")


def D(model: DensityModel, lam, n: int = 0, method: str = "auto") -> complex:
    """``n``-th derivative (``n`` in 0, 1, 2) of the continued ``D(lam)``.

    Parameters
    ----------
    model : DensityModel
    lam : complex
        Must satisfy ``Re lam > -model.strip``.
    n : int
    method : {"auto", "quadrature", "shifted"}
        ``"auto"`` uses the model's closed form.  ``"quadrature"`` applies the
        three-branch rule (raw integral, boundary value, raw integral plus
        ``2 pi (-i)^n g^(n)(-i lam)``) to ``i^-n int g^(n)(w)/(lam - i w) dw``.
        ``"shifted"`` integrates along ``Im w = s`` inside the strip, which
        is valid on both sides of the axis without case distinction.
    """
    if n not in (0, 1, 2):
        raise ValueError("n must be 0, 1 or 2")
    lam = complex(lam)
    _check_half_plane(model, lam)
    if method == "auto":
        return complex(model.cauchy_closed(lam, n))
    fn = lambda w: model.derivative(w, n)
    factor = (-1j) ** n
    if method == "quadrature":
        f_real = lambda w: fn(np.asarray(w, dtype=float))
        val = quadrature.continued_cauchy(f_real, fn, lam, model.scale,
                                          model.centers)
        return complex(factor * val)
    if method == "shifted":
        # a shallow shift keeps entire densities (Gaussian) from growing
        s = min(0.95 * model.strip,
                max(0.5 * model.scale, -lam.real + 0.5 * model.scale))
        if not lam.real > -s:
            raise StripViolation("shifted contour cannot reach this lambda")
        c = float(np.mean(model.centers))
        val = quadrature.shifted_cauchy(fn, lam, s, model.scale, c, tol=1e-9)
        return complex(factor * val)
    raise ValueError(f"unknown method {method!r}")


def D_boundary(model, y, n=0, method="auto"):
    """Boundary value ``D^(n)(i y)`` from the right half plane.

    Computed as ``i^-n (pi g^(n)(y) - i pi H[g^(n)](y))`` using the Hilbert
    transform derivatives, never by differencing ``D`` off the axis.
    """
    from .densities import hilbert_derivative

    y = float(y)
    gn = complex(model.derivative(y, n)).real
    hmethod = "auto" if method == "auto" else "quadrature"
    hn = float(hilbert_derivative(model, y, n, method=hmethod))
    return complex((1j) ** (-n) * (np.pi * gn - 1j * np.pi * hn))


def D2(model, lam, method="auto"):
    """``int g(w) / (lam - 2 i w) dw`` continued, equal to ``D(lam/2)/2``."""
    lam = complex(lam)
    return 0.5 * D(model, lam / 2.0, 0, method)


def characteristic(model, params, lam, method="auto"):
    """``1 - i K f_1 D(lam)``; its zeros are the (generalized) eigenvalues of T_1."""
    f1 = fourier_pair(params).f1
    return 1.0 - 1j * params.K * f1 * D(model, lam, 0, method)


# -- root finding ----------------------------------------------------------

def _damped_newton(F, dF, seed, accept=lambda z: True, maxiter=NEWTON_MAXITER,
                   tol=RESIDUAL_TOL):
    """Complex Newton with step halving on residual increase.

    Returns ``(root, converged)``.  ``accept`` restricts iterates (e.g. to the
    right half plane); a step is halved until it is accepted and decreases
    the residual, up to 30 times.
    """
    z = complex(seed)
    try:
        fz = F(z)
    except StripViolation:
        return z, False
    # iterate past ``tol`` while the residual still drops, for a polished root
    for _ in range(maxiter):
        if abs(fz) < 1e-4 * tol:
            return z, True
        d = dF(z)
        if d == 0 or not np.isfinite(d):
            return z, False
        step = fz / d
        for _ in range(30):
            cand = z - step
            if accept(cand):
                try:
                    fc = F(cand)
                except StripViolation:
                    fc = None
                if fc is not None and np.isfinite(fc) and abs(fc) < abs(fz):
                    break
            step *= 0.5
        else:
            return z, abs(fz) < tol
        z, fz = cand, fc
    return z, abs(fz) < tol


def eigenvalue_solve(model, params, j=1, seed=None, method="auto") -> Optional[complex]:
    """Eigenvalue of ``T_j`` (``j`` in 1, 2) in the open right half plane.

    Solves ``D(lam) = 1/(i K f_1)`` for ``j = 1`` or
    ``D2(lam) = 1/(2 i K f_2)`` for ``j = 2`` by damped Newton from ``seed``
    (default ``i j K f_j + 1``).  Returns ``None`` when the iteration cannot
    stay in ``Re lam > 0`` or does not converge within 200 steps.

    Raises
    ------
    InvalidHarmonic
        If ``f_j = 0``.
    """
    fp = fourier_pair(params)
    fj = fp.coefficient(j) if j in (1, 2) else 0j
    if fj == 0:
        raise InvalidHarmonic(f"f_{j} vanishes; T_{j} has continuous spectrum only")
    K = params.K
    if seed is None:
        seed = 1j * j * K * fj
        seed = complex(abs(seed.real) + 1.0, seed.imag)
    if j == 1:
        F = lambda z: 1.0 - 1j * K * fj * D(model, z, 0, method)
        dF = lambda z: -1j * K * fj * D(model, z, 1, method)
    else:
        F = lambda z: 1.0 - 2j * K * fj * D2(model, z, method)
        dF = lambda z: -2j * K * fj * 0.25 * D(model, z / 2.0, 1, method)
    root, ok = _damped_newton(F, dF, seed, accept=lambda z: z.real > 0)
    if not ok or not root.real > 0:
        return None
    return root


def generalized_eigenvalue_solve(model, params, seed, method="auto") -> complex:
    """Root of the continued equation ``1 - i K f_1 D(lam) = 0``.

    Works on both sides of the imaginary axis, within ``Re lam > -strip``.

    Raises
    ------
    NoConvergence
        If damped Newton does not reach residual ``1e-10``.
    """
    f1 = fourier_pair(params).f1
    K = params.K
    F = lambda z: 1.0 - 1j * K * f1 * D(model, z, 0, method)
    dF = lambda z: -1j * K * f1 * D(model, z, 1, method)
    inside = lambda z: z.real > -model.strip
    root, ok = _damped_newton(F, dF, seed, accept=inside)
    if not ok:
        raise NoConvergence(
            f"no generalized eigenvalue near {complex(seed)} at K={K:.6g}")
    return root


@dataclass(frozen=True)
class EigenPathPoint:
    K: float
    lam: Optional[complex]
    branch: str  # "ordinary", "generalized" or "failed"
    error: str = ""


def track_eigenvalue(model, params, K_values, K_c=None, method="auto"):
    """Follow the critical (generalized) eigenvalue along a grid of ``K``.

    Starts at ``K = 2 K_c`` from the large-coupling seed ``i K f_1`` and
    continues with steps no larger than ``K_c / 50``, using the previous
    root as the next seed.  Points that fail are flagged and the walk
    resumes from the last good root.
    """
    K_values = [float(k) for k in K_values]
    if not K_values:
        return []
    if K_c is None:
        K_c = critical_point(model, params).K_c
    f1 = fourier_pair(params).f1
    K0 = 2.0 * K_c
    lam0 = generalized_eigenvalue_solve(model, params.with_K(K0),
                                        1j * K0 * f1, method)
    dK = K_c / 50.0
    results = {}

    def walk(targets):
        lam, Kprev = lam0, K0
        for Kt in targets:
            n = max(1, int(np.ceil(abs(Kt - Kprev) / dK)))
            err = ""
            try:
                for K in np.linspace(Kprev, Kt, n + 1)[1:]:
                    lam = generalized_eigenvalue_solve(
                        model, params.with_K(K), lam, method)
                Kprev = Kt
            except (NoConvergence, StripViolation) as exc:
                err = str(exc)
            if err:
                results[Kt] = EigenPathPoint(Kt, None, "failed", err)
            else:
                branch = "ordinary" if lam.real > 0 else "generalized"
                results[Kt] = EigenPathPoint(Kt, lam, branch)

    walk(sorted((k for k in K_values if k < K0), reverse=True))
    walk(sorted(k for k in K_values if k >= K0))
    return [results[k] for k in K_values]


# -- transition point ------------------------------------------------------

def _curve_roots(model, t, interval):
    a, b = (float(v) for v in interval)
    if not a < b:
        raise ValueError("search interval must satisfy a < b")

    def F(y):
        return t * model.pdf(y) - model.hilbert_closed(y, 0)

    def dF(y):
        return t * complex(model.derivative(y, 1)).real - model.hilbert_closed(y, 1)

    ys = np.linspace(a, b, SCAN_POINTS)
    vals = F(ys)
    roots = []
    for i in range(len(ys) - 1):
        if vals[i] == 0.0:
            roots.append(float(ys[i]))
            continue
        if vals[i] * vals[i + 1] < 0:
            r = optimize.brentq(F, ys[i], ys[i + 1], xtol=1e-12,
                                rtol=4 * np.finfo(float).eps)
            for _ in range(3):
                d = dF(r)
                if d == 0:
                    break
                step = F(r) / d
                if abs(step) > ys[1] - ys[0]:
                    break
                r -= step
            roots.append(float(r))
    if vals[-1] == 0.0:
        roots.append(float(ys[-1]))
    return roots


def default_interval(model):
    c = model.centers
    return (min(c) - 10.0 * model.scale, max(c) + 10.0 * model.scale)


def transition_curve_roots(model, alpha1, search_interval=None):
    """Simple roots of ``tan(alpha1) g(y) = H[g](y)`` in ``search_interval``.

    Sign changes on a 2000-point grid are bracketed with Brent's method to
    ``1e-12`` and polished by Newton steps.
    """
    if not np.cos(alpha1) > 0:
        raise AssumptionViolation("A1", "cos(alpha1) must be positive")
    interval = search_interval or default_interval(model)
    return _curve_roots(model, float(np.tan(alpha1)), interval)


@dataclass(frozen=True)
class CriticalPoint:
    """Transition point of the incoherent state.

    ``roots_y`` are the roots of the first-harmonic curve; ``roots_y2`` the
    roots ``y'`` of ``tan(2 alpha2) g(y'/2) = H[g](y'/2)`` entering ``K_c2``.
    """

    roots_y: tuple
    y_c: float
    K_c: float
    K_c2: float
    unique_max: bool
    roots_y2: tuple = ()

    def to_dict(self):
        return {"roots_y": list(self.roots_y), "y_c": self.y_c, "K_c": self.K_c,
                "K_c2": self.K_c2 if np.isfinite(self.K_c2) else "inf",
                "unique_max": self.unique_max, "roots_y2": list(self.roots_y2)}


def critical_point(model, params, search_interval=None, strict=True):
    """``K_c``, ``y_c`` and the second-harmonic threshold ``K_c2``.

    ``K_c = 2 cos(alpha1) / (pi g(y_c))`` with ``y_c`` the root maximizing
    ``g``.  ``K_c2 = min_j 2 cos(2 alpha2) / (h pi g(y'_j / 2))`` over the
    second-harmonic roots; it is infinite when ``h cos(2 alpha2) <= 0``.

    Raises
    ------
    NoRoots
        If the first-harmonic curve has no root in the interval.
    AmbiguousMaximizer
        If ``strict`` and two roots tie in ``g`` within ``1e-9`` relative.
    """
    interval = search_interval or default_interval(model)
    a1 = params.alpha1
    roots = _curve_roots(model, float(np.tan(a1)), interval)
    if not roots:
        raise NoRoots(f"no transition root in {tuple(interval)}")
    gvals = np.array([model.pdf(y) for y in roots])
    order = np.argsort(gvals)[::-1]
    y_c = roots[order[0]]
    gmax = gvals[order[0]]
    unique = True
    if len(roots) > 1 and gmax - gvals[order[1]] < TIE_RTOL * gmax:
        unique = False
        if strict:
            raise AmbiguousMaximizer(
                f"roots {roots[order[0]]:.6g} and {roots[order[1]]:.6g} tie")
    K_c = 2.0 * np.cos(a1) / (np.pi * gmax)

    K_c2 = np.inf
    roots2 = ()
    h, a2 = params.h, params.alpha2
    c2 = np.cos(2 * a2)
    if h != 0.0 and h * c2 > 0:
        half = (interval[0], interval[1])
        s_roots = _curve_roots(model, float(np.tan(2 * a2)), half)
        roots2 = tuple(2.0 * s for s in s_roots)
        if s_roots:
            K_c2 = min(2.0 * c2 / (h * np.pi * model.pdf(s)) for s in s_roots)
    return CriticalPoint(tuple(roots), float(y_c), float(K_c), float(K_c2),
                         unique, roots2)


def transversality_slope(model, params, cp=None, method="auto"):
    """``d lam_c / dK`` at ``K_c``: ``-1 / (i K_c^2 f_1 D'(i y_c))``."""
    cp = cp or critical_point(model, params)
    f1 = fourier_pair(params).f1
    Dp = D_boundary(model, cp.y_c, 1, method)
    return -1.0 / (1j * cp.K_c ** 2 * f1 * Dp)


@dataclass
class AssumptionReport:
    """Outcome of the standing-assumption checks with witnessing numbers."""

    a1_cos: bool
    a1_threshold: bool
    a2: bool
    a3: bool
    a4: bool
    witnesses: dict

    @property
    def a1(self):
        return self.a1_cos and self.a1_threshold

    @property
    def all_pass(self):
        return self.a1 and self.a2 and self.a3 and self.a4

    def failed(self):
        names = []
        if not self.a1:
            names.append("A1")
        for name in ("a2", "a3", "a4"):
            if not getattr(self, name):
                names.append(name.upper())
        return names

    def to_dict(self):
        return {"A1": self.a1, "A1_cos": self.a1_cos,
                "A1_threshold": self.a1_threshold, "A2": self.a2,
                "A3": self.a3, "A4": self.a4, "witnesses": self.witnesses}


def _decay_bound_check(model, n=64):
    """Spot-check ``|g(z)| (1 + |z|^2)`` on the strip boundary stays bounded."""
    d = model.strip * (1 - 1e-9)
    x = np.concatenate([np.linspace(-50, 50, n) * model.scale,
                        np.array([1e3, 1e4]) * model.scale])
    vals = []
    for sign in (1, -1):
        z = x + sign * 1j * d
        vals.append(np.abs(model.pdf_complex(z)) * (1 + np.abs(z) ** 2))
    vals = np.concatenate(vals)
    C = float(np.max(vals))
    # bounded if the far tail does not exceed the bulk maximum
    return bool(np.all(np.isfinite(vals))), C


def check_assumptions(model, params, search_interval=None):
    """Evaluate the standing assumptions A1 to A4 without raising."""
    w = {"cos_alpha1": float(np.cos(params.alpha1))}
    a1_cos = w["cos_alpha1"] > 0
    try:
        a2, C = _decay_bound_check(model)
    except StripViolation:
        a2, C = False, float("nan")
    w["strip"] = float(model.strip)
    w["decay_constant"] = C
    try:
        cp = critical_point(model, params, search_interval, strict=False)
    except NoRoots as exc:
        w["error"] = str(exc)
        return AssumptionReport(a1_cos, False, a2, False, False, w)
    w.update(K_c=cp.K_c, K_c2=cp.K_c2 if np.isfinite(cp.K_c2) else "inf",
             y_c=cp.y_c)
    a1_thr = cp.K_c < cp.K_c2
    a3 = cp.unique_max
    a4 = False
    if a1_cos:
        p1 = transversality_slope(model, params, cp)
        w["p1"] = [p1.real, p1.imag]
        a4 = p1.real > 0
    return AssumptionReport(a1_cos, a1_thr, a2, a3, a4, w)


# -- test functions and pairings -------------------------------------------

class TestFunction:
    """Element of the Hardy class used in weak pairings.

    ``__call__`` evaluates on real or complex arguments in the closed upper
    half plane.  ``poles()`` returns the partial-fraction description
    ``(constant, [(coef, a), ...])`` meaning ``constant + sum coef/(w + i a)``.
    """

    __test__ = False  # keep pytest from collecting this class

    def __call__(self, w):
        const, terms = self.poles()
        w = np.asarray(w, dtype=complex)
        out = np.full(w.shape, const, dtype=complex)
        for coef, a in terms:
            out = out + coef / (w + 1j * a)
        return out

    def poles(self):
        raise NotImplementedError


@dataclass(frozen=True)
class P0(TestFunction):
    """The constant function one."""

    def poles(self):
        return 1.0 + 0j, []


@dataclass(frozen=True)
class CauchyPole(TestFunction):
    """``w -> scale / (w + i a)`` with ``Re a > 0``.

    The pole ``-i a`` lies in the open lower half plane.  With
    ``scale = 1j`` and ``a = lam`` this is ``1 / (lam - i w)``, the
    eigenfunction attached to ``lam``.
    """

    a: complex = 1.0
    scale: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "scale", complex(self.scale))
        if not self.a.real > 0:
            raise ValueError("CauchyPole requires Re(a) > 0")

    def poles(self):
        return 0j, [(self.scale, self.a)]


def eigenfunction(lam):
    """``v_lam(w) = 1 / (lam - i w)`` as a test function (``Re lam > 0``)."""
    return CauchyPole(complex(lam), 1j)


def _product_poles(phi, psi):
    """Partial fractions of ``phi * psi``; ``None`` on a repeated pole."""
    c1, t1 = phi.poles()
    c2, t2 = psi.poles()
    const = c1 * c2
    terms = [(c2 * k, a) for k, a in t1] + [(c1 * k, a) for k, a in t2]
    for k1, a1 in t1:
        for k2, a2 in t2:
            if abs(a1 - a2) < 1e-12 * max(1.0, abs(a1)):
                return None
            # 1/((w+ia1)(w+ia2)) = [1/(w+ia1) - 1/(w+ia2)] / (i (a2 - a1))
            c = k1 * k2 / (1j * (a2 - a1))
            terms += [(c, a1), (-c, a2)]
    return const, terms


def _pole_pairing(model, lam, const, terms, method):
    """Continued ``int f(w) g(w) / (lam - i w) dw`` for ``f`` in pole form."""
    Dl = D(model, lam, 0, method)
    total = const * Dl
    for coef, a in terms:
        if abs(lam - a) < 1e-9 * max(1.0, abs(a)):
            total += 1j * coef * D(model, a, 1, method)
        else:
            total += -1j * coef * (D(model, a, 0, method) - Dl) / (lam - a)
    return complex(total)


def pairing(model, lam, f, method="auto"):
    """Continued Cauchy pairing ``((lam - i w)^-1 f, P0) = int f g / (lam - i w) dw``.

    ``f`` is a :class:`TestFunction` or a pair of them (their product).
    ``"auto"`` reduces the integral to values of ``D`` by partial fractions;
    ``"quadrature"`` applies the three-branch rule to the integrand directly.
    """
    lam = complex(lam)
    _check_half_plane(model, lam)
    if isinstance(f, tuple):
        phi, psi = f
        fn = lambda w: phi(w) * psi(w)
        pole_form = _product_poles(phi, psi)
    else:
        fn = f
        pole_form = f.poles()
    if method == "auto" and pole_form is not None:
        return _pole_pairing(model, lam, *pole_form, method)
    fg = lambda w: fn(w) * model.pdf_complex(w)
    fg_real = lambda w: fn(np.asarray(w, dtype=float)) * model.pdf(w)
    return quadrature.continued_cauchy(fg_real, fg, lam, model.scale,
                                       model.centers)


def resolvent_bilinear(model, params, lam, phi, psi, method="auto"):
    """Weak resolvent pairing ``((lam - T_1)^-1 phi, psi*)``, continued.

    Raises
    ------
    AtSingularity
        If ``|1 - i K f_1 D(lam)| < 1e-12``.
    """
    lam = complex(lam)
    c = 1j * params.K * fourier_pair(params).f1
    denom = 1.0 - c * D(model, lam, 0, method)
    if abs(denom) < 1e-12:
        raise AtSingularity(f"lambda = {lam} is a (generalized) eigenvalue")
    base = pairing(model, lam, (phi, psi), method)
    return base + c / denom * pairing(model, lam, phi, method) * pairing(model, lam, psi, method)


def projection_coefficient(model, params, lam_c, phi, method="auto"):
    """Coefficient ``c`` with ``Pi_c phi = c v_{lam_c}``: ``-pairing(phi) / D'(lam_c)``.

    Raises
    ------
    DegenerateEigenvalue
        If ``|D'(lam_c)| < 1e-12``.
    """
    lam_c = complex(lam_c)
    Dp = D(model, lam_c, 1, method)
    if abs(Dp) < 1e-12:
        raise DegenerateEigenvalue(f"D'({lam_c}) vanishes")
    return -pairing(model, lam_c, phi, method) / Dp
