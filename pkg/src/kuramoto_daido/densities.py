"""Natural-frequency densities with analytic continuation into a strip.

Three families are supported: a Lorentzian (Cauchy), a centred Gaussian and
finite mixtures of Lorentzians.  Each model knows its density on the real
line and in the strip ``|Im z| < strip``, its derivatives, its CDF and
quantile function, and closed forms for its Hilbert transform and for the
continued Cauchy integral ``D(lam) = int g(w) / (lam - i w) dw``.

The module-level functions (:func:`eval_real`, :func:`hilbert`, ...) are the
public operations; ``method="quadrature"`` routes them through the generic
integrals of :mod:`kuramoto_daido.quadrature` so that every closed form has an
independent check.
"""
from dataclasses import dataclass, field
from math import factorial

import numpy as np
from scipy import optimize, special

from . import quadrature
from .errors import StripViolation

__all__ = [
    "DensityModel",
    "Lorentzian",
    "Gaussian",
    "LorentzianMixture",
    "density_from_dict",
    "eval_real",
    "eval_complex",
    "eval_derivative",
    "hilbert",
    "hilbert_derivative",
    "sample",
    "normalization",
]

_SQRT_PI = np.sqrt(np.pi)


class DensityModel:
    """Common interface of the density families.

    Subclasses are frozen dataclasses; they are immutable and can be shared
    between threads.
    """

    kind = "abstract"

    #: half-width of the strip ``|Im z| < strip`` in which ``g`` is analytic
    @property
    def strip(self):
        raise NotImplementedError

    @property
    def scale(self):
        """Characteristic width used for grids and breakpoints."""
        raise NotImplementedError

    @property
    def centers(self):
        """Locations of the density's peaks (quadrature breakpoints)."""
        return (0.0,)

    @property
    def is_even(self):
        return False

    def pdf(self, x):
        return np.real(self._pdf(np.asarray(x, dtype=float)))

    def pdf_complex(self, z):
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z.imag) >= self.strip):
            raise StripViolation(
                f"|Im z| must stay below {self.strip:g} for {self.kind}")
        return self._pdf(z)

    def derivative(self, z, n):
        """``n``-th derivative of ``g`` at real or complex ``z``."""
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z.imag) >= self.strip):
            raise StripViolation(
                f"|Im z| must stay below {self.strip:g} for {self.kind}")
        return self._deriv(z, n)

    def hilbert_closed(self, y, n=0):
        """Closed-form ``n``-th derivative of ``H[g]`` at real ``y``."""
        raise NotImplementedError

    def cauchy_closed(self, lam, n=0):
        """Closed form of the maximally continued ``D^(n)(lam)``."""
        raise NotImplementedError

    def cdf(self, x):
        raise NotImplementedError

    def quantile(self, p):
        raise NotImplementedError

    def draw(self, rng, n):
        raise NotImplementedError

    def to_dict(self):
        raise NotImplementedError

    # -- internals -------------------------------------------------------
    def _pdf(self, z):
        raise NotImplementedError

    def _deriv(self, z, n):
        raise NotImplementedError


def _check_positive(name, value):
    if not (np.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class Lorentzian(DensityModel):
    """Cauchy density ``gamma / (pi ((w - center)^2 + gamma^2))``."""

    gamma: float = 1.0
    center: float = 0.0

    kind = "lorentzian"

    def __post_init__(self):
        _check_positive("gamma", self.gamma)

    @property
    def strip(self):
        return 0.9 * self.gamma

    @property
    def scale(self):
        return self.gamma

    @property
    def centers(self):
        return (self.center,)

    @property
    def is_even(self):
        return self.center == 0.0

    def _pdf(self, z):
        u = z - self.center
        return self.gamma / (np.pi * (u * u + self.gamma ** 2))

    def _deriv(self, z, n):
        # g = (1/2 pi i) [1/(u - i g) - 1/(u + i g)]
        u = z - self.center
        g = self.gamma
        c = (-1) ** n * factorial(n) / (2j * np.pi)
        return c * (1.0 / (u - 1j * g) ** (n + 1) - 1.0 / (u + 1j * g) ** (n + 1))

    def hilbert_closed(self, y, n=0):
        # H[g](y) = u / (pi (u^2 + g^2)) = Re[1/(pi (u - i g))] ... as a
        # partial fraction: (1/2 pi)[1/(u - i g) + 1/(u + i g)]
        u = np.asarray(y, dtype=float) - self.center
        g = self.gamma
        c = (-1) ** n * factorial(n) / (2 * np.pi)
        val = c * (1.0 / (u - 1j * g) ** (n + 1) + 1.0 / (u + 1j * g) ** (n + 1))
        return np.real(val)

    def cauchy_closed(self, lam, n=0):
        s = np.asarray(lam, dtype=complex) + self.gamma - 1j * self.center
        return (-1) ** n * factorial(n) / s ** (n + 1)

    def cdf(self, x):
        return 0.5 + np.arctan((np.asarray(x, float) - self.center) / self.gamma) / np.pi

    def quantile(self, p):
        return self.center + self.gamma * np.tan(np.pi * (np.asarray(p, float) - 0.5))

    def draw(self, rng, n):
        return self.center + self.gamma * rng.standard_cauchy(n)

    def to_dict(self):
        d = {"kind": self.kind, "gamma": self.gamma}
        if self.center:
            d["center"] = self.center
        return d


@dataclass(frozen=True)
class Gaussian(DensityModel):
    """Centred normal density with standard deviation ``sigma``.

    The Cauchy integral is expressed through the Faddeeva function,
    ``D(lam) = sqrt(pi/2)/sigma * w(i lam / (sigma sqrt 2))``, which is entire
    and therefore already the continuation; the Hilbert transform is the
    Dawson-function restriction of the same identity to the axis.
    """

    sigma: float = 1.0

    kind = "gaussian"

    def __post_init__(self):
        _check_positive("sigma", self.sigma)

    @property
    def strip(self):
        return 10.0 * self.sigma

    @property
    def scale(self):
        return self.sigma

    @property
    def is_even(self):
        return True

    def _pdf(self, z):
        s = self.sigma
        return np.exp(-z * z / (2 * s * s)) / (s * np.sqrt(2 * np.pi))

    def _deriv(self, z, n):
        # g^(n)(z) = (-1)^n He_n(z/s) g(z) / s^n  (probabilists' Hermite)
        s = self.sigma
        t = z / s
        if n == 0:
            he = 1.0
        elif n == 1:
            he = t
        elif n == 2:
            he = t * t - 1.0
        elif n == 3:
            he = t ** 3 - 3 * t
        else:
            raise ValueError("derivatives above order 3 are not provided")
        return (-1) ** n * he * self._pdf(z) / s ** n

    def hilbert_closed(self, y, n=0):
        s = self.sigma
        c = np.sqrt(2.0) / (np.pi * s)
        k = 1.0 / (s * np.sqrt(2.0))
        x = np.asarray(y, dtype=float) * k
        F = special.dawsn(x)
        if n == 0:
            return c * F
        if n == 1:
            return c * k * (1.0 - 2.0 * x * F)
        if n == 2:
            return c * k * k * ((4.0 * x * x - 2.0) * F - 2.0 * x)
        raise ValueError("Hilbert derivatives above order 2 are not provided")

    def cauchy_closed(self, lam, n=0):
        s = self.sigma
        amp = np.sqrt(np.pi / 2.0) / s
        b = 1j / (s * np.sqrt(2.0))
        z = b * np.asarray(lam, dtype=complex)
        w = special.wofz(z)
        if n == 0:
            return amp * w
        w1 = -2.0 * z * w + 2j / _SQRT_PI
        if n == 1:
            return amp * b * w1
        w2 = -2.0 * w - 2.0 * z * w1
        if n == 2:
            return amp * b * b * w2
        raise ValueError("derivatives above order 2 are not provided")

    def cdf(self, x):
        return special.ndtr(np.asarray(x, float) / self.sigma)

    def quantile(self, p):
        return self.sigma * special.ndtri(np.asarray(p, float))

    def draw(self, rng, n):
        return self.sigma * rng.standard_normal(n)

    def to_dict(self):
        return {"kind": self.kind, "sigma": self.sigma}


@dataclass(frozen=True)
class LorentzianMixture(DensityModel):
    """Finite mixture of Lorentzians, ``sum_k weight_k * Lorentzian(gamma_k, center_k)``.

    ``components`` is a sequence of ``(weight, center, gamma)`` triples.
    Weights must be positive and are required to sum to one.
    """

    components: tuple = field(default=((1.0, 0.0, 1.0),))

    kind = "lorentzian_mixture"

    def __post_init__(self):
        comps = tuple((float(w), float(c), float(g)) for w, c, g in self.components)
        if not comps:
            raise ValueError("mixture needs at least one component")
        for w, _, g in comps:
            _check_positive("mixture weight", w)
            _check_positive("mixture gamma", g)
        total = sum(w for w, _, _ in comps)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"mixture weights sum to {total}, expected 1")
        object.__setattr__(self, "components", comps)

    @property
    def _parts(self):
        return [(w, Lorentzian(g, c)) for w, c, g in self.components]

    @property
    def strip(self):
        return 0.9 * min(g for _, _, g in self.components)

    @property
    def scale(self):
        return min(g for _, _, g in self.components)

    @property
    def centers(self):
        return tuple(sorted({c for _, c, _ in self.components}))

    @property
    def is_even(self):
        comps = sorted(self.components)
        mirrored = sorted((w, -c, g) for w, c, g in self.components)
        return np.allclose(comps, mirrored, rtol=0, atol=1e-15)

    def _pdf(self, z):
        return sum(w * p._pdf(z) for w, p in self._parts)

    def _deriv(self, z, n):
        return sum(w * p._deriv(z, n) for w, p in self._parts)

    def hilbert_closed(self, y, n=0):
        return sum(w * p.hilbert_closed(y, n) for w, p in self._parts)

    def cauchy_closed(self, lam, n=0):
        return sum(w * p.cauchy_closed(lam, n) for w, p in self._parts)

    def cdf(self, x):
        return sum(w * p.cdf(x) for w, p in self._parts)

    def quantile(self, p):
        p = np.atleast_1d(np.asarray(p, dtype=float))
        lo = min(c for _, c, _ in self.components)
        hi = max(c for _, c, _ in self.components)
        out = np.empty_like(p)
        for i, pi in enumerate(p):
            # bracket with the outermost component quantiles
            a = lo + self.scale * np.tan(np.pi * (min(pi, 0.5) - 0.5)) - 1.0
            b = hi + self.scale * np.tan(np.pi * (max(pi, 0.5) - 0.5)) + 1.0
            while self.cdf(a) > pi:
                a = 2 * a - 1.0
            while self.cdf(b) < pi:
                b = 2 * b + 1.0
            out[i] = optimize.brentq(lambda x: self.cdf(x) - pi, a, b,
                                     xtol=1e-13, rtol=4 * np.finfo(float).eps,
                                     maxiter=500)
        return out

    def draw(self, rng, n):
        weights = np.array([w for w, _, _ in self.components])
        idx = rng.choice(len(weights), size=n, p=weights)
        centers = np.array([c for _, c, _ in self.components])
        gammas = np.array([g for _, _, g in self.components])
        return centers[idx] + gammas[idx] * rng.standard_cauchy(n)

    def to_dict(self):
        return {"kind": self.kind,
                "components": [list(c) for c in self.components]}


_KINDS = {
    "lorentzian": lambda d: Lorentzian(float(d.get("gamma", 1.0)),
                                       float(d.get("center", 0.0))),
    "gaussian": lambda d: Gaussian(float(d.get("sigma", 1.0))),
    "lorentzian_mixture": lambda d: LorentzianMixture(
        tuple(tuple(c) for c in d["components"])),
}


def density_from_dict(spec):
    """Build a model from ``{"kind": "lorentzian", "gamma": 1.0}``-style dicts."""
    if isinstance(spec, DensityModel):
        return spec
    kind = str(spec.get("kind", "")).lower().replace("-", "_")
    if kind == "mixture":
        kind = "lorentzian_mixture"
    try:
        return _KINDS[kind](spec)
    except KeyError:
        raise ValueError(f"unknown density kind {spec.get('kind')!r}") from None


# -- public operations -----------------------------------------------------

def eval_real(model, omega):
    """Density ``g(omega)`` on the real line."""
    return model.pdf(omega)


def eval_complex(model, z):
    """Analytic continuation ``g(z)``; raises StripViolation outside the strip."""
    return model.pdf_complex(z)


def eval_derivative(model, z, n):
    return model.derivative(z, n)


def normalization(model):
    """Quadrature of ``g`` over the real line (should be 1)."""
    pts = list(model.centers) + [c + s * model.scale for c in model.centers
                                 for s in (-5, -1, 1, 5)]
    return quadrature.integrate_line(model.pdf, points=pts, tol=1e-11)


def hilbert(model, y, method="auto"):
    """Hilbert transform ``H[g](y) = -(1/pi) p.v. int g(w + y) / w dw``.

    ``method="auto"`` uses the model's closed form, ``"quadrature"`` the
    symmetric principal-value integral.
    """
    if method == "quadrature":
        return quadrature.pv_hilbert(model.pdf, float(y), model.scale,
                                     model.centers, tol=1e-10)
    return model.hilbert_closed(y, 0)


def hilbert_derivative(model, y, n, method="auto"):
    """``n``-th derivative (``n <= 2``) of the Hilbert transform.

    ``method="numeric"`` differentiates ``hilbert`` by central differences
    with step ``1e-4`` and one Richardson extrapolation; ``"quadrature"``
    applies the principal-value integral to ``g^(n)``.
    """
    if n not in (0, 1, 2):
        raise ValueError("n must be 0, 1 or 2")
    if method == "auto":
        return model.hilbert_closed(y, n)
    if method == "quadrature":
        fn = lambda x: np.real(model.derivative(x, n))
        return quadrature.pv_hilbert(fn, float(y), model.scale, model.centers,
                                     tol=1e-9)
    if method != "numeric":
        raise ValueError(f"unknown method {method!r}")
    if n == 0:
        return hilbert(model, y, "quadrature")

    def fd(h):
        H = lambda t: hilbert(model, t, "quadrature")
        if n == 1:
            return (H(y + h) - H(y - h)) / (2 * h)
        return (H(y + h) - 2 * H(y) + H(y - h)) / (h * h)

    h = 1e-4 if n == 1 else 1e-3
    return (4 * fd(h / 2) - fd(h)) / 3


def sample(model, n, scheme="quantile", seed=None):
    """Draw ``n`` natural frequencies.

    ``scheme="quantile"`` returns the deterministic midpoints
    ``Q((i - 1/2)/n)``; ``scheme="seeded"`` draws i.i.d. samples from
    ``numpy.random.default_rng(seed)``.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be at least 1")
    if scheme in ("quantile", "quantile_midpoint", "QuantileMidpoint"):
        p = (np.arange(n) + 0.5) / n
        return np.asarray(model.quantile(p), dtype=float)
    if scheme in ("seeded", "Seeded"):
        rng = np.random.default_rng(seed)
        return np.asarray(model.draw(rng, n), dtype=float)
    raise ValueError(f"unknown sampling scheme {scheme!r}")
