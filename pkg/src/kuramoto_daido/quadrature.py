"""Real-line quadrature, principal values and Cauchy-type transforms.

Everything here works on plain callables so that the same routines serve as
independent oracles for the closed forms in :mod:`kuramoto_daido.densities`.

The central object is the Cauchy transform

    A[f](lam) = int f(w) / (lam - i w) dw,

defined off the imaginary axis, together with its boundary value from the
right half plane and its continuation across the axis,

    A[f](lam) + 2 pi f(-i lam)     for Re lam < 0,

which is holomorphic as long as ``f`` is holomorphic in the corresponding
strip.  A second, independent route to the same continued function moves the
integration line into the upper half plane (``shifted_cauchy``).
"""
import warnings

import numpy as np
from scipy import integrate as _integrate

from .errors import QuadratureFailure

__all__ = [
    "integrate_line",
    "pv_hilbert",
    "cauchy_transform",
    "continued_cauchy",
    "shifted_cauchy",
]

_LIMIT = 400


def _quad_real(f, a, b, points, epsabs, epsrel):
    # Roundoff warnings only mean the requested tolerance sits below machine
    # resolution of the integrand; the error estimate is then checked by the
    # caller.  Any other QUADPACK warning is fatal.
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", _integrate.IntegrationWarning)
        if points is not None and np.isfinite(a) and np.isfinite(b):
            pts = [p for p in points if a < p < b]
            val, err = _integrate.quad(f, a, b, points=pts or None,
                                       epsabs=epsabs, epsrel=epsrel,
                                       limit=_LIMIT)
        else:
            val, err = _integrate.quad(f, a, b, epsabs=epsabs,
                                       epsrel=epsrel, limit=_LIMIT)
    for w in caught:
        msg = str(w.message)
        if issubclass(w.category, _integrate.IntegrationWarning) and "roundoff" not in msg:
            raise QuadratureFailure(msg.splitlines()[0])
    return val, err


def _quad(f, a, b, points=None, epsabs=1e-13, epsrel=1e-12, complex_valued=True):
    """quad on [a, b] for a possibly complex integrand."""
    if not complex_valued:
        return _quad_real(f, a, b, points, epsabs, epsrel)
    re, e1 = _quad_real(lambda x: np.real(f(x)), a, b, points, epsabs, epsrel)
    im, e2 = _quad_real(lambda x: np.imag(f(x)), a, b, points, epsabs, epsrel)
    return complex(re, im), float(np.hypot(e1, e2))


def integrate_line(f, points=(), epsabs=1e-13, epsrel=1e-12,
                   complex_valued=False, tol=1e-9):
    """Integrate ``f`` over the whole real line.

    The line is split at the smallest and largest breakpoint; the finite
    middle piece uses the breakpoints and the two tails use QUADPACK's
    infinite-interval transform.

    Raises
    ------
    QuadratureFailure
        If QUADPACK reports a problem or the summed error estimate exceeds
        ``tol``.
    """
    pts = sorted(float(p) for p in points) or [0.0]
    lo, hi = pts[0], pts[-1]
    if hi - lo < 1e-12:
        lo, hi = lo - 1.0, hi + 1.0
    total, err = 0.0, 0.0
    for a, b, p in ((-np.inf, lo, None), (lo, hi, pts), (hi, np.inf, None)):
        v, e = _quad(f, a, b, p, epsabs, epsrel, complex_valued)
        total += v
        err += e
    if not err <= tol:
        raise QuadratureFailure(f"error estimate {err:.3g} exceeds {tol:.3g}")
    return total


def pv_hilbert(f, y, scale=1.0, points=(), tol=1e-10, complex_valued=False):
    """Hilbert transform ``H[f](y) = -(1/pi) p.v. int f(w + y) / w dw``.

    Evaluated in the symmetric difference form
    ``-(1/pi) int_0^inf (f(y + u) - f(y - u)) / u du``, whose integrand is
    regular at ``u = 0`` for smooth ``f``.  ``points`` are locations on the
    original axis where ``f`` has structure (peaks).
    """
    def integrand(u):
        return (f(y + u) - f(y - u)) / u

    brk = sorted({abs(p - y) for p in points if abs(p - y) > 0}
                 | {0.1 * scale, scale, 5.0 * scale})
    cut = 20.0 * max(scale, max(brk))
    v1, e1 = _quad(integrand, 0.0, cut, brk, 1e-14, 1e-12, complex_valued)
    v2, e2 = _quad(integrand, cut, np.inf, None, 1e-15, 1e-12, complex_valued)
    if not e1 + e2 <= tol * np.pi:
        raise QuadratureFailure(
            f"p.v. integral at y={y}: error estimate {e1 + e2:.3g}")
    return -(v1 + v2) / np.pi


def cauchy_transform(f, lam, scale=1.0, points=(), tol=1e-10):
    """Raw Cauchy transform ``int f(w) / (lam - i w) dw`` with ``f`` real-line valued.

    For ``Re lam != 0`` the integral is taken in the subtracted form

        x int_0^inf (S(u) - 2 f(y)) / (x^2 + u^2) du
          + pi f(y) sign(x)
          + i int_0^inf u (f(y + u) - f(y - u)) / (x^2 + u^2) du,

    with ``lam = x + i y`` and ``S(u) = f(y + u) + f(y - u)``, which stays
    well conditioned however close ``lam`` is to the axis.  For
    ``Re lam == 0`` the limit from the right half plane is returned,
    ``pi f(y) - i pi H[f](y)``.
    """
    lam = complex(lam)
    x, y = lam.real, lam.imag
    fy = f(y)
    if x == 0.0:
        h = pv_hilbert(f, y, scale, points, tol=tol, complex_valued=True)
        return np.pi * fy - 1j * np.pi * h

    ax = abs(x)

    def even_part(u):
        return x * (f(y + u) + f(y - u) - 2.0 * fy) / (x * x + u * u)

    def odd_part(u):
        return 1j * u * (f(y + u) - f(y - u)) / (x * x + u * u)

    brk = {0.1 * scale, scale, 5.0 * scale}
    brk |= {abs(p - y) for p in points if abs(p - y) > 0}
    if ax < 0.1 * scale:
        brk |= {ax, 10.0 * ax}
    brk = sorted(brk)
    cut = 20.0 * max(scale, max(brk))
    total = np.pi * fy * np.sign(x)
    err = 0.0
    for part in (even_part, odd_part):
        v1, e1 = _quad(part, 0.0, cut, brk, 1e-14, 1e-12)
        v2, e2 = _quad(part, cut, np.inf, None, 1e-15, 1e-12)
        total += v1 + v2
        err += e1 + e2
    if not err <= tol * 10:
        raise QuadratureFailure(
            f"Cauchy transform at lam={lam}: error estimate {err:.3g}")
    return complex(total)


def continued_cauchy(f, f_complex, lam, scale=1.0, points=(), tol=1e-10):
    """Cauchy transform continued from the right half plane across the axis.

    Right of the axis this is the raw transform; on the axis the boundary
    value; left of the axis the raw transform plus ``2 pi f(-i lam)``, which
    requires ``f_complex`` to accept complex arguments in the strip.
    """
    lam = complex(lam)
    raw = cauchy_transform(f, lam, scale, points, tol)
    if lam.real < 0.0:
        raw += 2.0 * np.pi * f_complex(-1j * lam)
    return complex(raw)


def shifted_cauchy(f_complex, lam, shift, scale=1.0, center=0.0, tol=1e-10):
    """Continued Cauchy transform evaluated on the line ``Im w = shift``.

    Valid for ``Re lam > -shift`` when ``f`` is holomorphic and decaying on
    ``0 <= Im w <= shift``.  This route never touches the axis and serves as
    the independent check on :func:`continued_cauchy`.
    """
    lam = complex(lam)
    if not lam.real > -shift:
        raise ValueError("shifted contour requires Re(lam) > -shift")

    def integrand(u):
        w = u + 1j * shift
        return f_complex(w) / (lam - 1j * w)

    pts = (center - 5 * scale, center, center + 5 * scale, lam.imag)
    return complex(integrate_line(integrand, points=pts, epsabs=1e-14,
                                  complex_valued=True, tol=tol))
