"""Tiny SVG emitter for static line and scatter plots."""
from xml.sax.saxutils import escape

import numpy as np

__all__ = ["line_plot"]

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _ticks(lo, hi, n=5):
    if hi <= lo:
        hi = lo + 1.0
    return np.linspace(lo, hi, n)


def line_plot(series, xlabel="", ylabel="", title="", width=480, height=320):
    """Render series as an SVG string.

    ``series`` is a list of dicts with keys ``x``, ``y``, ``label`` and
    ``style`` (``"line"`` or ``"points"``).  Non-finite points are skipped.
    """
    pad_l, pad_r, pad_t, pad_b = 60, 20, 30, 45
    xs = np.concatenate([np.asarray(s["x"], float) for s in series] or [[0.0]])
    ys = np.concatenate([np.asarray(s["y"], float) for s in series] or [[0.0]])
    ok = np.isfinite(xs) & np.isfinite(ys)
    x0, x1 = (xs[ok].min(), xs[ok].max()) if ok.any() else (0.0, 1.0)
    y0, y1 = (min(0.0, ys[ok].min()), ys[ok].max()) if ok.any() else (0.0, 1.0)
    if x1 <= x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 <= y0:
        y1 = y0 + 1.0
    pw, ph = width - pad_l - pad_r, height - pad_t - pad_b

    def px(x):
        return pad_l + (x - x0) / (x1 - x0) * pw

    def py(y):
        return pad_t + (1 - (y - y0) / (y1 - y0)) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
           f'height="{height}" font-family="sans-serif" font-size="11">',
           f'<rect width="{width}" height="{height}" fill="white"/>',
           f'<rect x="{pad_l}" y="{pad_t}" width="{pw}" height="{ph}" '
           f'fill="none" stroke="black"/>']
    for t in _ticks(x0, x1):
        out.append(f'<text x="{px(t):.1f}" y="{pad_t + ph + 15}" '
                   f'text-anchor="middle">{t:.3g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{pad_l - 5}" y="{py(t) + 4:.1f}" '
                   f'text-anchor="end">{t:.3g}</text>')
    out.append(f'<text x="{pad_l + pw / 2}" y="{height - 8}" '
               f'text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="15" y="{pad_t + ph / 2}" text-anchor="middle" '
               f'transform="rotate(-90 15 {pad_t + ph / 2})">{escape(ylabel)}</text>')
    if title:
        out.append(f'<text x="{width / 2}" y="18" text-anchor="middle">'
                   f'{escape(title)}</text>')
    for i, s in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        x = np.asarray(s["x"], float)
        y = np.asarray(s["y"], float)
        good = np.isfinite(x) & np.isfinite(y)
        if s.get("style", "line") == "line":
            pts = " ".join(f"{px(a):.1f},{py(b):.1f}" for a, b in zip(x[good], y[good]))
            out.append(f'<polyline points="{pts}" fill="none" stroke="{color}"/>')
        else:
            for a, b in zip(x[good], y[good]):
                out.append(f'<circle cx="{px(a):.1f}" cy="{py(b):.1f}" r="3" '
                           f'fill="{color}"/>')
        out.append(f'<text x="{pad_l + 8}" y="{pad_t + 14 + 13 * i}" '
                   f'fill="{color}">{escape(s.get("label", ""))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
