"""Self-contained, deterministic SVG emission (no plotting dependency).

Two figure kinds: line plots of decoherence curves with optional horizontal
guide lines (the long-time plateau), and heatmaps of Wigner fields on a
fixed diverging palette so interference negativity stays visible.  Output is
a pure function of the inputs; provenance lines are embedded as comments.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np

_WIDTH, _HEIGHT = 860, 560
_ML, _MR, _MT, _MB = 90, 30, 46, 64
_PALETTE = ("#1f77b4", "#d62728", "#7f3fbf", "#2ca02c", "#ff7f0e", "#111111")


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if not (hi > lo):
        hi = lo + 1.0
    raw = (hi - lo) / max(target, 2)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * mag
        if raw <= step:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    value = first
    while value <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(value) < 1e-12 * step else value)
        value += step
    return ticks


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def line_plot_svg(
    curves: Sequence[tuple[np.ndarray, np.ndarray, str]],
    xlabel: str,
    ylabel: str,
    title: str = "",
    guides: Sequence[tuple[float, str]] = (),
    header_lines: Sequence[str] = (),
) -> str:
    xs = np.concatenate([np.asarray(c[0], dtype=float) for c in curves]) if curves else np.array([0.0, 1.0])
    ys = np.concatenate([np.asarray(c[1], dtype=float) for c in curves]) if curves else np.array([0.0, 1.0])
    xlo, xhi = float(np.min(xs)), float(np.max(xs))
    ylo = min(float(np.min(ys)), min((g for g, _ in guides), default=math.inf), 0.0)
    yhi = max(float(np.max(ys)), max((g for g, _ in guides), default=-math.inf))
    if not (xhi > xlo):
        xhi = xlo + 1.0
    if not (yhi > ylo):
        yhi = ylo + 1.0
    yhi += 0.05 * (yhi - ylo)

    px = lambda x: _ML + (x - xlo) / (xhi - xlo) * (_WIDTH - _ML - _MR)
    py = lambda y: _HEIGHT - _MB - (y - ylo) / (yhi - ylo) * (_HEIGHT - _MT - _MB)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_WIDTH} {_HEIGHT}" '
        f'font-family="Helvetica, Arial, sans-serif" font-size="14">'
    ]
    parts += [f"<!-- {line} -->" for line in header_lines]
    parts.append(f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>')
    if title:
        parts.append(f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="16">{title}</text>')

    for tick in _nice_ticks(xlo, xhi):
        x = px(tick)
        parts.append(f'<line x1="{x:.2f}" y1="{py(ylo):.2f}" x2="{x:.2f}" y2="{py(ylo) + 5:.2f}" stroke="black"/>')
        parts.append(f'<text x="{x:.2f}" y="{py(ylo) + 20:.2f}" text-anchor="middle">{_fmt(tick)}</text>')
    for tick in _nice_ticks(ylo, yhi):
        y = py(tick)
        parts.append(f'<line x1="{_ML - 5}" y1="{y:.2f}" x2="{_ML}" y2="{y:.2f}" stroke="black"/>')
        parts.append(f'<text x="{_ML - 9}" y="{y + 4:.2f}" text-anchor="end">{_fmt(tick)}</text>')
    parts.append(
        f'<rect x="{_ML}" y="{_MT}" width="{_WIDTH - _ML - _MR}" height="{_HEIGHT - _MT - _MB}" '
        'fill="none" stroke="black"/>'
    )
    parts.append(
        f'<text x="{(_ML + _WIDTH - _MR) / 2:.1f}" y="{_HEIGHT - 18}" text-anchor="middle">{xlabel}</text>'
    )
    parts.append(
        f'<text x="22" y="{(_MT + _HEIGHT - _MB) / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 22 {(_MT + _HEIGHT - _MB) / 2:.1f})">{ylabel}</text>'
    )

    for gy, label in guides:
        y = py(gy)
        parts.append(
            f'<line x1="{_ML}" y1="{y:.2f}" x2="{_WIDTH - _MR}" y2="{y:.2f}" '
            'stroke="#888888" stroke-dasharray="6 4"/>'
        )
        parts.append(f'<text x="{_WIDTH - _MR - 4}" y="{y - 5:.2f}" text-anchor="end" fill="#555555">{label}</text>')

    for idx, (x, y, label) in enumerate(curves):
        colour = _PALETTE[idx % len(_PALETTE)]
        pts = " ".join(f"{px(float(a)):.2f},{py(float(b)):.2f}" for a, b in zip(x, y))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{colour}" stroke-width="1.6"/>')
        ly = _MT + 20 + 18 * idx
        parts.append(f'<line x1="{_ML + 12}" y1="{ly - 4}" x2="{_ML + 44}" y2="{ly - 4}" stroke="{colour}" stroke-width="2"/>')
        parts.append(f'<text x="{_ML + 50}" y="{ly}">{label}</text>')

    parts.append("</svg>")
    return "\n".join(parts)


def _diverging_colour(v: float) -> str:
    """Blue-white-red for v in [-1, 1], white at zero."""
    v = max(-1.0, min(1.0, v))
    if v >= 0.0:
        level = int(round(255 * (1.0 - v)))
        return f"rgb(255,{level},{level})"
    level = int(round(255 * (1.0 + v)))
    return f"rgb({level},{level},255)"


def heatmap_svg(
    x: np.ndarray,
    y: np.ndarray,
    z: np.ndarray,
    xlabel: str,
    ylabel: str,
    title: str = "",
    header_lines: Sequence[str] = (),
    max_cells: int = 180,
    vmax: Optional[float] = None,
) -> str:
    """Heatmap of z[i_y, i_x]; large grids are strided down to ``max_cells``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    sy = max(1, int(math.ceil(len(y) / max_cells)))
    sx = max(1, int(math.ceil(len(x) / max_cells)))
    x, y, z = x[::sx], y[::sy], z[::sy, ::sx]
    scale = float(np.max(np.abs(z))) if vmax is None else vmax
    if scale == 0.0:
        scale = 1.0

    plot_w, plot_h = _WIDTH - _ML - _MR, _HEIGHT - _MT - _MB
    cw, ch = plot_w / len(x), plot_h / len(y)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_WIDTH} {_HEIGHT}" '
        f'font-family="Helvetica, Arial, sans-serif" font-size="14">'
    ]
    parts += [f"<!-- {line} -->" for line in header_lines]
    parts.append(f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>')
    if title:
        parts.append(f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="16">{title}</text>')
    for iy in range(len(y)):
        yy = _HEIGHT - _MB - (iy + 1) * ch
        for ix in range(len(x)):
            colour = _diverging_colour(z[iy, ix] / scale)
            parts.append(
                f'<rect x="{_ML + ix * cw:.2f}" y="{yy:.2f}" width="{cw + 0.5:.2f}" '
                f'height="{ch + 0.5:.2f}" fill="{colour}"/>'
            )
    parts.append(
        f'<rect x="{_ML}" y="{_MT}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>'
    )
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        xv = x[0] + frac * (x[-1] - x[0])
        yv = y[0] + frac * (y[-1] - y[0])
        xp = _ML + frac * plot_w
        yp = _HEIGHT - _MB - frac * plot_h
        parts.append(f'<text x="{xp:.1f}" y="{_HEIGHT - _MB + 20}" text-anchor="middle">{_fmt(xv)}</text>')
        parts.append(f'<text x="{_ML - 9}" y="{yp + 4:.1f}" text-anchor="end">{_fmt(yv)}</text>')
    parts.append(f'<text x="{(_ML + _WIDTH - _MR) / 2:.1f}" y="{_HEIGHT - 18}" text-anchor="middle">{xlabel}</text>')
    parts.append(
        f'<text x="22" y="{(_MT + _HEIGHT - _MB) / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 22 {(_MT + _HEIGHT - _MB) / 2:.1f})">{ylabel}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts)
