"""Minimal deterministic SVG line charts.

Hand-rolled on purpose: no renderer dependency, no timestamps, no
generated ids, fixed number formatting, so identical data always yields
byte-identical files. Charts are a viewing convenience; the CSV tables
remain the interchange contract.
"""

from __future__ import annotations

import math

import numpy as np

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
           "#17becf", "#7f7f7f")

_MARGIN_LEFT = 64
_MARGIN_RIGHT = 16
_MARGIN_TOP = 28
_MARGIN_BOTTOM = 44


def _finite_range(arrays) -> tuple[float, float]:
    lo, hi = math.inf, -math.inf
    for arr in arrays:
        arr = np.asarray(arr, dtype=float)
        finite = arr[np.isfinite(arr)]
        if finite.size:
            lo = min(lo, float(finite.min()))
            hi = max(hi, float(finite.max()))
    if lo > hi:
        lo, hi = 0.0, 1.0
    if lo == hi:
        pad = 1.0 if lo == 0.0 else abs(lo) * 0.1
        lo, hi = lo - pad, hi + pad
    return lo, hi


def _ticks(lo: float, hi: float, count: int = 5):
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _esc(text: str) -> str:
    return (str(text).replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;"))


def line_chart(series, title: str = "", x_label: str = "", y_label: str = "",
               width: int = 720, height: int = 440) -> str:
    """Render labelled (x, y) series as one SVG line chart.

    ``series`` is a sequence of (label, x, y). Non-finite points are
    dropped. Returns the SVG document as a string.
    """
    series = [(label, np.asarray(x, dtype=float), np.asarray(y, dtype=float))
              for label, x, y in series]
    x_lo, x_hi = _finite_range([x for _, x, _ in series])
    y_lo, y_hi = _finite_range([y for _, _, y in series])
    plot_w = width - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = height - _MARGIN_TOP - _MARGIN_BOTTOM

    def sx(v: float) -> float:
        return _MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def sy(v: float) -> float:
        return _MARGIN_TOP + (y_hi - v) / (y_hi - y_lo) * plot_h

    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
               f'height="{height}" viewBox="0 0 {width} {height}">')
    out.append(f'<rect x="0" y="0" width="{width}" height="{height}" '
               f'fill="#ffffff"/>')
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="14">{_esc(title)}</text>')
    # Grid and axis ticks.
    for v in _ticks(x_lo, x_hi):
        px = sx(v)
        out.append(f'<line x1="{px:.2f}" y1="{_MARGIN_TOP}" x2="{px:.2f}" '
                   f'y2="{_MARGIN_TOP + plot_h}" stroke="#dddddd" stroke-width="1"/>')
        out.append(f'<text x="{px:.2f}" y="{_MARGIN_TOP + plot_h + 16}" '
                   f'text-anchor="middle" font-family="sans-serif" '
                   f'font-size="11">{v:.4g}</text>')
    for v in _ticks(y_lo, y_hi):
        py = sy(v)
        out.append(f'<line x1="{_MARGIN_LEFT}" y1="{py:.2f}" '
                   f'x2="{_MARGIN_LEFT + plot_w}" y2="{py:.2f}" '
                   f'stroke="#dddddd" stroke-width="1"/>')
        out.append(f'<text x="{_MARGIN_LEFT - 6}" y="{py + 4:.2f}" '
                   f'text-anchor="end" font-family="sans-serif" '
                   f'font-size="11">{v:.4g}</text>')
    out.append(f'<rect x="{_MARGIN_LEFT}" y="{_MARGIN_TOP}" width="{plot_w}" '
               f'height="{plot_h}" fill="none" stroke="#333333" stroke-width="1"/>')
    if x_label:
        out.append(f'<text x="{_MARGIN_LEFT + plot_w / 2:.1f}" '
                   f'y="{height - 8}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="12">{_esc(x_label)}</text>')
    if y_label:
        cy = _MARGIN_TOP + plot_h / 2
        out.append(f'<text x="14" y="{cy:.1f}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="12" '
                   f'transform="rotate(-90 14 {cy:.1f})">{_esc(y_label)}</text>')
    # Data polylines.
    for idx, (label, x, y) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        keep = np.isfinite(x) & np.isfinite(y)
        points = " ".join(f"{sx(xv):.2f},{sy(yv):.2f}"
                          for xv, yv in zip(x[keep], y[keep]))
        if points:
            out.append(f'<polyline fill="none" stroke="{color}" '
                       f'stroke-width="1.5" points="{points}"/>')
        ly = _MARGIN_TOP + 14 + 16 * idx
        lx = _MARGIN_LEFT + plot_w - 150
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
                   f'font-size="11">{_esc(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
