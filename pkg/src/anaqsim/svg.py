"""Minimal SVG line plots with optional log axes. No plotting dependency."""
from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")
W, H = 640, 440
ML, MR, MT, MB = 80, 150, 30, 60


def _ticks(lo: float, hi: float, log: bool):
    if log:
        return [10.0**k for k in range(math.floor(lo), math.ceil(hi) + 1) if lo <= k <= hi]
    return list(np.linspace(lo, hi, 5))


def line_plot(
    path,
    series: dict[str, tuple[Sequence[float], Sequence[float]]],
    xlabel: str = "",
    ylabel: str = "",
    title: str = "",
    logx: bool = True,
    logy: bool = True,
    vline: float | None = None,
) -> Path:
    """Write ``series`` (label -> (x, y)) as polylines. Non-positive values are
    dropped on log axes."""
    clean = {}
    for label, (x, y) in series.items():
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        keep = np.isfinite(x) & np.isfinite(y)
        if logx:
            keep &= x > 0
        if logy:
            keep &= y > 0
        if keep.any():
            clean[label] = (np.log10(x[keep]) if logx else x[keep], np.log10(y[keep]) if logy else y[keep])
    allx = np.concatenate([v[0] for v in clean.values()]) if clean else np.array([0.0, 1.0])
    ally = np.concatenate([v[1] for v in clean.values()]) if clean else np.array([0.0, 1.0])
    x0, x1 = float(allx.min()), float(allx.max())
    y0, y1 = float(ally.min()), float(ally.max())
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pw, ph = W - ML - MR, H - MT - MB

    def sx(v):
        return ML + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return MT + ph - (v - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">',
        f'<rect x="{ML}" y="{MT}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for v in _ticks(x0, x1, logx):
        lv = math.log10(v) if logx else v
        label = f"1e{int(round(lv))}" if logx else f"{v:.3g}"
        out.append(f'<line x1="{sx(lv):.2f}" y1="{MT + ph}" x2="{sx(lv):.2f}" y2="{MT + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(lv):.2f}" y="{MT + ph + 18}" text-anchor="middle">{label}</text>')
    for v in _ticks(y0, y1, logy):
        lv = math.log10(v) if logy else v
        label = f"1e{int(round(lv))}" if logy else f"{v:.3g}"
        out.append(f'<line x1="{ML - 5}" y1="{sy(lv):.2f}" x2="{ML}" y2="{sy(lv):.2f}" stroke="black"/>')
        out.append(f'<text x="{ML - 8}" y="{sy(lv) + 4:.2f}" text-anchor="end">{label}</text>')
    if vline is not None and (vline > 0 or not logx):
        lv = math.log10(vline) if logx else vline
        if x0 <= lv <= x1:
            out.append(
                f'<line x1="{sx(lv):.2f}" y1="{MT}" x2="{sx(lv):.2f}" y2="{MT + ph}" stroke="gray" stroke-dasharray="6,4"/>'
            )
    for k, (label, (x, y)) in enumerate(clean.items()):
        color = COLORS[k % len(COLORS)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = MT + 15 + 18 * k
        out.append(f'<line x1="{W - MR + 10}" y1="{ly}" x2="{W - MR + 30}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{W - MR + 35}" y="{ly + 4}">{escape(label)}</text>')
    if title:
        out.append(f'<text x="{ML + pw / 2}" y="{MT - 10}" text-anchor="middle">{escape(title)}</text>')
    if xlabel:
        out.append(f'<text x="{ML + pw / 2}" y="{H - 15}" text-anchor="middle">{escape(xlabel)}</text>')
    if ylabel:
        out.append(
            f'<text x="18" y="{MT + ph / 2}" text-anchor="middle" transform="rotate(-90 18 {MT + ph / 2})">{escape(ylabel)}</text>'
        )
    out.append("</svg>")
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text("\n".join(out) + "\n")
    return p
