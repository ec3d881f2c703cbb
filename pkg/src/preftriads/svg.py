"""Self-contained SVG grouped-bar charts of class histograms."""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

OBSERVED_COLOR = "#1f4e79"
REPLICATE_COLORS = ("#f4a582", "#fddbc7", "#d6604d", "#b2182b", "#fbb4ae", "#e08214", "#fdb863", "#b35806")


def grouped_bars(
    observed: Sequence[float],
    replicates: Sequence[Sequence[float]],
    title: str = "",
    ylabel: str = "frequency",
    width: int = 900,
    height: int = 420,
) -> str:
    """One group per class: the observed bar followed by one bar per replicate."""
    k = len(observed)
    series = [list(observed)] + [list(r) for r in replicates]
    top = max([v for s in series for v in s] + [1e-12])
    ml, mr, mt, mb = 60, 20, 40, 60
    pw, ph = width - ml - mr, height - mt - mb
    group_w = pw / max(k, 1)
    bar_w = group_w * 0.85 / len(series)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>',
    ]
    for t in range(5):
        v = top * t / 4
        y = mt + ph - ph * t / 4
        out.append(f'<text x="{ml - 6}" y="{y + 4:.1f}" text-anchor="end">{v:.3g}</text>')
        out.append(f'<line x1="{ml - 3}" y1="{y:.1f}" x2="{ml}" y2="{y:.1f}" stroke="black"/>')
    out.append(
        f'<text x="16" y="{mt + ph / 2:.1f}" transform="rotate(-90 16 {mt + ph / 2:.1f})" '
        f'text-anchor="middle">{escape(ylabel)}</text>'
    )
    for c in range(k):
        x0 = ml + c * group_w + group_w * 0.075
        for s, values in enumerate(series):
            h = ph * values[c] / top
            color = OBSERVED_COLOR if s == 0 else REPLICATE_COLORS[(s - 1) % len(REPLICATE_COLORS)]
            out.append(
                f'<rect x="{x0 + s * bar_w:.2f}" y="{mt + ph - h:.2f}" width="{bar_w:.2f}" '
                f'height="{h:.2f}" fill="{color}"/>'
            )
        out.append(
            f'<text x="{ml + (c + 0.5) * group_w:.1f}" y="{mt + ph + 16}" text-anchor="middle">{c + 1}</text>'
        )
    out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 28}" text-anchor="middle">equivalence class</text>')
    lx = ml + 10
    out.append(f'<rect x="{lx}" y="{height - 16}" width="10" height="10" fill="{OBSERVED_COLOR}"/>')
    out.append(f'<text x="{lx + 14}" y="{height - 7}">observed</text>')
    if replicates:
        out.append(f'<rect x="{lx + 80}" y="{height - 16}" width="10" height="10" fill="{REPLICATE_COLORS[0]}"/>')
        out.append(f'<text x="{lx + 94}" y="{height - 7}">R1-R{len(replicates)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
