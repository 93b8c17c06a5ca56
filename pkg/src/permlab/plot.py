"""Deterministic SVG scatter plots of permutation prefixes."""
from __future__ import annotations

from typing import Sequence

from .patterns import PermutationView

MAX_POINTS = 10 ** 4


def prefix_ranks(p: PermutationView, N: int) -> list[int]:
    if not 1 <= N <= MAX_POINTS:
        raise ValueError(f"N must lie in 1..{MAX_POINTS}")
    return p.global_ranks(N)


def scatter_svg(ranks: Sequence[int], title: str = "", size: int = 480) -> str:
    """Points (i, rank of alpha_i among the plotted values); ranks are 0-based."""
    n = len(ranks)
    margin = 40
    inner = size - 2 * margin
    step = inner / max(n - 1, 1)
    r = max(1.5, min(5.0, step / 3))

    def x(i):
        return margin + i * step

    def y(v):
        return size - margin - v * step

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="{margin}" y1="{size - margin}" x2="{size - margin}" y2="{size - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{size - margin}" x2="{margin}" y2="{margin}" stroke="black"/>',
        f'<text x="{size / 2:.1f}" y="{size - 10}" text-anchor="middle" font-size="12">position i</text>',
        f'<text x="12" y="{size / 2:.1f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 12 {size / 2:.1f})">rank of alpha_i</text>',
    ]
    if title:
        out.append(f'<text x="{size / 2:.1f}" y="20" text-anchor="middle" font-size="14">{_escape(title)}</text>')
    for i, v in enumerate(ranks):
        out.append(f'<circle cx="{x(i):.2f}" cy="{y(v):.2f}" r="{r:.2f}" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def plot(p: PermutationView, N: int, path=None, title: str | None = None) -> str:
    svg = scatter_svg(prefix_ranks(p, N), p.name if title is None else title)
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    return svg
