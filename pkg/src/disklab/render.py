"""Deterministic SVG pictures of disk instances and grid drawings.

Hand-rolled string assembly: identical input objects yield byte-identical
documents, which the test suite pins with golden files.  Disks are colored
by the structure they belong to (first two components of their tag), marked
points are drawn as crosses, terminal disks get a heavy outline.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .arrangements import DiskInstance
from .gridembed import GridEmbedding

_PALETTE = [
    "#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377",
    "#cc6644", "#44aa99", "#884488", "#99bb55", "#6699cc", "#777788",
]

_CANVAS = 1000.0


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Frame:
    """Affine map from scene coordinates to a y-flipped SVG canvas."""

    def __init__(self, x0: float, y0: float, x1: float, y1: float):
        if x1 <= x0:
            x0, x1 = x0 - 0.5, x0 + 0.5
        if y1 <= y0:
            y0, y1 = y0 - 0.5, y0 + 0.5
        pad = 0.05 * max(x1 - x0, y1 - y0)
        x0, y0, x1, y1 = x0 - pad, y0 - pad, x1 + pad, y1 + pad
        self.k = _CANVAS / max(x1 - x0, y1 - y0)
        self.x0, self.y1 = x0, y1
        self.width = (x1 - x0) * self.k
        self.height = (y1 - y0) * self.k

    def pt(self, x: float, y: float) -> Tuple[float, float]:
        return ((x - self.x0) * self.k, (self.y1 - y) * self.k)


def _open_svg(frame: _Frame, lines: List[str]) -> None:
    lines.append(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {_fmt(frame.width)} {_fmt(frame.height)}" '
        f'width="{_fmt(frame.width)}" height="{_fmt(frame.height)}">'
    )
    lines.append(
        f'<rect x="0" y="0" width="{_fmt(frame.width)}" '
        f'height="{_fmt(frame.height)}" fill="#ffffff"/>'
    )


def _grid_lines(frame: _Frame, x0: float, y0: float, x1: float, y1: float,
                pitch: float, lines: List[str]) -> None:
    lines.append('<g stroke="#dddddd" stroke-width="1">')
    i = int(x0 / pitch) - 1
    while i * pitch <= x1:
        if i * pitch >= x0:
            ax, ay = frame.pt(i * pitch, y0)
            bx, by = frame.pt(i * pitch, y1)
            lines.append(f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}"/>')
        i += 1
    j = int(y0 / pitch) - 1
    while j * pitch <= y1:
        if j * pitch >= y0:
            ax, ay = frame.pt(x0, j * pitch)
            bx, by = frame.pt(x1, j * pitch)
            lines.append(f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}"/>')
        j += 1
    lines.append("</g>")


def _guide_pitch(span: float) -> float:
    pitch = 1.0
    while span / pitch > 20:
        pitch *= 2
    while span / pitch < 5 and pitch > 2 ** -40:
        pitch /= 2
    return pitch


def svg_for_instance(instance: DiskInstance, guides: bool = False) -> str:
    """Render a disk instance; colors follow disk tags, crosses mark points."""
    r = float(instance.radius)
    xs: List[float] = []
    ys: List[float] = []
    for d in instance.disks:
        xs += [float(d.x) - r, float(d.x) + r]
        ys += [float(d.y) - r, float(d.y) + r]
    for (px, py) in instance.points.values():
        xs.append(float(px))
        ys.append(float(py))
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    frame = _Frame(min(xs), min(ys), max(xs), max(ys))
    out: List[str] = []
    _open_svg(frame, out)
    if guides and instance.disks:
        span = max(max(xs) - min(xs), max(ys) - min(ys))
        _grid_lines(frame, min(xs), min(ys), max(xs), max(ys),
                    _guide_pitch(span), out)

    color_of: Dict[Tuple, str] = {}
    terminal = set(int(t) for t in instance.meta.get("terminal_disks", []))
    out.append('<g stroke="#333333" stroke-width="0.6" fill-opacity="0.5">')
    for i, d in enumerate(instance.disks):
        # the last tag component indexes disks inside one structure; the
        # prefix identifies the structure itself
        key = tuple(str(t) for t in d.tag[:-1]) if len(d.tag) >= 2 else ("disk",)
        if key not in color_of:
            color_of[key] = _PALETTE[len(color_of) % len(_PALETTE)]
        cx, cy = frame.pt(float(d.x), float(d.y))
        extra = ' stroke="#000000" stroke-width="2.4"' if i in terminal else ""
        out.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r * frame.k)}" '
            f'fill="{color_of[key]}"{extra}/>'
        )
    out.append("</g>")

    if instance.points:
        out.append('<g stroke="#cc0000" stroke-width="2">')
        for label in sorted(instance.points):
            px, py = frame.pt(float(instance.points[label][0]),
                              float(instance.points[label][1]))
            m = 7.0
            out.append(f'<line x1="{_fmt(px - m)}" y1="{_fmt(py - m)}" x2="{_fmt(px + m)}" y2="{_fmt(py + m)}"/>')
            out.append(f'<line x1="{_fmt(px - m)}" y1="{_fmt(py + m)}" x2="{_fmt(px + m)}" y2="{_fmt(py - m)}"/>')
            out.append(
                f'<text x="{_fmt(px)}" y="{_fmt(py - 11)}" font-size="16" '
                f'fill="#cc0000" stroke="none" text-anchor="middle">{label}</text>'
            )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def svg_for_embedding(emb: GridEmbedding, guides: bool = True) -> str:
    """Render a straight-line grid drawing with vertex labels."""
    coords = emb.coords
    xs = [float(x) for x, _ in coords.values()] or [0.0]
    ys = [float(y) for _, y in coords.values()] or [0.0]
    frame = _Frame(min(xs), min(ys), max(xs), max(ys))
    out: List[str] = []
    _open_svg(frame, out)
    if guides:
        _grid_lines(frame, min(xs), min(ys), max(xs), max(ys), 1.0, out)
    out.append('<g stroke="#4477aa" stroke-width="3">')
    for (u, v) in emb.graph.edges:
        ax, ay = frame.pt(*[float(c) for c in coords[u]])
        bx, by = frame.pt(*[float(c) for c in coords[v]])
        out.append(f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}"/>')
    out.append("</g>")
    out.append('<g font-size="18" text-anchor="middle">')
    for v in emb.graph.vertices:
        cx, cy = frame.pt(*[float(c) for c in coords[v]])
        out.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="6" fill="#222222"/>')
        out.append(f'<text x="{_fmt(cx)}" y="{_fmt(cy - 12)}" fill="#222222">{v}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
