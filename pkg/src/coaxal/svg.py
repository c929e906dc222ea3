"""Minimal SVG 1.1 scene emitter for pencil figures.

Geometry is given in canonical-frame coordinates (T is the unit circle) and
mapped affinely to pixels with the y axis flipped. Every element carries a
``class`` attribute naming its layer so tests can count them.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .pencil import OrientedCircle, Pencil, circle_at
from .poncelet import Trajectory

SVG_NS = "http://www.w3.org/2000/svg"

Point = Tuple[float, float]

# beyond this the figure is mostly empty space
_MAX_HALF_EXTENT = 6.0


@dataclass
class Scene:
    circles: List[Tuple[OrientedCircle, str]] = field(default_factory=list)
    segments: List[Tuple[Point, Point, str]] = field(default_factory=list)
    points: List[Tuple[Point, str]] = field(default_factory=list)
    vertical_lines: List[Tuple[float, str]] = field(default_factory=list)


DEFAULT_STROKES = {
    "outer": 2.0,
    "inner": 1.5,
    "pencil": 0.75,
    "side": 1.5,
    "diagonal": 0.75,
    "radical-axis": 1.0,
    "conjugate": 1.0,
    "conjugate-chord": 0.75,
}

DEFAULT_COLORS = {
    "outer": "#000000",
    "inner": "#1f5fbf",
    "pencil": "#9a9a9a",
    "side": "#c0392b",
    "diagonal": "#e59866",
    "radical-axis": "#27ae60",
    "limit-point": "#27ae60",
    "vertex": "#c0392b",
    "conjugate": "#8e44ad",
    "conjugate-chord": "#bb8fce",
}


@dataclass
class RenderSpec:
    path: str
    size: int = 600
    strokes: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_STROKES))
    marker_radius: float = 3.5
    layers: Dict[str, bool] = field(
        default_factory=lambda: {
            "pencil": True,
            "radical-axis": True,
            "limit-point": True,
            "polygon": True,
            "diagonal": True,
            "conjugate": True,
        }
    )

    def shows(self, cls: str) -> bool:
        if cls in ("side", "vertex"):
            return self.layers.get("polygon", True)
        if cls == "conjugate-chord":
            return self.layers.get("conjugate", True)
        return self.layers.get(cls, True)


def build_scene(
    p: Optional[Pencil],
    *,
    inner_a: Optional[float] = None,
    polygon: Optional[Trajectory] = None,
    diagonals: bool = False,
    pencil_circles: int = 0,
    radical_axis: bool = False,
    limit_points: bool = False,
    conjugate: Optional[Tuple[OrientedCircle, List[Tuple[Point, Point]]]] = None,
) -> Scene:
    """Collect the geometry of one figure. T is always included."""
    scene = Scene()
    scene.circles.append((OrientedCircle((0.0, 0.0), 1.0), "outer"))
    if p is not None and pencil_circles > 0:
        for i in range(1, pencil_circles + 1):
            scene.circles.append((circle_at(p, p.K * i / (pencil_circles + 1)), "pencil"))
    if p is not None and inner_a is not None:
        scene.circles.append((circle_at(p, inner_a), "inner"))
    if p is not None and radical_axis and math.isfinite(p.radical_axis_x):
        scene.vertical_lines.append((p.radical_axis_x, "radical-axis"))
    if p is not None and limit_points and p.L != 0.0:
        scene.points.append(((p.L, 0.0), "limit-point"))
        scene.points.append(((1.0 / p.L, 0.0), "limit-point"))
    if polygon is not None:
        ring = polygon.vertices[:-1]
        n = len(ring)
        for v, w in zip(ring, ring[1:] + ring[:1]):
            scene.segments.append((v.xy, w.xy, "side"))
        if diagonals:
            for step in range(2, n // 2 + 1):
                count = step if 2 * step == n else n
                for i in range(count):
                    scene.segments.append((ring[i].xy, ring[(i + step) % n].xy, "diagonal"))
        for v in ring:
            scene.points.append((v.xy, "vertex"))
    if conjugate is not None:
        circle, chords = conjugate
        scene.circles.append((circle, "conjugate"))
        for a, b in chords:
            scene.segments.append((a, b, "conjugate-chord"))
    return scene


def _half_extent(scene: Scene, spec: RenderSpec) -> float:
    h = 1.0
    for c, cls in scene.circles:
        if spec.shows(cls):
            h = max(h, abs(c.center[0]) + c.radius, abs(c.center[1]) + c.radius)
    for (x, y), cls in scene.points:
        if spec.shows(cls):
            h = max(h, abs(x), abs(y))
    for x, cls in scene.vertical_lines:
        if spec.shows(cls):
            h = max(h, abs(x))
    # 5% margin around everything, T included
    return min(1.05 * h, _MAX_HALF_EXTENT)


def _fmt(v: float) -> str:
    return f"{v:.4f}".rstrip("0").rstrip(".")


def render_svg(scene: Scene, spec: RenderSpec) -> str:
    """Write ``scene`` to ``spec.path`` and return the path."""
    half = _half_extent(scene, spec)
    size = spec.size
    s = size / (2.0 * half)

    def px(pt: Point) -> Tuple[str, str]:
        return _fmt((pt[0] + half) * s), _fmt((half - pt[1]) * s)

    ET.register_namespace("", SVG_NS)
    root = ET.Element(
        f"{{{SVG_NS}}}svg",
        {
            "version": "1.1",
            "width": str(size),
            "height": str(size),
            "viewBox": f"0 0 {size} {size}",
        },
    )
    ET.SubElement(root, f"{{{SVG_NS}}}rect", {"width": "100%", "height": "100%", "fill": "#ffffff"})

    def stroke(cls):
        return {
            "stroke": DEFAULT_COLORS.get(cls, "#000000"),
            "stroke-width": _fmt(spec.strokes.get(cls, 1.0)),
        }

    for c, cls in scene.circles:
        if not spec.shows(cls):
            continue
        cx, cy = px(c.center)
        attrs = {"class": cls, "cx": cx, "cy": cy, "r": _fmt(c.radius * s), "fill": "none"}
        attrs.update(stroke(cls))
        ET.SubElement(root, f"{{{SVG_NS}}}circle", attrs)
    for x, cls in scene.vertical_lines:
        if not spec.shows(cls):
            continue
        x1, y1 = px((x, half))
        x2, y2 = px((x, -half))
        attrs = {"class": cls, "x1": x1, "y1": y1, "x2": x2, "y2": y2, "stroke-dasharray": "6 4"}
        attrs.update(stroke(cls))
        ET.SubElement(root, f"{{{SVG_NS}}}line", attrs)
    for a, b, cls in scene.segments:
        if not spec.shows(cls):
            continue
        x1, y1 = px(a)
        x2, y2 = px(b)
        attrs = {"class": cls, "x1": x1, "y1": y1, "x2": x2, "y2": y2}
        attrs.update(stroke(cls))
        ET.SubElement(root, f"{{{SVG_NS}}}line", attrs)
    for pt, cls in scene.points:
        if not spec.shows(cls):
            continue
        cx, cy = px(pt)
        ET.SubElement(
            root,
            f"{{{SVG_NS}}}circle",
            {"class": cls, "cx": cx, "cy": cy, "r": _fmt(spec.marker_radius), "fill": DEFAULT_COLORS.get(cls, "#000")},
        )
    tree = ET.ElementTree(root)
    ET.indent(tree)
    with open(spec.path, "wb") as fh:
        tree.write(fh, encoding="utf-8", xml_declaration=True)
    return spec.path
