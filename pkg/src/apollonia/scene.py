"""JSON and SVG export of the apex/simplex scene; output is byte-deterministic."""
from __future__ import annotations

import json
import math
from typing import Sequence

import numpy as np

from .cone import (Circle, SceneModel, classify, edge_tangency_check, helmert_coordinates,
                   section_point)
from .errors import ValidationError

SVG_SIZE = 1000
SVG_SCALE = 500.0  # pixels per unit; apexes lie within 0.87 of the sphere center

_H = np.array([[1, -1, 0, 0], [1, 1, -2, 0], [1, 1, 1, -3]], dtype=float) / np.array(
    [[math.sqrt(2)], [math.sqrt(6)], [math.sqrt(12)]])


def _r(x: float) -> float:
    return round(float(x), 12) + 0.0  # also folds -0.0 into 0.0


def _vec(v) -> list[float]:
    return [_r(x) for x in v]


def _circle3(c: Circle):
    center, radius = c.center_radius()
    return helmert_coordinates(center), tuple(_H @ np.array(c.normal())), radius


def parse_projection(text: str | Sequence[float]) -> np.ndarray:
    if isinstance(text, str):
        try:
            vals = [float(x) for x in text.split(",")]
        except ValueError:
            raise ValidationError(f"malformed projection {text!r}; expected x,y,z") from None
    else:
        vals = [float(x) for x in text]
    if len(vals) != 3 or not any(vals):
        raise ValidationError(f"projection must be a nonzero 3-vector, got {text!r}")
    d = np.array(vals)
    return d / np.linalg.norm(d)


def _grid(n: int, spread: float = 0.6) -> list[dict]:
    out = []
    ticks = np.linspace(-spread, spread, n) if n > 1 else np.zeros(1)
    for a in ticks:
        for b in ticks:
            for c in ticks:
                s = np.full(4, 0.25) + _H.T @ np.array([a, b, c])
                label = classify(tuple(float(x) for x in s)).label.value
                out.append({"point": _vec((a, b, c)), "label": label})
    return out


def scene_json(model: SceneModel, grid: int = 5, config: dict | None = None) -> str:
    apexes = []
    for i, (p, d) in enumerate(zip(model.apexes, model.apex_depth)):
        apexes.append({"index": i, "weight": [int(x) for x in p], "depth": d,
                       "point": _vec(helmert_coordinates(section_point(p)))})
    circles = []
    for i, c in enumerate(model.circles):
        center, normal, radius = _circle3(c)
        circles.append({"apex": i, "center": _vec(center), "normal": _vec(normal),
                        "radius": _r(radius)})
    edges = []
    for a, b in model.edges:
        t = edge_tangency_check(model.apexes[a], model.apexes[b])
        edges.append({"apexes": [a, b], "tangent": t.tangent,
                      "tangency": [str(x) for x in t.point] if t.point else None,
                      "tangency_point": _vec(helmert_coordinates(t.point)) if t.point else None})
    simplices = [{"word": "".join(map(str, w)), "apexes": list(v)} for w, v in model.simplices]
    doc = {
        "config": config or {},
        "frame": "affine section s1+s2+s3+s4=1 in orthonormal coordinates about (1/4,1/4,1/4,1/4)",
        "sphere": {"center": [0.0, 0.0, 0.0], "radius": 0.5},
        "depth": model.depth,
        "apexes": apexes,
        "circles": circles,
        "edges": edges,
        "simplices": simplices,
        "grid": _grid(grid),
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def _frame(d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ref = np.array([0.0, 0.0, 1.0]) if abs(d[2]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(ref, d)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(d, e1)
    return e1, e2


def scene_svg(model: SceneModel, projection="1,1,1", config: dict | None = None) -> str:
    d = parse_projection(projection)
    e1, e2 = _frame(d)

    def screen(p3) -> tuple[float, float]:
        p3 = np.asarray(p3, dtype=float)
        return SVG_SIZE / 2 + SVG_SCALE * float(p3 @ e1), SVG_SIZE / 2 - SVG_SCALE * float(p3 @ e2)

    f = "{:.3f}".format
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}" '
             f'width="{SVG_SIZE}" height="{SVG_SIZE}">']
    if config:
        lines.append(f"<!-- config: {json.dumps(config, sort_keys=True)} -->")
    cx, cy = screen((0, 0, 0))
    lines.append(f'<circle cx="{f(cx)}" cy="{f(cy)}" r="{f(SVG_SCALE * 0.5)}" '
                 'fill="none" stroke="#bbbbbb" stroke-width="1"/>')
    for c in model.circles:
        center, normal, radius = _circle3(c)
        x, y = screen(center)
        n = np.asarray(normal)
        axis = np.cross(d, n)
        if np.linalg.norm(axis) < 1e-12:
            angle = 0.0
        else:
            axis /= np.linalg.norm(axis)
            angle = math.degrees(math.atan2(-float(axis @ e2), float(axis @ e1)))
        rx = SVG_SCALE * radius
        ry = SVG_SCALE * radius * abs(float(n @ d))
        lines.append(f'<ellipse cx="{f(x)}" cy="{f(y)}" rx="{f(rx)}" ry="{f(ry)}" '
                     f'transform="rotate({f(angle + 0.0)} {f(x)} {f(y)})" '
                     'fill="none" stroke="#1f4e79" stroke-width="1"/>')
    pts = [screen(helmert_coordinates(section_point(p))) for p in model.apexes]
    for a, b in model.edges:
        (x1, y1), (x2, y2) = pts[a], pts[b]
        lines.append(f'<line x1="{f(x1)}" y1="{f(y1)}" x2="{f(x2)}" y2="{f(y2)}" '
                     'stroke="#b03a2e" stroke-width="0.6"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def export_scene(model: SceneModel, fmt: str = "json", projection="1,1,1",
                 path: str | None = None, config: dict | None = None, grid: int = 5) -> str:
    """Render ``model`` as JSON or SVG text, optionally writing it to ``path``."""
    if fmt == "json":
        text = scene_json(model, grid, config)
    elif fmt == "svg":
        text = scene_svg(model, projection, config)
    else:
        raise ValidationError(f"unknown format {fmt!r}; use svg or json")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
