"""Machine checks replacing the manual figure review.

Three checks, each a proxy for one review criterion: label readability
(no overlapping label boxes), geometric validity (declared relations hold
on the coordinates recovered from the file), and description alignment
(text points all drawn; every annotation mark states a true relation).
"""
from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from ..kernel.facts import Fact, TOL_TRUE, residual
from ..kernel.geometry import Point
from .diagram import FONT, LABEL_W
from .text import statement_points

EPS_LABEL_FRACTION = 0.015   # of the figure diagonal


@dataclass
class RenderReport:
    readability_ok: bool = True
    validity_ok: bool = True
    alignment_ok: bool = True
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.readability_ok and self.validity_ok and self.alignment_ok

    def flag(self, check: str, detail: str) -> None:
        self.violations.append((check, detail))
        setattr(self, f"{check}_ok", False)


def verify_render(problem, diagram, svg: str) -> RenderReport:
    report = RenderReport()
    ns = {"svg": "http://www.w3.org/2000/svg"}
    root = ET.fromstring(svg)

    labels = []
    points: dict[str, Point] = {}
    marks = []
    for el in root.iter():
        tag = el.tag.split("}")[-1]
        cls = el.get("class", "")
        if tag == "text" and "label" in cls:
            labels.append((el.get("data-for"), float(el.get("x")), float(el.get("y"))))
        elif tag == "circle" and cls == "point":
            points[el.get("data-name")] = Point(float(el.get("data-x")),
                                                float(el.get("data-y")))
        elif "mark" in cls.split():
            marks.append((el.get("data-kind"), el.get("data-args", "")))

    canvas = float(root.find("svg:g", ns).get("data-canvas"))
    eps = EPS_LABEL_FRACTION * canvas * math.sqrt(2)

    # readability: no label boxes closer than eps
    boxes = [(x, y - FONT, x + LABEL_W * len(n or "?"), y, n) for n, x, y in labels]
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if _box_gap(boxes[i], boxes[j]) < eps - 1e-9:
                report.flag("readability",
                            f"labels {boxes[i][4]} and {boxes[j][4]} overlap")

    # validity: every declared relation true on the drawn coordinates
    diameter = _diameter(points) or 1.0
    declared = list(problem.premise.facts())
    for opt in problem.options:
        if opt.truth and isinstance(opt.statement, Fact):
            declared.append(opt.statement)
    for fact in declared:
        if any(p not in points for p in fact.args):
            report.flag("validity", f"point of {fact} missing from figure")
            continue
        if residual(fact, points, diameter) >= TOL_TRUE:
            report.flag("validity", f"{fact} fails on drawn coordinates")

    # alignment: text points drawn; marks state true relations
    for name in problem.premise.points:
        if name not in points:
            report.flag("alignment", f"point {name} not drawn")
        if name not in {n for n, _, _ in labels}:
            report.flag("alignment", f"point {name} has no label")
    for opt in problem.options:
        for name in statement_points(opt.statement):
            if name not in points:
                report.flag("alignment", f"option point {name} not drawn")
    for kind, args in marks:
        arg_list = tuple(a for a in args.split(",") if a)
        if kind in ("cong", "para", "perp", "eqangle", "cyclic", "circle", "coll"):
            if any(a not in points for a in arg_list):
                report.flag("alignment", f"mark {kind} references unknown point")
                continue
            fact = Fact.make(kind, arg_list)
            if residual(fact, points, diameter) >= TOL_TRUE:
                report.flag("alignment", f"contradictory {kind} mark on {args}")
    return report


def _box_gap(b1, b2) -> float:
    dx = max(b1[0] - b2[2], b2[0] - b1[2], 0.0)
    dy = max(b1[1] - b2[3], b2[1] - b1[3], 0.0)
    return math.hypot(dx, dy)


def _diameter(points: dict[str, Point]) -> float:
    names = list(points)
    best = 0.0
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            best = max(best, points[names[i]].distance(points[names[j]]))
    return best
