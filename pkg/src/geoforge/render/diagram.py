"""Deterministic SVG rendering of problem diagrams.

The SVG is assembled by plain string formatting (no drawing library), so
identical input yields byte-identical output.  Point dots carry their
normalized coordinates at full float precision and the root group records
the affine canvas transform, which lets the verifier recover exact
coordinates from the file alone.

Annotation legend: tick marks for equal segments, chevrons for parallels,
a small square for right angles, arcs for equal angles, dashed circles for
concyclicity.  Only relations stated by true options are marked; option
segments of false options are drawn unmarked.
"""
from __future__ import annotations

import math

from ..kernel.diagram import Diagram
from ..kernel.dsl import Premise
from ..kernel.facts import Fact
from ..kernel.geometry import Circle, Line, Point, line_line_intersection

CANVAS = 560.0
PAD = 48.0
FONT = 14.0
LABEL_W = 9.0        # per-character width estimate for overlap checks
PLACE_CAP = 400      # hard cap on label placement iterations


def render_diagram(problem, diagram: Diagram) -> str:
    """SVG text for a problem over its (refined-premise) diagram."""
    scale = CANVAS - 2 * PAD

    def cv(p: Point) -> tuple[float, float]:
        return (PAD + p.x * scale, CANVAS - PAD - p.y * scale)

    coords = diagram.coords
    segments: dict[tuple[str, str], None] = {}
    circles: dict[tuple, None] = {}
    for con in problem.premise.constructions:
        for clause in con.clauses:
            tpl = clause.template
            for d in tpl.draws:
                if d[0] == "seg":
                    a, b = clause.args[d[1]], clause.args[d[2]]
                    segments.setdefault(_skey(a, b))
                elif d[0] == "circ":
                    circles.setdefault(("c", clause.args[d[1]], clause.args[d[2]]))
                elif d[0] == "circum":
                    circles.setdefault(("t",) + tuple(clause.args[i] for i in d[1:]))
    for opt in problem.options:
        for seg in _statement_segments(opt.statement):
            segments.setdefault(seg)

    marks = []
    tick_counter = 0
    for opt in problem.options:
        if not opt.truth or not isinstance(opt.statement, Fact):
            continue
        tick_counter += 1
        marks.extend(_marks_for(opt.statement, coords, cv, min(tick_counter, 3)))

    out = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(CANVAS)}" '
               f'height="{int(CANVAS)}" viewBox="0 0 {int(CANVAS)} {int(CANVAS)}">')
    out.append(f'<g class="figure" data-scale="{scale!r}" data-pad="{PAD!r}" '
               f'data-canvas="{CANVAS!r}">')
    out.append('<rect width="100%" height="100%" fill="white"/>')

    for key in circles:
        if key[0] == "c":
            center, through = coords[key[1]], coords[key[2]]
            r = center.distance(through)
            cx, cy = cv(center)
            out.append(f'<circle class="construction" cx="{cx:.3f}" cy="{cy:.3f}" '
                       f'r="{r * scale:.3f}" fill="none" stroke="#555" stroke-width="1"/>')
        else:
            c = Circle.through(coords[key[1]], coords[key[2]], coords[key[3]])
            cx, cy = cv(c.center)
            out.append(f'<circle class="construction" cx="{cx:.3f}" cy="{cy:.3f}" '
                       f'r="{c.radius * scale:.3f}" fill="none" stroke="#555" stroke-width="1"/>')
    for a, b in segments:
        if a not in coords or b not in coords:
            continue
        x1, y1 = cv(coords[a])
        x2, y2 = cv(coords[b])
        out.append(f'<line class="construction" x1="{x1:.3f}" y1="{y1:.3f}" '
                   f'x2="{x2:.3f}" y2="{y2:.3f}" stroke="#222" stroke-width="1.3"/>')

    out.append('<g class="annotations">')
    out.extend(marks)
    out.append('</g>')

    label_positions = _place_labels(coords, cv)
    out.append('<g class="points">')
    for name, p in coords.items():
        x, y = cv(p)
        out.append(f'<circle class="point" data-name="{name}" data-x="{p.x!r}" '
                   f'data-y="{p.y!r}" cx="{x:.4f}" cy="{y:.4f}" r="2.6" fill="#000"/>')
    for name, (lx, ly) in label_positions.items():
        out.append(f'<text class="label" data-for="{name}" x="{lx:.2f}" y="{ly:.2f}" '
                   f'font-family="Helvetica" font-size="{FONT:g}">{name.upper()}</text>')
    out.append('</g>')
    out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"


def _skey(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def _statement_segments(stmt) -> list[tuple[str, str]]:
    if not isinstance(stmt, Fact):
        return [_skey(stmt.a, stmt.b), _skey(stmt.c, stmt.d)]
    p, a = stmt.predicate, stmt.args
    if p in ("para", "perp", "cong"):
        return [_skey(a[0], a[1]), _skey(a[2], a[3])]
    if p in ("coll",):
        return [_skey(a[0], a[1]), _skey(a[1], a[2])]
    if p == "midp":
        return [_skey(a[0], a[1]), _skey(a[0], a[2])]
    if p in ("eqangle", "eqratio"):
        return [_skey(a[2 * i], a[2 * i + 1]) for i in range(4)]
    if p == "eqratio3":
        return [_skey(a[4], a[0]), _skey(a[4], a[2]), _skey(a[5], a[1]),
                _skey(a[5], a[3]), _skey(a[0], a[1]), _skey(a[2], a[3])]
    return []


def _marks_for(fact: Fact, coords, cv, n: int) -> list[str]:
    p, a = fact.predicate, fact.args
    out: list[str] = []
    if p == "cong":
        out += _tick(coords[a[0]], coords[a[1]], cv, n, fact)
        out += _tick(coords[a[2]], coords[a[3]], cv, n, fact)
    elif p == "midp":
        out += _tick(coords[a[0]], coords[a[1]], cv, n, fact)
        out += _tick(coords[a[0]], coords[a[2]], cv, n, fact)
    elif p == "para":
        out += _chevron(coords[a[0]], coords[a[1]], cv, n, fact)
        out += _chevron(coords[a[2]], coords[a[3]], cv, n, fact)
    elif p == "perp":
        sq = _perp_square(coords[a[0]], coords[a[1]], coords[a[2]], coords[a[3]], cv, fact)
        if sq:
            out.append(sq)
    elif p == "eqangle":
        arc1 = _angle_arc(a[0], a[1], a[2], a[3], coords, cv, n, fact)
        arc2 = _angle_arc(a[4], a[5], a[6], a[7], coords, cv, n, fact)
        out += arc1 + arc2
    elif p == "cyclic":
        c = Circle.through(coords[a[0]], coords[a[1]], coords[a[2]])
        cx, cy = cv(c.center)
        scale = CANVAS - 2 * PAD
        out.append(f'<circle class="mark mark-cyclic" data-kind="cyclic" '
                   f'data-args="{",".join(a)}" cx="{cx:.3f}" cy="{cy:.3f}" '
                   f'r="{c.radius * scale:.3f}" fill="none" stroke="#06c" '
                   f'stroke-width="1" stroke-dasharray="5,4"/>')
    elif p == "circle":
        center, through = coords[a[0]], coords[a[1]]
        cx, cy = cv(center)
        scale = CANVAS - 2 * PAD
        out.append(f'<circle class="mark mark-circle" data-kind="circle" '
                   f'data-args="{",".join(a)}" cx="{cx:.3f}" cy="{cy:.3f}" '
                   f'r="{center.distance(through) * scale:.3f}" fill="none" '
                   f'stroke="#06c" stroke-width="1" stroke-dasharray="5,4"/>')
    return out


def _tick(p: Point, q: Point, cv, n: int, fact: Fact) -> list[str]:
    x1, y1 = cv(p)
    x2, y2 = cv(q)
    mx, my = (x1 + x2) / 2, (y1 + y2) / 2
    dx, dy = x2 - x1, y2 - y1
    ln = math.hypot(dx, dy) or 1.0
    ux, uy = dx / ln, dy / ln
    nx, ny = -uy, ux
    out = []
    for i in range(n):
        off = (i - (n - 1) / 2) * 5.0
        cxx, cyy = mx + ux * off, my + uy * off
        out.append(f'<line class="mark mark-cong" data-kind="cong" '
                   f'data-args="{fact.args[0]},{fact.args[1]},{fact.args[2]},{fact.args[3]}" '
                   f'x1="{cxx - nx * 5:.2f}" y1="{cyy - ny * 5:.2f}" '
                   f'x2="{cxx + nx * 5:.2f}" y2="{cyy + ny * 5:.2f}" '
                   f'stroke="#c00" stroke-width="1.4"/>')
    return out


def _chevron(p: Point, q: Point, cv, n: int, fact: Fact) -> list[str]:
    x1, y1 = cv(p)
    x2, y2 = cv(q)
    dx, dy = x2 - x1, y2 - y1
    ln = math.hypot(dx, dy) or 1.0
    ux, uy = dx / ln, dy / ln
    nx, ny = -uy, ux
    out = []
    for i in range(n):
        t = 0.55 + 0.08 * i
        mx, my = x1 + dx * t, y1 + dy * t
        pts = (f"{mx - ux * 6 + nx * 5:.2f},{my - uy * 6 + ny * 5:.2f} "
               f"{mx:.2f},{my:.2f} "
               f"{mx - ux * 6 - nx * 5:.2f},{my - uy * 6 - ny * 5:.2f}")
        out.append(f'<polyline class="mark mark-para" data-kind="para" '
                   f'data-args="{",".join(fact.args)}" points="{pts}" fill="none" '
                   f'stroke="#080" stroke-width="1.4"/>')
    return out


def _perp_square(a: Point, b: Point, c: Point, d: Point, cv, fact: Fact) -> str | None:
    try:
        x = line_line_intersection(Line(a, b), Line(c, d))
    except Exception:
        return None
    u1 = _unit_vec(a, b)
    u2 = _unit_vec(c, d)
    # orient the square into the drawn quadrant
    s = 10.0
    x0, y0 = cv(x)
    p1 = (x0 + u1[0] * s, y0 - u1[1] * s)
    p2 = (x0 + (u1[0] + u2[0]) * s, y0 - (u1[1] + u2[1]) * s)
    p3 = (x0 + u2[0] * s, y0 - u2[1] * s)
    return (f'<polyline class="mark mark-perp" data-kind="perp" '
            f'data-args="{",".join(fact.args)}" '
            f'points="{p1[0]:.2f},{p1[1]:.2f} {p2[0]:.2f},{p2[1]:.2f} '
            f'{p3[0]:.2f},{p3[1]:.2f}" fill="none" stroke="#c60" stroke-width="1.4"/>')


def _unit_vec(p: Point, q: Point) -> tuple[float, float]:
    dx, dy = q.x - p.x, q.y - p.y
    ln = math.hypot(dx, dy) or 1.0
    return dx / ln, dy / ln


def _angle_arc(a: str, b: str, c: str, d: str, coords, cv, n: int,
               fact: Fact) -> list[str]:
    shared = ({a, b} & {c, d})
    if not shared:
        return []
    v = shared.pop()
    e1 = b if a == v else a
    e2 = d if c == v else c
    pv, p1, p2 = coords[v], coords[e1], coords[e2]
    x0, y0 = cv(pv)
    a1 = math.atan2(*(lambda t: (t[1] - y0, t[0] - x0))(cv(p1)))
    a2 = math.atan2(*(lambda t: (t[1] - y0, t[0] - x0))(cv(p2)))
    out = []
    for i in range(n):
        r = 14.0 + 4.0 * i
        sx, sy = x0 + r * math.cos(a1), y0 + r * math.sin(a1)
        ex, ey = x0 + r * math.cos(a2), y0 + r * math.sin(a2)
        sweep = 1 if (a2 - a1) % (2 * math.pi) < math.pi else 0
        out.append(f'<path class="mark mark-eqangle" data-kind="eqangle" '
                   f'data-args="{",".join(fact.args)}" '
                   f'd="M {sx:.2f} {sy:.2f} A {r:g} {r:g} 0 0 {sweep} {ex:.2f} {ey:.2f}" '
                   f'fill="none" stroke="#90c" stroke-width="1.3"/>')
    return out


def _place_labels(coords: dict[str, Point], cv) -> dict[str, tuple[float, float]]:
    """Greedy ring placement; deterministic radial fallback at the cap."""
    offsets = [(10, -8), (-16, -8), (10, 18), (-16, 18),
               (0, -14), (0, 22), (16, 6), (-22, 6)]
    placed: dict[str, tuple[float, float]] = {}
    boxes: list[tuple[float, float, float, float]] = []
    pts = [cv(p) for p in coords.values()]
    iterations = 0
    for name, p in coords.items():
        x, y = cv(p)
        best = None
        best_pen = math.inf
        for ox, oy in offsets:
            iterations += 1
            if iterations > PLACE_CAP:
                break
            bx, by = x + ox, y + oy
            box = (bx, by - FONT, bx + LABEL_W * len(name), by)
            pen = sum(_overlap(box, b) for b in boxes)
            pen += sum(4.0 for (px, py) in pts
                       if box[0] - 3 < px < box[2] + 3 and box[1] - 3 < py < box[3] + 3)
            if pen < best_pen:
                best_pen = pen
                best = (bx, by, box)
            if pen == 0.0:
                break
        if best is None:  # past the cap: fixed radial offset
            bx, by = x + 12, y - 10
            best = (bx, by, (bx, by - FONT, bx + LABEL_W, by))
        placed[name] = (best[0], best[1])
        boxes.append(best[2])
    return placed


def _overlap(b1, b2) -> float:
    w = min(b1[2], b2[2]) - max(b1[0], b2[0])
    h = min(b1[3], b2[3]) - max(b1[1], b2[1])
    return w * h if (w > 0 and h > 0) else 0.0
