"""Construction template catalog.

Each template describes one clause form of the construction DSL: its slot
layout (new points first, then existing-point / numeric arguments), the
facts its clause contributes to the premise, a closed-form numeric sketch,
and what the renderer should draw for it.

Template kinds:

* ``free``   -- defines 2-4 points from nothing (only legal at depth 0).
* ``point``  -- uniquely determines its new point(s) in closed form.
* ``line`` / ``circle`` -- a one-dimensional locus; alone, the new point is
  sampled on the locus; paired with a second locus clause, the point is
  their intersection.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .facts import Fact
from .geometry import (
    ATOM,
    Circle,
    Line,
    Point,
    circle_circle_intersection,
    direction_angle,
    line_circle_intersection,
    line_line_intersection,
)

F = Fact.make


@dataclass(frozen=True)
class Template:
    name: str
    new_points: int
    num_args: int               # existing-point slots
    kind: str                   # free | point | line | circle
    doc: str
    facts: Callable[..., list[Fact]]
    sketch: Callable[..., object]
    arg_check: Callable[..., bool] = lambda *a: True
    numeric_slots: int = 0      # trailing numeric parameters (s_angle)
    draws: tuple = ()           # ("seg", i, j) / ("circ", center_i, through_i)
                                # / ("circum", i, j, k) over slot indices


def _unit(v: Point) -> Point:
    n = v.norm()
    return Point(v.x / n, v.y / n)


def _distinct(*pts: Point) -> bool:
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i].distance(pts[j]) < 1e-6:
                return False
    return True


def _ncoll(a: Point, b: Point, c: Point) -> bool:
    area = (b - a).cross(c - a)
    scale = max(a.distance(b), a.distance(c), b.distance(c))
    return scale > 1e-6 and abs(area) / (scale * scale) > 1e-4


def _jitter(pts: list[Point], rng) -> list[Point]:
    """Random rotate/flip/scale/shift so seeded polygons vary per premise."""
    ang = rng.uniform(0.0, 2.0 * math.pi)
    flip = rng.random() < 0.5
    scale = rng.uniform(0.8, 1.25)
    dx, dy = rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)
    out = []
    for p in pts:
        q = Point(p.x, -p.y) if flip else p
        q = q.rotate(ang) * scale
        out.append(Point(q.x + dx, q.y + dy))
    return out


# ---------------------------------------------------------------- polygons

def _sk_triangle(rng):
    a = Point(0.0, 0.0)
    b = Point(1.0, 0.0)
    ang = rng.uniform(0.25, 0.75) * math.pi
    r = rng.uniform(0.5, 1.5)
    c = a + Point(math.cos(ang), math.sin(ang)) * r
    return [_jitter([a, b, c], rng)]


def _sk_iso_triangle(rng):
    base = rng.uniform(0.6, 1.5)
    height = rng.uniform(0.5, 1.5)
    return [_jitter([Point(0.0, height), Point(-base / 2, 0.0), Point(base / 2, 0.0)], rng)]


def _sk_ieq_triangle(rng):
    return [_jitter([Point(0.0, 0.0), Point(1.0, 0.0), Point(0.5, math.sqrt(3) / 2)], rng)]


def _sk_r_triangle(rng):
    return [_jitter([Point(0.0, 0.0), Point(0.0, rng.uniform(0.5, 1.6)),
                     Point(rng.uniform(0.5, 1.6), 0.0)], rng)]


def _sk_risos(rng):
    return [_jitter([Point(0.0, 0.0), Point(0.0, 1.0), Point(1.0, 0.0)], rng)]


def _sk_segment(rng):
    return [[Point(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)),
             Point(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))]]


def _sk_isquare(rng):
    return [_jitter([Point(0.0, 0.0), Point(1.0, 0.0), Point(1.0, 1.0), Point(0.0, 1.0)], rng)]


def _sk_rectangle(rng):
    w = rng.uniform(0.6, 1.8)
    return [_jitter([Point(0.0, 0.0), Point(0.0, 1.0), Point(w, 1.0), Point(w, 0.0)], rng)]


def _sk_trapezoid(rng):
    d = Point(0.0, 0.0)
    c = Point(1.0, 0.0)
    base = rng.uniform(0.4, 1.6)
    height = rng.uniform(0.4, 1.4)
    a = Point(rng.uniform(0.1, 0.5), height)
    b = Point(a.x + base, height)
    return [_jitter([a, b, c, d], rng)]


def _sk_r_trapezoid(rng):
    a = Point(0.0, 1.0)
    b = Point(rng.uniform(0.6, 1.6), 1.0)
    c = Point(rng.uniform(0.3, 1.3), 0.0)
    d = Point(0.0, 0.0)
    return [_jitter([a, b, c, d], rng)]


def _sk_eq_trapezoid(rng):
    a = Point(0.0, 0.0)
    b = Point(1.0, 0.0)
    top = rng.uniform(0.3, 1.7)
    height = rng.uniform(0.4, 1.4)
    c = Point(0.5 + top / 2, height)
    d = Point(0.5 - top / 2, height)
    return [_jitter([a, b, c, d], rng)]


def _sk_eq_quadrangle(rng):
    a = Point(0.0, 0.0)
    b = Point(1.0, 0.0)
    length = rng.uniform(0.5, 1.6)
    ang = rng.uniform(math.pi / 3, math.pi * 2 / 3)
    d = a + Point(math.cos(ang), math.sin(ang)) * length
    ang2 = math.atan2(d.y - b.y, d.x - b.x)
    ang2 = rng.uniform(ang2 / 10, ang2 / 9)
    c = b + Point(math.cos(ang2), math.sin(ang2)) * length
    return [_jitter([a, b, c, d], rng)]


def _sk_eqdia_quadrangle(rng):
    m = rng.uniform(0.3, 0.7)
    n = rng.uniform(0.3, 0.7)
    a, c = Point(-m, 0.0), Point(1 - m, 0.0)
    b, d = Point(0.0, -n), Point(0.0, 1 - n)
    ang = rng.uniform(-0.25 * math.pi, 0.25 * math.pi)
    return [_jitter([a, b.rotate(ang), c, d.rotate(ang)], rng)]


# ------------------------------------------------------- determined points

def _sk_midpoint(a, b, rng):
    return [[a.midpoint(b)]]


def _sk_mirror(a, b, rng):
    return [[b * 2 - a]]


def _sk_foot(a, b, c, rng):
    return [[a.foot(Line(b, c))]]


def _sk_circumcenter(a, b, c, rng):
    return [[Circle.through(a, b, c).center]]


def _sk_centroid(a, b, c, rng):
    return [[b.midpoint(c), c.midpoint(a), a.midpoint(b), (a + b + c) / 3.0]]


def _sk_incenter(a, b, c, rng):
    la, lb, lc = b.distance(c), c.distance(a), a.distance(b)
    s = la + lb + lc
    return [[(a * la + b * lb + c * lc) / s]]


def _sk_excenter(a, b, c, rng):
    la, lb, lc = b.distance(c), c.distance(a), a.distance(b)
    s = -la + lb + lc
    return [[(a * -la + b * lb + c * lc) / s]]


def _sk_orthocenter(a, b, c, rng):
    alt_a = Line(b, c).perpendicular_through(a)
    alt_b = Line(a, c).perpendicular_through(b)
    return [[line_line_intersection(alt_a, alt_b)]]


def _sk_ninepoints(a, b, c, rng):
    x, y, z = b.midpoint(c), c.midpoint(a), a.midpoint(b)
    return [[x, y, z, Circle.through(x, y, z).center]]


def _sk_eq_triangle(b, c, rng):
    x1 = b + (c - b).rotate(math.pi / 3)
    x2 = b + (c - b).rotate(-math.pi / 3)
    return [[x1], [x2]]           # caller picks the better root


def _sk_nsquare(a, b, rng):
    return [[a + (b - a).rotate(math.pi / 2)], [a + (b - a).rotate(-math.pi / 2)]]


def _sk_parallelogram(a, b, c, rng):
    return [[a - b + c]]


def _sk_shift(b, c, d, rng):
    return [[b + c - d]]


def _sk_square(a, b, rng):
    x = b + (a - b).rotate(-math.pi / 2)
    y = a + (b - a).rotate(math.pi / 2)
    return [[x, y]]


def _sk_tangent(a, o, b, rng):
    dia = Circle(a.midpoint(o), a.distance(o) / 2)
    p, q = circle_circle_intersection(Circle(o, o.distance(b)), dia)
    return [[p, q], [q, p]]


def _sk_intersection_ll(a, b, c, d, rng):
    return [[line_line_intersection(Line(a, b), Line(c, d))]]


def _sk_intersection_lp(a, b, c, m, n, rng):
    return [[line_line_intersection(Line(a, b), Line(m, n).parallel_through(c))]]


def _sk_intersection_lt(a, b, c, d, e, rng):
    return [[line_line_intersection(Line(a, b), Line(d, e).perpendicular_through(c))]]


def _sk_intersection_pp(a, b, c, d, e, f, rng):
    return [[line_line_intersection(Line(b, c).parallel_through(a),
                                    Line(e, f).parallel_through(d))]]


def _sk_intersection_tt(a, b, c, d, e, f, rng):
    return [[line_line_intersection(Line(b, c).perpendicular_through(a),
                                    Line(e, f).perpendicular_through(d))]]


def _sk_intersection_lc(a, o, b, rng):
    p, q = line_circle_intersection(Line(a, b), Circle(o, o.distance(b)))
    return [[p], [q]]


def _sk_reflect(a, b, c, rng):
    return [[a.foot(Line(b, c)) * 2 - a]]


def _sk_eqangle2(a, b, c, rng):
    ba = b.distance(a)
    bc = b.distance(c)
    ell = ba * ba / bc
    if rng.random() < 0.5:
        be = min(ell, bc)
        be = rng.uniform(be * 0.1, be * 0.9)
    else:
        be = max(ell, bc)
        be = rng.uniform(be * 1.1, be * 1.5)
    e = b + (c - b) * (be / bc)
    y = b + (a - b) * (be / ell)
    return [[line_line_intersection(Line(c, y), Line(a, e))]]


# ----------------------------------------------------------------- loci

def _line_through(p: Point, ang: float) -> Line:
    return Line(p, p + Point(math.cos(ang), math.sin(ang)))


def _lo_on_line(a, b):
    return Line(a, b)


def _lo_on_pline(a, b, c):
    return Line(b, c).parallel_through(a)


def _lo_on_tline(a, b, c):
    return Line(b, c).perpendicular_through(a)


def _lo_on_bline(a, b):
    return Line(a, b).perpendicular_through(a.midpoint(b))


def _lo_lc_tangent(a, o):
    return Line(o, a).perpendicular_through(a)


def _lo_on_circle(o, a):
    return Circle(o, o.distance(a))


def _lo_on_circum(a, b, c):
    return Circle.through(a, b, c)


def _lo_on_dia(a, b):
    return Circle(a.midpoint(b), a.distance(b) / 2)


def _lo_eqdistance(a, b, c):
    return Circle(a, b.distance(c))


def _lo_angle_bisector(a, b, c):
    w = _unit(a - b) + _unit(c - b)
    return Line(b, b + w)


def _lo_angle_mirror(a, b, c):
    t = 2 * math.atan2(c.y - b.y, c.x - b.x) - math.atan2(a.y - b.y, a.x - b.x)
    return _line_through(b, t)


def _lo_on_aline(a, b, d, c, e):
    # direction(AX) = direction(AB) - direction(DE) + direction(DC)  (mod pi)
    t = direction_angle(a, b) - direction_angle(d, e) + direction_angle(d, c)
    return _line_through(a, t)


def _lo_s_angle(a, b, deg):
    v = a - b
    return Line(b, b + v.rotate(math.radians(deg)))


def _lo_eqangle3(a, b, d, e, f):
    # Circle of points X with directed angle (XA -> XB) equal to (DE -> DF).
    theta = (direction_angle(d, f) - direction_angle(d, e)) % math.pi
    ab = a.distance(b)
    m = a.midpoint(b)
    u = _unit(b - a).rotate(math.pi / 2)
    h = ab / (2.0 * math.tan(theta))
    r = abs(ab / (2.0 * math.sin(theta)))
    for center in (m + u * h, m - u * h):
        circ = Circle(center, r)
        probe = center + (a - center).rotate(1.7)
        want = (direction_angle(probe, b) - direction_angle(probe, a)) % math.pi
        if abs(want - theta) < 1e-6 or abs(abs(want - theta) - math.pi) < 1e-6:
            return circ
    return Circle(m + u * h, r)


# ------------------------------------------------------------- fact makers

def _midp_facts(m, a, b):
    return [F("midp", (m, a, b)), F("coll", (m, a, b)), F("cong", (m, a, m, b))]


_SIDES3 = (("seg", 0, 1), ("seg", 1, 2), ("seg", 2, 0))
_SIDES4 = (("seg", 0, 1), ("seg", 1, 2), ("seg", 2, 3), ("seg", 3, 0))


def _registry() -> dict[str, Template]:
    T = []

    T.append(Template(
        "triangle", 3, 0, "free", "three free points forming a triangle",
        lambda a, b, c: [],
        _sk_triangle, draws=_SIDES3))
    T.append(Template(
        "iso_triangle", 3, 0, "free", "triangle with ab = ac",
        lambda a, b, c: [F("cong", (a, b, a, c))],
        _sk_iso_triangle, draws=_SIDES3))
    T.append(Template(
        "ieq_triangle", 3, 0, "free", "equilateral triangle",
        lambda a, b, c: [F("cong", (a, b, b, c)), F("cong", (b, c, c, a))],
        _sk_ieq_triangle, draws=_SIDES3))
    T.append(Template(
        "r_triangle", 3, 0, "free", "triangle with a right angle at the first vertex",
        lambda a, b, c: [F("perp", (a, b, a, c))],
        _sk_r_triangle, draws=_SIDES3))
    T.append(Template(
        "risos", 3, 0, "free", "right isosceles triangle (right angle at the first vertex)",
        lambda a, b, c: [F("perp", (a, b, a, c)), F("cong", (a, b, a, c))],
        _sk_risos, draws=_SIDES3))
    T.append(Template(
        "segment", 2, 0, "free", "two free points",
        lambda a, b: [],
        _sk_segment, draws=(("seg", 0, 1),)))
    T.append(Template(
        "isquare", 4, 0, "free", "square abcd",
        lambda a, b, c, d: [
            F("perp", (a, b, b, c)), F("cong", (a, b, b, c)), F("cong", (b, c, c, d)),
            F("para", (a, b, c, d)), F("para", (b, c, a, d)),
            F("cong", (a, c, b, d)), F("perp", (a, c, b, d))],
        _sk_isquare, draws=_SIDES4))
    T.append(Template(
        "rectangle", 4, 0, "free", "rectangle abcd",
        lambda a, b, c, d: [
            F("perp", (a, b, b, c)), F("para", (a, b, c, d)), F("para", (b, c, a, d)),
            F("cong", (a, b, c, d)), F("cong", (b, c, a, d)), F("cong", (a, c, b, d))],
        _sk_rectangle, draws=_SIDES4))
    T.append(Template(
        "trapezoid", 4, 0, "free", "trapezoid with ab parallel to cd",
        lambda a, b, c, d: [F("para", (a, b, c, d))],
        _sk_trapezoid, draws=_SIDES4))
    T.append(Template(
        "r_trapezoid", 4, 0, "free", "right trapezoid (ab parallel to cd, ad perpendicular to ab)",
        lambda a, b, c, d: [F("para", (a, b, c, d)), F("perp", (a, b, a, d))],
        _sk_r_trapezoid, draws=_SIDES4))
    T.append(Template(
        "eq_trapezoid", 4, 0, "free", "isosceles trapezoid (ab parallel to cd, ad = bc)",
        lambda a, b, c, d: [F("para", (a, b, c, d)), F("cong", (a, d, b, c))],
        _sk_eq_trapezoid, draws=_SIDES4))
    T.append(Template(
        "eq_quadrangle", 4, 0, "free", "quadrilateral with ad = bc",
        lambda a, b, c, d: [F("cong", (a, d, b, c))],
        _sk_eq_quadrangle, draws=_SIDES4))
    T.append(Template(
        "eqdia_quadrangle", 4, 0, "free", "quadrilateral with equal diagonals ac = bd",
        lambda a, b, c, d: [F("cong", (a, c, b, d))],
        _sk_eqdia_quadrangle,
        draws=_SIDES4 + (("seg", 0, 2), ("seg", 1, 3))))

    T.append(Template(
        "midpoint", 1, 2, "point", "midpoint of segment ab",
        lambda x, a, b: _midp_facts(x, a, b),
        _sk_midpoint,
        arg_check=lambda a, b: _distinct(a, b),
        draws=(("seg", 1, 2),)))
    T.append(Template(
        "mirror", 1, 2, "point", "reflection of a through b (b is the midpoint of ax)",
        lambda x, a, b: _midp_facts(b, a, x),
        _sk_mirror,
        arg_check=lambda a, b: _distinct(a, b),
        draws=(("seg", 1, 0),)))
    T.append(Template(
        "foot", 1, 3, "point", "foot of the perpendicular from a to line bc",
        lambda x, a, b, c: [F("perp", (a, x, b, c)), F("coll", (x, b, c))],
        _sk_foot,
        arg_check=_ncoll,
        draws=(("seg", 1, 0), ("seg", 2, 3))))
    T.append(Template(
        "circle", 1, 3, "point", "circumcenter of triangle abc",
        lambda x, a, b, c: [F("circle", (x, a, b, c)),
                            F("cong", (x, a, x, b)), F("cong", (x, b, x, c))],
        _sk_circumcenter,
        arg_check=_ncoll,
        draws=(("circ", 0, 1),)))
    T.append(Template(
        "centroid", 4, 3, "point", "side midpoints and centroid of triangle abc",
        lambda x, y, z, i, a, b, c: (
            _midp_facts(x, b, c) + _midp_facts(y, c, a) + _midp_facts(z, a, b)
            + [F("coll", (a, x, i)), F("coll", (b, y, i)), F("coll", (c, z, i))]),
        _sk_centroid,
        arg_check=_ncoll,
        draws=(("seg", 4, 5), ("seg", 5, 6), ("seg", 6, 4),
               ("seg", 4, 0), ("seg", 5, 1), ("seg", 6, 2))))
    T.append(Template(
        "incenter", 1, 3, "point", "incenter of triangle abc",
        lambda x, a, b, c: [F("eqangle", (a, b, a, x, a, x, a, c)),
                            F("eqangle", (b, a, b, x, b, x, b, c)),
                            F("eqangle", (c, a, c, x, c, x, c, b))],
        _sk_incenter,
        arg_check=_ncoll,
        draws=_sides_shift(1) + (("seg", 1, 0),)))
    T.append(Template(
        "excenter", 1, 3, "point", "excenter of triangle abc opposite vertex a",
        lambda x, a, b, c: [F("eqangle", (a, b, a, x, a, x, a, c))],
        _sk_excenter,
        arg_check=_ncoll,
        draws=_sides_shift(1) + (("seg", 1, 0),)))
    T.append(Template(
        "orthocenter", 1, 3, "point", "orthocenter of triangle abc",
        lambda x, a, b, c: [F("perp", (x, a, b, c)), F("perp", (x, b, c, a)),
                            F("perp", (x, c, a, b))],
        _sk_orthocenter,
        arg_check=lambda a, b, c: _ncoll(a, b, c) and min(
            abs((b - a).dot(c - a)), abs((a - b).dot(c - b)),
            abs((a - c).dot(b - c))) > 1e-3,
        draws=_sides_shift(1) + (("seg", 1, 0), ("seg", 2, 0), ("seg", 3, 0))))
    T.append(Template(
        "ninepoints", 4, 3, "point", "side midpoints of abc and their circumcenter",
        lambda x, y, z, i, a, b, c: (
            _midp_facts(x, b, c) + _midp_facts(y, c, a) + _midp_facts(z, a, b)
            + [F("circle", (i, x, y, z)), F("cong", (i, x, i, y)), F("cong", (i, y, i, z))]),
        _sk_ninepoints,
        arg_check=_ncoll,
        draws=(("seg", 4, 5), ("seg", 5, 6), ("seg", 6, 4), ("circ", 3, 0))))
    T.append(Template(
        "eq_triangle", 1, 2, "point", "x making triangle xbc equilateral",
        lambda x, b, c: [F("cong", (x, b, b, c)), F("cong", (b, c, c, x)),
                         F("cong", (x, b, c, x))],
        _sk_eq_triangle,
        arg_check=lambda b, c: _distinct(b, c),
        draws=_SIDES3))
    T.append(Template(
        "nsquare", 1, 2, "point", "x with xa = ab and xa perpendicular to ab",
        lambda x, a, b: [F("cong", (x, a, a, b)), F("perp", (x, a, a, b))],
        _sk_nsquare,
        arg_check=lambda a, b: _distinct(a, b),
        draws=(("seg", 0, 1), ("seg", 1, 2))))
    T.append(Template(
        "parallelogram", 1, 3, "point", "x completing parallelogram abcx",
        lambda x, a, b, c: [F("para", (a, b, c, x)), F("para", (b, c, a, x)),
                            F("cong", (a, b, c, x)), F("cong", (b, c, a, x))],
        _sk_parallelogram,
        arg_check=_ncoll,
        draws=(("seg", 1, 2), ("seg", 2, 3), ("seg", 3, 0), ("seg", 0, 1))))
    T.append(Template(
        "shift", 1, 3, "point", "x with xb = cd and xc = bd",
        lambda x, b, c, d: [F("cong", (x, b, c, d)), F("cong", (x, c, b, d)),
                            F("para", (x, b, c, d)), F("para", (x, c, b, d))],
        _sk_shift,
        arg_check=_distinct,
        draws=(("seg", 0, 1), ("seg", 2, 3))))
    T.append(Template(
        "square", 2, 2, "point", "x, y completing square abxy on side ab",
        lambda x, y, a, b: [
            F("perp", (a, b, b, x)), F("cong", (a, b, b, x)),
            F("para", (a, b, x, y)), F("cong", (a, b, x, y)),
            F("para", (b, x, a, y)), F("cong", (b, x, a, y)),
            F("cong", (a, x, b, y)), F("perp", (a, x, b, y))],
        _sk_square,
        arg_check=lambda a, b: _distinct(a, b),
        draws=(("seg", 2, 3), ("seg", 3, 0), ("seg", 0, 1), ("seg", 1, 2))))
    T.append(Template(
        "tangent", 2, 3, "point", "tangent touch points from a to the circle centered o through b",
        lambda x, y, a, o, b: [
            F("cong", (o, x, o, b)), F("cong", (o, y, o, b)),
            F("perp", (o, x, x, a)), F("perp", (o, y, y, a))],
        _sk_tangent,
        arg_check=lambda a, o, b: _distinct(a, o, b) and a.distance(o) > o.distance(b) * 1.01,
        draws=(("seg", 2, 0), ("seg", 2, 1), ("circ", 3, 4))))
    T.append(Template(
        "intersection_ll", 1, 4, "point", "intersection of lines ab and cd",
        lambda x, a, b, c, d: [F("coll", (x, a, b)), F("coll", (x, c, d))],
        _sk_intersection_ll,
        arg_check=lambda a, b, c, d: _distinct(a, b) and _distinct(c, d)
        and _lines_cross(Line(a, b), Line(c, d)),
        draws=(("seg", 1, 2), ("seg", 3, 4), ("seg", 1, 0), ("seg", 3, 0))))
    T.append(Template(
        "intersection_lp", 1, 5, "point",
        "intersection of line ab with the line through c parallel to mn",
        lambda x, a, b, c, m, n: [F("coll", (x, a, b)), F("para", (c, x, m, n))],
        _sk_intersection_lp,
        arg_check=lambda a, b, c, m, n: _distinct(a, b) and _distinct(m, n)
        and _lines_cross(Line(a, b), Line(m, n)) and Line(a, b).distance(c) > 1e-4,
        draws=(("seg", 1, 2), ("seg", 0, 3), ("seg", 4, 5))))
    T.append(Template(
        "intersection_lt", 1, 5, "point",
        "intersection of line ab with the line through c perpendicular to de",
        lambda x, a, b, c, d, e: [F("coll", (x, a, b)), F("perp", (c, x, d, e))],
        _sk_intersection_lt,
        arg_check=lambda a, b, c, d, e: _distinct(a, b) and _distinct(d, e)
        and _lines_cross(Line(a, b), Line(d, e).perpendicular_through(c)),
        draws=(("seg", 1, 2), ("seg", 0, 3), ("seg", 4, 5))))
    T.append(Template(
        "intersection_pp", 1, 6, "point",
        "x with xa parallel to bc and xd parallel to ef",
        lambda x, a, b, c, d, e, f: [F("para", (x, a, b, c)), F("para", (x, d, e, f))],
        _sk_intersection_pp,
        arg_check=lambda a, b, c, d, e, f: _distinct(b, c) and _distinct(e, f)
        and _distinct(a, d) and _lines_cross(Line(b, c), Line(e, f)),
        draws=(("seg", 0, 1), ("seg", 2, 3), ("seg", 0, 4), ("seg", 5, 6))))
    T.append(Template(
        "intersection_tt", 1, 6, "point",
        "x with xa perpendicular to bc and xd perpendicular to ef",
        lambda x, a, b, c, d, e, f: [F("perp", (x, a, b, c)), F("perp", (x, d, e, f))],
        _sk_intersection_tt,
        arg_check=lambda a, b, c, d, e, f: _distinct(b, c) and _distinct(e, f)
        and _distinct(a, d) and _lines_cross(Line(b, c), Line(e, f)),
        draws=(("seg", 0, 1), ("seg", 2, 3), ("seg", 0, 4), ("seg", 5, 6))))
    T.append(Template(
        "intersection_lc", 1, 3, "point",
        "second intersection of line ab with the circle centered o through b",
        lambda x, a, o, b: [F("coll", (x, a, b)), F("cong", (o, x, o, b))],
        _sk_intersection_lc,
        arg_check=lambda a, o, b: _distinct(a, o, b)
        and Line(a, b).distance(o) < o.distance(b) * 0.99,
        draws=(("seg", 1, 0), ("circ", 2, 3))))
    T.append(Template(
        "reflect", 1, 3, "point", "reflection of a across line bc",
        lambda x, a, b, c: [F("cong", (b, a, b, x)), F("cong", (c, a, c, x)),
                            F("perp", (a, x, b, c))],
        _sk_reflect,
        arg_check=_ncoll,
        draws=(("seg", 2, 3), ("seg", 1, 0))))
    T.append(Template(
        "eqangle2", 1, 3, "point", "x with angle bax equal to angle xcb",
        lambda x, a, b, c: [F("eqangle", (a, b, a, x, c, x, c, b))],
        _sk_eqangle2,
        arg_check=_ncoll,
        draws=(("seg", 1, 2), ("seg", 2, 3), ("seg", 1, 3), ("seg", 1, 0), ("seg", 3, 0))))

    T.append(Template(
        "angle_bisector", 1, 3, "line", "x on the bisector of angle abc",
        lambda x, a, b, c: [F("eqangle", (b, a, b, x, b, x, b, c))],
        _lo_angle_bisector,
        arg_check=_ncoll,
        draws=(("seg", 2, 1), ("seg", 2, 3), ("seg", 2, 0))))
    T.append(Template(
        "angle_mirror", 1, 3, "line", "x making bc the bisector of angle abx",
        lambda x, a, b, c: [F("eqangle", (b, a, b, c, b, c, b, x))],
        _lo_angle_mirror,
        arg_check=_ncoll,
        draws=(("seg", 2, 1), ("seg", 2, 3), ("seg", 2, 0))))
    T.append(Template(
        "on_aline", 1, 5, "line", "x with angle xab equal to angle cde",
        lambda x, a, b, c, d, e: [F("eqangle", (a, x, a, b, d, c, d, e))],
        lambda a, b, c, d, e: _lo_on_aline(a, b, d, c, e),
        arg_check=lambda a, b, c, d, e: _distinct(a, b) and _ncoll(c, d, e),
        draws=(("seg", 1, 0), ("seg", 1, 2), ("seg", 4, 3), ("seg", 4, 5))))
    T.append(Template(
        "on_bline", 1, 2, "line", "x on the perpendicular bisector of ab",
        lambda x, a, b: [F("cong", (x, a, x, b))],
        _lo_on_bline,
        arg_check=lambda a, b: _distinct(a, b),
        draws=(("seg", 1, 2), ("seg", 0, 1), ("seg", 0, 2))))
    T.append(Template(
        "on_circle", 1, 2, "circle", "x on the circle centered o through a",
        lambda x, o, a: [F("cong", (o, x, o, a))],
        _lo_on_circle,
        arg_check=lambda o, a: _distinct(o, a),
        draws=(("circ", 1, 2),)))
    T.append(Template(
        "on_circum", 1, 3, "circle", "x on the circle through a, b and c",
        lambda x, a, b, c: [F("cyclic", (a, b, c, x))],
        _lo_on_circum,
        arg_check=_ncoll,
        draws=(("circum", 1, 2, 3),)))
    T.append(Template(
        "on_dia", 1, 2, "circle", "x with xa perpendicular to xb",
        lambda x, a, b: [F("perp", (a, x, b, x))],
        _lo_on_dia,
        arg_check=lambda a, b: _distinct(a, b),
        draws=(("seg", 0, 1), ("seg", 0, 2), ("seg", 1, 2))))
    T.append(Template(
        "on_line", 1, 2, "line", "x on line ab",
        lambda x, a, b: [F("coll", (x, a, b))],
        _lo_on_line,
        arg_check=lambda a, b: _distinct(a, b),
        draws=(("seg", 1, 2), ("seg", 0, 1), ("seg", 0, 2))))
    T.append(Template(
        "on_pline", 1, 3, "line", "x with xa parallel to bc",
        lambda x, a, b, c: [F("para", (x, a, b, c))],
        _lo_on_pline,
        arg_check=lambda a, b, c: _distinct(b, c) and Line(b, c).distance(a) > 1e-4,
        draws=(("seg", 0, 1), ("seg", 2, 3))))
    T.append(Template(
        "on_tline", 1, 3, "line", "x with xa perpendicular to bc",
        lambda x, a, b, c: [F("perp", (x, a, b, c))],
        _lo_on_tline,
        arg_check=lambda a, b, c: _distinct(b, c),
        draws=(("seg", 0, 1), ("seg", 2, 3))))
    T.append(Template(
        "lc_tangent", 1, 2, "line", "x on the tangent at a to the circle centered o",
        lambda x, a, o: [F("perp", (o, a, a, x))],
        _lo_lc_tangent,
        arg_check=lambda a, o: _distinct(a, o),
        draws=(("seg", 0, 1), ("circ", 2, 1))))
    T.append(Template(
        "eqdistance", 1, 3, "circle", "x with xa = bc",
        lambda x, a, b, c: [F("cong", (x, a, b, c))],
        _lo_eqdistance,
        arg_check=lambda a, b, c: _distinct(b, c),
        draws=(("seg", 0, 1), ("seg", 2, 3))))
    T.append(Template(
        "s_angle", 1, 2, "line", "x with angle abx equal to a fixed number of degrees",
        lambda x, a, b, deg: [],
        _lo_s_angle,
        arg_check=lambda a, b: _distinct(a, b),
        numeric_slots=1,
        draws=(("seg", 0, 1), ("seg", 1, 2))))
    T.append(Template(
        "eqangle3", 1, 5, "circle", "x seeing ab under the angle edf",
        lambda x, a, b, d, e, f: [F("eqangle", (x, a, x, b, d, e, d, f))],
        _lo_eqangle3,
        arg_check=lambda a, b, d, e, f: _distinct(a, b) and _ncoll(e, d, f),
        draws=(("seg", 0, 1), ("seg", 0, 2), ("seg", 3, 4), ("seg", 3, 5))))

    return {t.name: t for t in T}


def _lines_cross(l1: Line, l2: Line) -> bool:
    return abs(l1.a * l2.b - l2.a * l1.b) > 1e-6


def _sides_shift(k: int) -> tuple:
    return (("seg", k, k + 1), ("seg", k + 1, k + 2), ("seg", k + 2, k))


TEMPLATES: dict[str, Template] = _registry()

# templates usable as the depth-0 seed (define points from nothing)
SEED_TEMPLATES = tuple(t.name for t in TEMPLATES.values() if t.kind == "free")

# templates yielding a one-dimensional locus (legal in two-clause constructions)
LOCUS_TEMPLATES = tuple(t.name for t in TEMPLATES.values() if t.kind in ("line", "circle"))


def catalog_table() -> list[dict]:
    """Machine-readable catalog (name, arity, doc) for the docs build."""
    return [
        {"name": t.name, "new_points": t.new_points,
         "args": t.num_args + t.numeric_slots, "kind": t.kind, "doc": t.doc}
        for t in sorted(TEMPLATES.values(), key=lambda t: t.name)
    ]
