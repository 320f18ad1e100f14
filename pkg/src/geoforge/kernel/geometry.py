"""Plane-geometry numerics: points, lines, circles, closed-form intersections.

Everything is plain ``float`` math (no numpy) so instantiation is fast and
bit-reproducible for a fixed RNG stream.
"""
from __future__ import annotations

import math

from ..errors import Unsatisfiable

# Hard floor below which two coordinates count as the same point.
ATOM = 1e-12


class Point:
    __slots__ = ("x", "y")

    def __init__(self, x: float, y: float):
        self.x = x
        self.y = y

    def __add__(self, p: "Point") -> "Point":
        return Point(self.x + p.x, self.y + p.y)

    def __sub__(self, p: "Point") -> "Point":
        return Point(self.x - p.x, self.y - p.y)

    def __mul__(self, f: float) -> "Point":
        return Point(self.x * f, self.y * f)

    __rmul__ = __mul__

    def __truediv__(self, f: float) -> "Point":
        return Point(self.x / f, self.y / f)

    def __repr__(self) -> str:
        return f"Point({self.x!r}, {self.y!r})"

    def dot(self, p: "Point") -> float:
        return self.x * p.x + self.y * p.y

    def cross(self, p: "Point") -> float:
        return self.x * p.y - self.y * p.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def distance(self, p: "Point") -> float:
        return math.hypot(self.x - p.x, self.y - p.y)

    def midpoint(self, p: "Point") -> "Point":
        return Point(0.5 * (self.x + p.x), 0.5 * (self.y + p.y))

    def rotate(self, angle: float) -> "Point":
        s, c = math.sin(angle), math.cos(angle)
        return Point(self.x * c - self.y * s, self.x * s + self.y * c)

    def foot(self, line: "Line") -> "Point":
        return line_line_intersection(line.perpendicular_through(self), line)

    def close(self, p: "Point", tol: float = ATOM) -> bool:
        return abs(self.x - p.x) < tol and abs(self.y - p.y) < tol


class Line:
    """ax + by + c = 0 through two points."""

    __slots__ = ("a", "b", "c")

    def __init__(self, p1: Point | None = None, p2: Point | None = None,
                 coefficients: tuple[float, float, float] | None = None):
        if coefficients is not None:
            a, b, c = coefficients
        else:
            a = p1.y - p2.y
            b = p2.x - p1.x
            c = p1.x * p2.y - p2.x * p1.y
        if a < 0.0 or (a == 0.0 and b > 0.0):
            a, b, c = -a, -b, -c
        self.a, self.b, self.c = a, b, c

    def __call__(self, p: Point) -> float:
        return self.a * p.x + self.b * p.y + self.c

    def distance(self, p: Point) -> float:
        return abs(self(p)) / math.hypot(self.a, self.b)

    def direction_angle(self) -> float:
        """Direction of the line in [0, pi)."""
        ang = math.atan2(-self.a, self.b) % math.pi
        return 0.0 if ang >= math.pi - 1e-15 else ang

    def parallel_through(self, p: Point) -> "Line":
        return Line(coefficients=(self.a, self.b, -self.a * p.x - self.b * p.y))

    def perpendicular_through(self, p: Point) -> "Line":
        return Line(p, p + Point(self.a, self.b))


class Circle:
    __slots__ = ("center", "radius")

    def __init__(self, center: Point, radius: float):
        self.center = center
        self.radius = radius

    @staticmethod
    def through(p1: Point, p2: Point, p3: Point) -> "Circle":
        l12 = perpendicular_bisector(p1, p2)
        l23 = perpendicular_bisector(p2, p3)
        center = line_line_intersection(l12, l23)
        return Circle(center, center.distance(p1))


def perpendicular_bisector(p1: Point, p2: Point) -> Line:
    return Line(p1, p2).perpendicular_through(p1.midpoint(p2))


def line_line_intersection(l1: Line, l2: Line) -> Point:
    d = l1.a * l2.b - l2.a * l1.b
    if abs(d) < ATOM:
        raise Unsatisfiable("parallel lines do not intersect")
    return Point((l1.b * l2.c - l2.b * l1.c) / d, (l2.a * l1.c - l1.a * l2.c) / d)


def line_circle_intersection(line: Line, circle: Circle) -> tuple[Point, Point]:
    a, b, c = line.a, line.b, line.c
    cx, cy, r = circle.center.x, circle.center.y, circle.radius
    n2 = a * a + b * b
    # Foot of the center on the line, then offset along the line direction.
    f = (a * cx + b * cy + c) / n2
    fx, fy = cx - a * f, cy - b * f
    h2 = r * r - f * f * n2
    if h2 < 0.0:
        raise Unsatisfiable("line misses circle")
    n = math.sqrt(n2)
    h = math.sqrt(h2)
    dx, dy = b / n, -a / n
    return (Point(fx + dx * h, fy + dy * h), Point(fx - dx * h, fy - dy * h))


def circle_circle_intersection(c1: Circle, c2: Circle) -> tuple[Point, Point]:
    x0, y0, r0 = c1.center.x, c1.center.y, c1.radius
    x1, y1, r1 = c2.center.x, c2.center.y, c2.radius
    d = math.hypot(x1 - x0, y1 - y0)
    if d < ATOM:
        raise Unsatisfiable("concentric circles")
    a = (r0 * r0 - r1 * r1 + d * d) / (2 * d)
    h2 = r0 * r0 - a * a
    if h2 < 0.0:
        raise Unsatisfiable("circles do not intersect")
    h = math.sqrt(h2)
    mx = x0 + a * (x1 - x0) / d
    my = y0 + a * (y1 - y0) / d
    return (
        Point(mx + h * (y1 - y0) / d, my - h * (x1 - x0) / d),
        Point(mx - h * (y1 - y0) / d, my + h * (x1 - x0) / d),
    )


def direction_angle(p1: Point, p2: Point) -> float:
    """Direction of the line through two points, in [0, pi)."""
    ang = math.atan2(p2.y - p1.y, p2.x - p1.x) % math.pi
    return 0.0 if ang >= math.pi - 1e-15 else ang


def angle_mod_pi(x: float) -> float:
    """Fold an angle difference into [0, pi/2] (distance to 0 mod pi)."""
    r = x % math.pi
    return min(r, math.pi - r)
