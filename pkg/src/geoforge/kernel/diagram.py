"""Numeric instantiation of premises into coordinate diagrams.

Free points are sampled, constrained points solved in closed form per
template, and two-clause constructions intersect their loci.  Each attempt
uses its own RNG stream derived from ``(seed, attempt)``; after building,
the figure is normalized to the unit bounding box and every premise fact is
verified at ``TOL_TRUE``.  Attempts that land points closer than ``MARGIN``
(or fail a fact check) are rejected and retried with fresh randomness.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from ..errors import DegenerateAfterRetries, Unsatisfiable
from .dsl import Construction, Premise
from .facts import Fact, TOL_TRUE, residual
from .geometry import (
    Circle,
    Line,
    Point,
    circle_circle_intersection,
    line_circle_intersection,
    line_line_intersection,
)

MARGIN = 1e-3           # minimum pairwise point distance, unit-box scale
DEFAULT_RETRIES = 48


@dataclass(frozen=True)
class Diagram:
    coords: dict[str, Point]
    seed: int
    margin: float       # realized minimum pairwise distance
    diameter: float     # realized maximum pairwise distance

    def point(self, name: str) -> Point:
        return self.coords[name]


def instantiate(premise: Premise, seed: int, max_retries: int = DEFAULT_RETRIES) -> Diagram:
    if max_retries < 1:
        raise ValueError("max_retries must be >= 1")
    unsat_only = True
    last_error = "no attempt"
    for attempt in range(max_retries):
        rng = random.Random(f"{seed}:{attempt}")
        try:
            coords = _build(premise, rng)
        except Unsatisfiable as exc:
            last_error = str(exc)
            continue
        except (ZeroDivisionError, ValueError, OverflowError) as exc:
            unsat_only = False
            last_error = f"degenerate arithmetic: {exc}"
            continue
        unsat_only = False
        diagram = _normalize(coords, seed)
        if diagram is None:
            last_error = "zero-extent figure"
            continue
        if diagram.margin < MARGIN:
            last_error = f"margin {diagram.margin:.2e} below {MARGIN}"
            continue
        bad = _first_violation(premise, diagram)
        if bad is not None:
            last_error = f"clause fact failed: {bad}"
            continue
        return diagram
    if unsat_only:
        raise Unsatisfiable(f"no numeric solution in {max_retries} attempts: {last_error}")
    raise DegenerateAfterRetries(
        f"all {max_retries} attempts degenerate: {last_error}")


def check_fact(fact: Fact, diagram: Diagram, tol: float = TOL_TRUE) -> bool:
    return residual(fact, diagram.coords, diagram.diameter) < tol


def fact_residual(fact: Fact, diagram: Diagram) -> float:
    return residual(fact, diagram.coords, diagram.diameter)


def _first_violation(premise: Premise, diagram: Diagram) -> Fact | None:
    for f in premise.facts():
        if not check_fact(f, diagram, TOL_TRUE):
            return f
    return None


def _build(premise: Premise, rng: random.Random) -> dict[str, Point]:
    coords: dict[str, Point] = {}
    for con in premise.constructions:
        solutions = _solve(con, coords, rng)
        best = _pick_solution(solutions, coords)
        if best is None:
            raise ValueError("all candidate roots coincide with existing points")
        for name, pt in zip(con.new_points, best):
            coords[name] = pt
    return coords


def _solve(con: Construction, coords: dict[str, Point], rng: random.Random):
    if len(con.clauses) == 2:
        loci = [_locus(c, coords) for c in con.clauses]
        return [[p] for p in _intersect(loci[0], loci[1])]
    clause = con.clauses[0]
    tpl = clause.template
    if tpl.kind == "free":
        return tpl.sketch(rng)
    args = [coords[p] for p in clause.args[tpl.new_points:]]
    if tpl.kind == "point":
        return tpl.sketch(*args, rng)
    locus = _locus(clause, coords)
    return [[_sample_on(locus, coords, rng)]]


def _locus(clause, coords: dict[str, Point]):
    tpl = clause.template
    args = [coords[p] for p in clause.args[tpl.new_points:]]
    return tpl.sketch(*args, *clause.numeric_params)


def _intersect(l1, l2) -> list[Point]:
    if isinstance(l1, Line) and isinstance(l2, Line):
        return [line_line_intersection(l1, l2)]
    if isinstance(l1, Line) and isinstance(l2, Circle):
        return list(line_circle_intersection(l1, l2))
    if isinstance(l1, Circle) and isinstance(l2, Line):
        return list(line_circle_intersection(l2, l1))
    return list(circle_circle_intersection(l1, l2))


def _sample_on(locus, coords: dict[str, Point], rng: random.Random) -> Point:
    pts = list(coords.values())
    cx = sum(p.x for p in pts) / len(pts)
    cy = sum(p.y for p in pts) / len(pts)
    scale = max(max(p.distance(q) for p in pts for q in pts), 0.1)
    if isinstance(locus, Circle):
        ang = rng.uniform(0.0, 2.0 * math.pi)
        return locus.center + Point(math.cos(ang), math.sin(ang)) * locus.radius
    anchor = Point(cx, cy).foot(locus)
    n = math.hypot(locus.a, locus.b)
    direction = Point(locus.b / n, -locus.a / n)
    t = rng.uniform(-0.9, 0.9) * scale
    return anchor + direction * t


def _pick_solution(solutions, coords: dict[str, Point]):
    """Among candidate roots, keep the one farthest from existing points."""
    if not solutions:
        raise Unsatisfiable("construction produced no candidate roots")
    if len(solutions) == 1:
        return solutions[0]
    existing = list(coords.values())

    def separation(sol):
        pts = list(sol) + existing
        return min(pts[i].distance(pts[j])
                   for i in range(len(sol)) for j in range(len(pts)) if i != j)

    return max(solutions, key=separation)


def _normalize(coords: dict[str, Point], seed: int) -> Diagram | None:
    xs = [p.x for p in coords.values()]
    ys = [p.y for p in coords.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys))
    if not math.isfinite(span) or span < 1e-12:
        return None
    x0, y0 = min(xs), min(ys)
    normed = {k: Point((p.x - x0) / span, (p.y - y0) / span) for k, p in coords.items()}
    pts = list(normed.values())
    margin = math.inf
    diameter = 0.0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = pts[i].distance(pts[j])
            margin = min(margin, d)
            diameter = max(diameter, d)
    if len(pts) == 1:
        margin, diameter = 1.0, 1.0
    return Diagram(coords=normed, seed=seed, margin=margin, diameter=diameter)
