"""Algebraic derivation: linear spans of angle and length equations.

Two independent exact-rational systems are rebuilt from the current fact
set each saturation level:

* directions of segments modulo pi (variables: one per point pair, plus a
  half-turn bookkeeping variable whose integer multiples vanish mod pi);
* logarithms of segment lengths (plus a ``log 2`` variable so midpoint
  half-ratios are expressible).

Every equation is exactly satisfied by the diagram's numeric values: the
integer turn multiple hidden by the mod-pi reading is recovered from the
diagram before the equation is added, which keeps arbitrary rational row
combinations sound.  New facts are emitted by grouping reduced forms, and
each emission carries the set of source facts its combination used.
"""
from __future__ import annotations

import math
from fractions import Fraction

from ..kernel.diagram import Diagram
from ..kernel.facts import Fact
from ..kernel.geometry import Line, direction_angle
from .linear import EliminationTable, Row, is_dep, split_residual

TURN = ("turn",)
LOG2 = ("log2",)

Pair = tuple[str, str]


def _pair(a: str, b: str) -> Pair:
    return (a, b) if a <= b else (b, a)


class AngleTable:
    """Span of direction equations (units of pi, mod 1)."""

    def __init__(self, diagram: Diagram):
        self.diagram = diagram
        self.table = EliminationTable(avoid_pivot={TURN})
        self.values: dict[Pair, float] = {}
        self.pairs: list[Pair] = []
        self.angle_pairs: set[tuple[Pair, Pair]] = set()

    def _var(self, a: str, b: str) -> Pair:
        p = _pair(a, b)
        if p not in self.values:
            self.values[p] = direction_angle(
                self.diagram.coords[p[0]], self.diagram.coords[p[1]]) / math.pi
            self.pairs.append(p)
        return p

    def _add(self, terms: list[tuple[Pair, int]], frac: Fraction, fact: Fact) -> None:
        # Truth: sum coef*d == -frac (mod 1).  Recover the hidden integer m
        # from the diagram, then add the exactly-satisfied equation
        # sum coef*d + (frac - m)*TURN == 0, where TURN has value 1.
        num = sum(c * self.values[p] for p, c in terms) + float(frac)
        m = round(num)
        if abs(num - m) > 1e-6:
            return  # fact does not pin an exact turn multiple; skip defensively
        row: Row = {}
        for p, c in terms:
            row[p] = row.get(p, Fraction(0)) + c
            if not row[p]:
                del row[p]
        turn = Fraction(frac) - m
        if turn:
            row[TURN] = turn
        self.table.add(row, fact)

    def feed(self, fact: Fact, mention: bool = True) -> None:
        pred, a = fact.predicate, fact.args
        if pred == "coll":
            pairs = [self._var(a[i], a[j])
                     for i in range(len(a)) for j in range(i + 1, len(a))]
            base = pairs[0]
            for p in pairs[1:]:
                self._add([(base, 1), (p, -1)], Fraction(0), fact)
        elif pred == "midp":
            m, x, y = a
            p1, p2, p3 = self._var(m, x), self._var(m, y), self._var(x, y)
            self._add([(p1, 1), (p2, -1)], Fraction(0), fact)
            self._add([(p1, 1), (p3, -1)], Fraction(0), fact)
        elif pred == "para":
            self._add([(self._var(a[0], a[1]), 1), (self._var(a[2], a[3]), -1)],
                      Fraction(0), fact)
        elif pred == "perp":
            self._add([(self._var(a[0], a[1]), 1), (self._var(a[2], a[3]), -1)],
                      Fraction(1, 2), fact)
        elif pred == "eqangle":
            p1, p2 = self._var(a[0], a[1]), self._var(a[2], a[3])
            p3, p4 = self._var(a[4], a[5]), self._var(a[6], a[7])
            self._add([(p2, 1), (p1, -1), (p4, -1), (p3, 1)], Fraction(0), fact)
            if mention:
                self.angle_pairs.add((p1, p2))
                self.angle_pairs.add((p3, p4))


class LengthTable:
    """Span of log-length equations."""

    def __init__(self, diagram: Diagram):
        self.diagram = diagram
        self.table = EliminationTable()
        self.values: dict[Pair, float] = {LOG2: math.log(2.0)}
        self.pairs: list[Pair] = []
        self.ratio_pairs: set[tuple[Pair, Pair]] = set()

    def _var(self, a: str, b: str) -> Pair:
        p = _pair(a, b)
        if p not in self.values:
            self.values[p] = math.log(
                self.diagram.coords[p[0]].distance(self.diagram.coords[p[1]]))
            self.pairs.append(p)
        return p

    def _add(self, terms, fact: Fact) -> None:
        row: Row = {}
        for p, c in terms:
            row[p] = row.get(p, Fraction(0)) + c
            if not row[p]:
                del row[p]
        num = sum(float(c) * self.values[p] for p, c in row.items())
        if abs(num) > 1e-6:
            return  # defensive: equation must hold on the diagram
        self.table.add(row, fact)

    def feed(self, fact: Fact, mention: bool = True) -> None:
        pred, a = fact.predicate, fact.args
        if pred == "cong":
            self._add([(self._var(a[0], a[1]), 1), (self._var(a[2], a[3]), -1)], fact)
        elif pred == "eqratio":
            p1, p2 = self._var(a[0], a[1]), self._var(a[2], a[3])
            p3, p4 = self._var(a[4], a[5]), self._var(a[6], a[7])
            self._add([(p1, 1), (p2, -1), (p3, -1), (p4, 1)], fact)
            if mention:
                self.ratio_pairs.add((p1, p2))
                self.ratio_pairs.add((p3, p4))
        elif pred == "midp":
            m, x, y = a
            ma, mb, ab = self._var(m, x), self._var(m, y), self._var(x, y)
            self._add([(ma, 1), (mb, -1)], fact)
            self._add([(ma, 1), (ab, -1), (LOG2, 1)], fact)
            if mention:
                self.ratio_pairs.add((ma, ab))
        elif pred == "circle":
            o = a[0]
            radii = [self._var(o, p) for p in a[1:]]
            for r in radii[1:]:
                self._add([(radii[0], 1), (r, -1)], fact)


class IncrementalAlgebra:
    """Angle/length tables persisted across saturation levels.

    Equations accumulate; emission groupings are recomputed per level since
    earlier reduced forms may collapse once new equations arrive.
    """

    def __init__(self, diagram: Diagram):
        self.diagram = diagram
        self.angles = AngleTable(diagram)
        self.lengths = LengthTable(diagram)
        self.fed: set[Fact] = set()

    def feed(self, fact: Fact, mention: bool) -> None:
        if fact in self.fed:
            return
        self.fed.add(fact)
        self.angles.feed(fact, mention=mention)
        self.lengths.feed(fact, mention=mention)

    def emit(self, known: set) -> list[tuple[Fact, tuple[Fact, ...]]]:
        out: list[tuple[Fact, tuple[Fact, ...]]] = []
        out.extend(_emit_para_perp(self.angles, self.diagram, known))
        out.extend(_emit_eqangle(self.angles))
        out.extend(_emit_cong(self.lengths))
        out.extend(_emit_eqratio(self.lengths))
        return out


def derive_algebra(facts, diagram: Diagram, mention_facts=None
                   ) -> list[tuple[Fact, tuple[Fact, ...]]]:
    """New facts in the span of the current angle/length equations.

    Returns (fact, supporting facts) pairs; caller filters against the
    existing closure.  Emissions are restricted to segments and angle/ratio
    pairs already mentioned by some fact; passing ``mention_facts`` narrows
    which facts count as mentioning (all equations still enter the span),
    which stops emitted facts from expanding their own candidate space.
    """
    mention = set(facts if mention_facts is None else mention_facts)
    angles = AngleTable(diagram)
    lengths = LengthTable(diagram)
    for f in facts:
        angles.feed(f, mention=f in mention)
        lengths.feed(f, mention=f in mention)

    known = set(facts)
    out: list[tuple[Fact, tuple[Fact, ...]]] = []
    out.extend(_emit_para_perp(angles, diagram, known))
    out.extend(_emit_eqangle(angles))
    out.extend(_emit_cong(lengths))
    out.extend(_emit_eqratio(lengths))
    return out


def _reduced(table: EliminationTable, terms) -> tuple[tuple, Fraction, tuple]:
    row: Row = {}
    for p, c in terms:
        row[p] = row.get(p, Fraction(0)) + c
        if not row[p]:
            del row[p]
    red = table.reduced_form(row)
    turn = red.pop(TURN, Fraction(0))
    real, deps = split_residual(red)
    return real, turn, deps


def _emit_para_perp(angles: AngleTable, diagram: Diagram, known: set):
    groups: dict[tuple, list] = {}
    for p in angles.pairs:
        real, turn, deps = _reduced(angles.table, [(p, 1)])
        groups.setdefault(real, []).append((p, turn, deps))
    out = []
    for members in groups.values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                (p1, t1, d1), (p2, t2, d2) = members[i], members[j]
                diff = t1 - t2
                deps = tuple(dict.fromkeys(d1 + d2))
                if diff.denominator == 1:
                    shared = set(p1) & set(p2)
                    if _same_numeric_line(p1, p2, diagram):
                        if not shared:
                            continue  # equal-direction (collinear) only via chains
                        if Fact.make("coll", tuple(dict.fromkeys(p1 + p2))) in known:
                            continue  # collinearity already recorded
                    out.append((Fact.make("para", p1 + p2), deps))
                elif (diff - Fraction(1, 2)).denominator == 1:
                    out.append((Fact.make("perp", p1 + p2), deps))
    return out


def _emit_eqangle(angles: AngleTable):
    groups: dict[tuple, list] = {}
    for (p1, p2) in sorted(angles.angle_pairs):
        real, turn, deps = _reduced(angles.table, [(p2, 1), (p1, -1)])
        key = (real, turn - math.floor(turn))
        groups.setdefault(key, []).append((p1, p2, deps))
    out = []
    for members in groups.values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                (a1, a2, d1), (b1, b2, d2) = members[i], members[j]
                if (a1, a2) == (b1, b2):
                    continue
                deps = tuple(dict.fromkeys(d1 + d2))
                out.append((Fact.make("eqangle", a1 + a2 + b1 + b2), deps))
    return out


def _emit_cong(lengths: LengthTable):
    groups: dict[tuple, list] = {}
    for p in lengths.pairs:
        real, _, deps = _reduced(lengths.table, [(p, 1)])
        groups.setdefault(real, []).append((p, deps))
    out = []
    for members in groups.values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                (p1, d1), (p2, d2) = members[i], members[j]
                deps = tuple(dict.fromkeys(d1 + d2))
                out.append((Fact.make("cong", p1 + p2), deps))
    return out


def _emit_eqratio(lengths: LengthTable):
    groups: dict[tuple, list] = {}
    for (p1, p2) in sorted(lengths.ratio_pairs):
        real, _, deps = _reduced(lengths.table, [(p1, 1), (p2, -1)])
        groups.setdefault(real, []).append((p1, p2, deps))
    out = []
    for members in groups.values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                (a1, a2, d1), (b1, b2, d2) = members[i], members[j]
                if (a1, a2) == (b1, b2):
                    continue
                deps = tuple(dict.fromkeys(d1 + d2))
                out.append((Fact.make("eqratio", a1 + a2 + b1 + b2), deps))
    return out


def _same_numeric_line(p1: Pair, p2: Pair, diagram: Diagram) -> bool:
    pts = [diagram.coords[x] for x in dict.fromkeys(p1 + p2)]
    if len(pts) < 3:
        return True
    line = Line(pts[0], pts[1])
    return all(line.distance(p) < 1e-7 * diagram.diameter for p in pts[2:])
