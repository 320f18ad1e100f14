"""Construction DSL: parsing, serialization, premise-level fact assembly.

A premise is an ordered sequence of constructions, one per statement:

    a b c = triangle
    d = reflect d c a b
    e = on_line e d a, eqdistance e d a b

Statements are separated by ``;`` or newlines; ``#`` starts a line comment.
Each clause is a template name followed by its slot tokens.  The new points
may be written inline (``reflect d c a b``) or omitted (``reflect c a b``);
both forms parse to the same structure and serialization uses the inline
form.  Numeric slots (``s_angle``) take a decimal degree literal.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import (
    ArityMismatch,
    RedefinedPoint,
    UnderdeterminedOrInvalid,
    UndefinedPoint,
    UnknownTemplate,
)
from .facts import Fact
from .templates import TEMPLATES, Template


@dataclass(frozen=True)
class Clause:
    relation: str
    args: tuple[str, ...]              # all point slots: new points then existing
    numeric_params: tuple[float, ...] = ()

    @property
    def template(self) -> Template:
        return TEMPLATES[self.relation]

    def facts(self) -> list[Fact]:
        slots = tuple(self.args) + tuple(self.numeric_params)
        return self.template.facts(*slots)

    def text(self) -> str:
        parts = [self.relation, *self.args]
        parts += [_fmt_num(v) for v in self.numeric_params]
        return " ".join(parts)


@dataclass(frozen=True)
class Construction:
    new_points: tuple[str, ...]
    clauses: tuple[Clause, ...]

    def text(self) -> str:
        return f"{' '.join(self.new_points)} = {', '.join(c.text() for c in self.clauses)}"

    def facts(self) -> list[Fact]:
        out = []
        for c in self.clauses:
            out.extend(c.facts())
        return out


@dataclass(frozen=True)
class Premise:
    constructions: tuple[Construction, ...]

    @property
    def points(self) -> tuple[str, ...]:
        out = []
        for con in self.constructions:
            out.extend(con.new_points)
        return tuple(out)

    def text(self) -> str:
        return "; ".join(con.text() for con in self.constructions)

    def facts(self) -> list[Fact]:
        """Clause facts plus center/radius groupings implied by them.

        When several premise clauses pin points equidistant from one center
        (``on_circle``, ``midpoint`` of a diameter, the ``circle`` template),
        the corresponding ``circle`` facts are part of the premise even though
        no single clause states them.
        """
        seen: dict[Fact, None] = {}
        for con in self.constructions:
            for f in con.facts():
                seen.setdefault(f, None)
        facts = list(seen)
        facts.extend(_center_groups(facts, seen))
        return facts

    def prefix(self, k: int) -> "Premise":
        return Premise(self.constructions[:k])

    def extended(self, con: Construction) -> "Premise":
        return Premise(self.constructions + (con,))


def _center_groups(facts: list[Fact], seen: dict) -> list[Fact]:
    # Union points linked by cong(o,x,o,y) per candidate center o.
    radii: dict[str, dict[str, set[str]]] = {}
    for f in facts:
        if f.predicate != "cong":
            continue
        # a shared endpoint across the two segments acts as a center
        a, b, c, d = f.args
        if a == c:
            _link(radii, a, b, d)
        elif a == d:
            _link(radii, a, b, c)
        elif b == c:
            _link(radii, b, a, d)
        elif b == d:
            _link(radii, b, a, c)
    out = []
    for center, groups in sorted(radii.items()):
        merged = _merge(groups)
        for grp in merged:
            pts = sorted(grp)
            if len(pts) < 3:
                continue
            for i in range(len(pts)):
                for j in range(i + 1, len(pts)):
                    for k in range(j + 1, len(pts)):
                        f = Fact.make("circle", (center, pts[i], pts[j], pts[k]))
                        if f not in seen:
                            seen[f] = None
                            out.append(f)
    return out


def _link(radii: dict, center: str, x: str, y: str) -> None:
    groups = radii.setdefault(center, {})
    gx = groups.setdefault(x, {x})
    gy = groups.setdefault(y, {y})
    if gx is not gy:
        gx |= gy
        for p in gy:
            groups[p] = gx


def _merge(groups: dict[str, set[str]]) -> list[set[str]]:
    out = []
    for g in groups.values():
        if not any(g is h for h in out):
            out.append(g)
    return out


def _fmt_num(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(v)


def parse_premise(text: str) -> Premise:
    """Parse DSL text into a Premise, validating structure."""
    constructions: list[Construction] = []
    defined: set[str] = set()
    for line_no, raw in _statements(text):
        if "=" not in raw:
            raise UnknownTemplate("statement is missing '='", raw.strip(), line_no)
        lhs, rhs = raw.split("=", 1)
        new_points = tuple(lhs.split())
        if not new_points:
            raise UndefinedPoint("no point names on the left of '='", raw.strip(), line_no)
        for p in new_points:
            if p in defined:
                raise RedefinedPoint("point defined twice", p, line_no)
            if not p.isidentifier() or not p.islower():
                raise UndefinedPoint("point names are lowercase identifiers", p, line_no)
        if len(set(new_points)) != len(new_points):
            raise RedefinedPoint("repeated point on the left of '='", lhs.strip(), line_no)

        clause_texts = [c.strip() for c in rhs.split(",")]
        clauses = [_parse_clause(ct, new_points, defined, line_no) for ct in clause_texts]
        _check_construction(clauses, new_points, line_no)
        constructions.append(Construction(new_points, tuple(clauses)))
        defined.update(new_points)
    return Premise(tuple(constructions))


def _statements(text: str):
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0]
        for stmt in line.split(";"):
            if stmt.strip():
                yield line_no, stmt


def _parse_clause(text: str, new_points: tuple[str, ...], defined: set[str],
                  line_no: int) -> Clause:
    tokens = text.split()
    if not tokens:
        raise UnknownTemplate("empty clause", text, line_no)
    name, rest = tokens[0], tokens[1:]
    tpl = TEMPLATES.get(name)
    if tpl is None:
        raise UnknownTemplate("unknown construction template", name, line_no)

    full = tpl.new_points + tpl.num_args + tpl.numeric_slots
    short = tpl.num_args + tpl.numeric_slots
    if len(rest) == short:
        rest = list(new_points) + rest      # inline the new points
    elif len(rest) != full:
        raise ArityMismatch(
            f"template {name} takes {short} (or {full} with new points) tokens",
            text, line_no)

    point_tokens = rest[:tpl.new_points + tpl.num_args]
    numeric_tokens = rest[tpl.new_points + tpl.num_args:]
    heads = tuple(point_tokens[:tpl.new_points])
    if heads != tuple(new_points):
        raise UndefinedPoint(
            f"clause {name} must define {' '.join(new_points)}",
            " ".join(heads), line_no)
    for tok in point_tokens[tpl.new_points:]:
        if tok not in defined:
            raise UndefinedPoint("argument point not yet defined", tok, line_no)
        if tok in new_points:
            raise UndefinedPoint("a new point cannot be its own argument", tok, line_no)
    try:
        numeric = tuple(float(t) for t in numeric_tokens)
    except ValueError:
        raise ArityMismatch("bad numeric literal", " ".join(numeric_tokens), line_no)
    return Clause(name, tuple(point_tokens), numeric)


def _check_construction(clauses: list[Clause], new_points: tuple[str, ...],
                        line_no: int) -> None:
    if len(clauses) == 1:
        tpl = clauses[0].template
        if tpl.new_points != len(new_points):
            raise ArityMismatch(
                f"template {tpl.name} defines {tpl.new_points} points, got {len(new_points)}",
                clauses[0].relation, line_no)
        return
    if len(clauses) > 2:
        raise UnderdeterminedOrInvalid(
            "a construction takes at most two clauses", clauses[2].relation, line_no)
    if len(new_points) != 1:
        raise UnderdeterminedOrInvalid(
            "two-clause constructions define exactly one point",
            " ".join(new_points), line_no)
    for c in clauses:
        if c.template.kind not in ("line", "circle"):
            raise UnderdeterminedOrInvalid(
                f"{c.relation} determines a point by itself and cannot be intersected",
                c.relation, line_no)
    if clauses[0] == clauses[1]:
        raise UnderdeterminedOrInvalid(
            "the two clauses are identical", clauses[0].relation, line_no)


def serialize_premise(premise: Premise) -> str:
    return premise.text()
