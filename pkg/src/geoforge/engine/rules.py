"""Deduction rule catalog: parsing and the shipped default rule set."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from ..errors import GeoForgeError
from ..kernel.facts import PREDICATES

# rule premises evaluated numerically on the diagram, never stored as facts
SIDE_CONDITIONS = ("ncoll", "npara", "sameside")


@dataclass(frozen=True)
class Pattern:
    predicate: str
    vars: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.predicate} {' '.join(self.vars)}"


@dataclass(frozen=True)
class Rule:
    rule_id: str
    premises: tuple[Pattern, ...]
    conclusion: Pattern

    def __str__(self) -> str:
        lhs = ", ".join(str(p) for p in self.premises)
        return f"{self.rule_id}: {lhs} => {self.conclusion}"


def parse_rule(line: str) -> Rule:
    head, _, body = line.partition(":")
    if not body:
        raise GeoForgeError(f"rule line missing 'id:' prefix: {line!r}")
    lhs, sep, rhs = body.partition("=>")
    if not sep:
        raise GeoForgeError(f"rule line missing '=>': {line!r}")
    premises = tuple(_parse_pattern(p) for p in lhs.split(","))
    conclusion = _parse_pattern(rhs)
    prem_vars = {v for p in premises for v in p.vars}
    missing = [v for v in conclusion.vars if v not in prem_vars]
    if missing:
        raise GeoForgeError(f"conclusion variables {missing} unbound in {line!r}")
    return Rule(head.strip(), premises, conclusion)


def _parse_pattern(text: str) -> Pattern:
    tokens = text.split()
    pred = tokens[0].lower()
    if pred == "eqangle6":
        pred = "eqangle"
    elif pred == "eqratio6":
        pred = "eqratio"
    if pred not in PREDICATES:
        raise GeoForgeError(f"unknown predicate in rule: {tokens[0]!r}")
    return Pattern(pred, tuple(t.upper() for t in tokens[1:]))


def load_rules(path: str | None = None) -> list[Rule]:
    """Rules from a file (one per line, '#' comments), default = shipped set."""
    if path is None:
        text = resources.files("geoforge.data").joinpath("rules.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    rules = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rules.append(parse_rule(line))
    return rules


def default_rules() -> list[Rule]:
    return load_rules(None)
