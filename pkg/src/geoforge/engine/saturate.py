"""Forward-chaining saturation and proof-trace extraction.

The fact set C grows level by level: each level matches every rule against
C (requiring at least one matched fact from the previous level's frontier,
which is equivalent to re-scanning everything but cheaper) and adds the
linear-span derivations, until nothing new appears or the level cap is hit.
Every derived fact must check true on the diagram at ``TOL_TRUE``; a
violation aborts the run since it can only mean a rule or side-condition
bug.

Concyclicity is stored as arity-4 ``cyclic`` facts; wider patterns
(``cyclic A B C P Q R``) match against clusters of quads glued on shared
triples, which is sound because three points fix a circle.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..errors import NotDerived, UnsoundDerivation
from ..kernel.diagram import Diagram, check_fact, fact_residual
from ..kernel.dsl import Premise
from ..kernel.facts import Fact, TOL_TRUE, variants
from .algebra import IncrementalAlgebra
from .rules import Pattern, Rule, SIDE_CONDITIONS, default_rules

ALGEBRA = "algebra"
PREMISE = "premise"


@lru_cache(maxsize=262144)
def _variants_of(fact: Fact):
    return variants(fact)


@dataclass(frozen=True)
class Derivation:
    kind: str                       # PREMISE, ALGEBRA, or a rule id
    supports: tuple[Fact, ...]
    level: int


@dataclass
class ProofTrace:
    conclusion: Fact
    steps: list[tuple[Fact, Derivation]]
    proof_length: int
    search_depth: int


class SaturationState:
    def __init__(self, premise: Premise, diagram: Diagram, rules: list[Rule],
                 max_level: int):
        self.premise = premise
        self.diagram = diagram
        self.rules = rules
        self.max_level = max_level
        self.level = 0
        self.facts: dict[Fact, Derivation] = {}
        self.frontier: list[Fact] = []
        self.by_pred: dict[str, list[Fact]] = {}
        self._index: dict[tuple, list] = {}
        self._clusters: list[tuple[set[str], list[Fact]]] | None = None
        self._algebra: IncrementalAlgebra | None = None

    # -- fact store ---------------------------------------------------------

    def add_fact(self, fact: Fact, derivation: Derivation) -> bool:
        if fact in self.facts:
            return False
        self.facts[fact] = derivation
        self.by_pred.setdefault(fact.predicate, []).append(fact)
        for var in _variants_of(fact):
            if len(var) == 8:
                for k in range(4):
                    self._index.setdefault(
                        (fact.predicate, k, var[2 * k], var[2 * k + 1]), []
                    ).append((fact, var))
            else:
                for i, p in enumerate(var):
                    self._index.setdefault((fact.predicate, i, p), []).append((fact, var))
        if fact.predicate == "cyclic":
            self._clusters = None
        return True

    def premise_facts(self) -> list[Fact]:
        return [f for f, d in self.facts.items() if d.kind == PREMISE]

    def clusters(self) -> list[tuple[set[str], list[Fact]]]:
        if self._clusters is None:
            clusters: list[tuple[set[str], list[Fact]]] = []
            for fact in self.by_pred.get("cyclic", []):
                grp, members = set(fact.args), [fact]
                changed = True
                while changed:
                    changed = False
                    rest = []
                    for g, m in clusters:
                        if len(g & grp) >= 3:   # 3 shared points: same circle
                            grp |= g
                            members = m + members
                            changed = True
                        else:
                            rest.append((g, m))
                    clusters = rest
                clusters.append((grp, members))
            self._clusters = clusters
        return self._clusters


# ---------------------------------------------------------------- matching

def match_theorems(state: SaturationState, rules: list[Rule]) -> dict[Fact, tuple]:
    """Rule conclusions unifiable with C and touching the frontier.

    Returns ``{fact: (rule_id, supports)}`` for facts not already in C;
    the caller records the dependency edges when committing them.
    """
    frontier = state.frontier or list(state.facts)
    out: dict[Fact, tuple] = {}
    for rule in rules:
        _match_rule(state, rule, frontier, out)
    return out


def _match_rule(state: SaturationState, rule: Rule, frontier: list[Fact],
                out: dict) -> None:
    fact_pats = [p for p in rule.premises if p.predicate not in SIDE_CONDITIONS]
    side_pats = [p for p in rule.premises if p.predicate in SIDE_CONDITIONS]
    fr_by_pred: dict[str, list[Fact]] = {}
    for f in frontier:
        fr_by_pred.setdefault(f.predicate, []).append(f)

    for seed_i, seed in enumerate(fact_pats):
        if _is_wide_cyclic(seed):
            seeds = _seed_wide_cyclic(state, seed, frontier)
        else:
            seeds = _seed_normal(seed, fr_by_pred)
        rest = fact_pats[:seed_i] + fact_pats[seed_i + 1:]
        for theta, used in seeds:
            _join(state, rule, rest, side_pats, theta, used, out)


def _is_wide_cyclic(pat: Pattern) -> bool:
    return pat.predicate == "cyclic" and len(pat.vars) > 4


_PATTERN_GROUPS: dict[Pattern, tuple] = {}


def _groups_of(pat: Pattern) -> tuple:
    groups = _PATTERN_GROUPS.get(pat)
    if groups is None:
        by_var: dict[str, list[int]] = {}
        for i, v in enumerate(pat.vars):
            by_var.setdefault(v, []).append(i)
        groups = tuple((v, tuple(ps)) for v, ps in by_var.items())
        _PATTERN_GROUPS[pat] = groups
    return groups


def _seed_bind(groups: tuple, variant: tuple) -> dict | None:
    vals = []
    for _, poss in groups:
        v0 = variant[poss[0]]
        for p in poss[1:]:
            if variant[p] != v0:
                return None
        vals.append(v0)
    if len(set(vals)) != len(vals):
        return None
    return {g[0]: v for g, v in zip(groups, vals)}


def _seed_normal(pat: Pattern, fr_by_pred: dict):
    groups = _groups_of(pat)
    arity = len(pat.vars)
    for fact in fr_by_pred.get(pat.predicate, []):
        if len(fact.args) != arity:
            continue
        for var in _variants_of(fact):
            theta = _seed_bind(groups, var)
            if theta is not None:
                yield theta, [fact]


def _seed_wide_cyclic(state: SaturationState, pat: Pattern, frontier: list[Fact]):
    fresh = {f for f in frontier if f.predicate == "cyclic"}
    for grp, members in state.clusters():
        if len(grp) < len(pat.vars) or not fresh.intersection(members):
            continue
        for theta in _assignments(pat.vars, sorted(grp), {}):
            yield theta, list(members)


def _assignments(vars_: tuple[str, ...], points: list[str], theta: dict):
    """Injective assignments of pattern variables to cluster points."""
    pending = [v for v in dict.fromkeys(vars_) if v not in theta]
    used = set(theta.values())

    def rec(i: int, cur: dict, used: set):
        if i == len(pending):
            yield dict(cur)
            return
        v = pending[i]
        for p in points:
            if p not in used:
                cur[v] = p
                used.add(p)
                yield from rec(i + 1, cur, used)
                used.discard(p)
                del cur[v]

    yield from rec(0, dict(theta), used)


def _bind(vars_: tuple[str, ...], args: tuple[str, ...], theta: dict) -> dict | None:
    new = dict(theta)
    used = set(new.values())
    for v, a in zip(vars_, args):
        b = new.get(v)
        if b is None:
            if a in used:
                return None     # distinct variables bind distinct points
            new[v] = a
            used.add(a)
        elif b != a:
            return None
    return new


def _join(state: SaturationState, rule: Rule, pats: list[Pattern],
          side_pats: list[Pattern], theta: dict, used: list[Fact], out: dict) -> None:
    if not pats:
        for side in side_pats:
            args = tuple(theta[v] for v in side.vars)
            if not check_fact(Fact.make(side.predicate, args), state.diagram, TOL_TRUE):
                return
        concl = Fact.make(rule.conclusion.predicate,
                          tuple(theta[v] for v in rule.conclusion.vars))
        if concl not in state.facts and concl not in out:
            out[concl] = (rule.rule_id, tuple(used))
        return

    # most-constrained pattern first
    order = sorted(range(len(pats)),
                   key=lambda i: -sum(1 for v in pats[i].vars if v in theta))
    pick = order[0]
    pat = pats[pick]
    rest = pats[:pick] + pats[pick + 1:]

    if _is_wide_cyclic(pat):
        bound = [theta[v] for v in pat.vars if v in theta]
        for grp, members in state.clusters():
            if len(grp) < len(set(pat.vars)) or any(p not in grp for p in bound):
                continue
            for theta2 in _assignments(pat.vars, sorted(grp), theta):
                _join(state, rule, rest, side_pats, theta2, used + list(members), out)
        return

    if all(v in theta for v in pat.vars):
        ground = Fact.make(pat.predicate, tuple(theta[v] for v in pat.vars))
        if ground in state.facts:
            _join(state, rule, rest, side_pats, theta, used + [ground], out)
        return

    for fact, var in _candidates(state, pat, theta):
        theta2 = _bind(pat.vars, var, theta)
        if theta2 is not None:
            _join(state, rule, rest, side_pats, theta2, used + [fact], out)


def _candidates(state: SaturationState, pat: Pattern, theta: dict):
    arity = len(pat.vars)
    best = None
    if arity == 8:
        for k in range(4):
            va, vb = pat.vars[2 * k], pat.vars[2 * k + 1]
            if va in theta and vb in theta:
                lst = state._index.get((pat.predicate, k, theta[va], theta[vb]), [])
                if best is None or len(lst) < len(best):
                    best = lst
    else:
        for i, v in enumerate(pat.vars):
            if v in theta:
                lst = state._index.get((pat.predicate, i, theta[v]), [])
                if best is None or len(lst) < len(best):
                    best = lst
    if best is not None:
        for fact, var in best:
            if len(var) == arity:
                yield fact, var
        return
    for fact in state.by_pred.get(pat.predicate, []):
        if len(fact.args) != arity:
            continue
        for var in _variants_of(fact):
            yield fact, var


# ----------------------------------------------------------------- algebra

def derive_algebra(state: SaturationState) -> dict[Fact, tuple]:
    """Span-derived facts not in C, as ``{fact: (ALGEBRA, supports)}``."""
    if state._algebra is None:
        state._algebra = IncrementalAlgebra(state.diagram)
    alg = state._algebra
    for fact, deriv in state.facts.items():
        alg.feed(fact, mention=deriv.kind != ALGEBRA)
    out: dict[Fact, tuple] = {}
    for fact, supports in alg.emit(set(state.facts)):
        if fact not in state.facts and fact not in out:
            out[fact] = (ALGEBRA, supports)
    return out


# -------------------------------------------------------------- saturation

def saturate(premise: Premise, diagram: Diagram, rules: list[Rule] | None = None,
             max_level: int = 8, algebra: bool = True,
             facts: list[Fact] | None = None) -> SaturationState:
    if rules is None:
        rules = default_rules()
    state = SaturationState(premise, diagram, rules, max_level)
    for f in (premise.facts() if facts is None else facts):
        state.add_fact(f, Derivation(PREMISE, (), 0))
    state.frontier = list(state.facts)

    while state.level < max_level:
        state.level += 1
        new = match_theorems(state, rules)
        if algebra:
            for fact, dep in derive_algebra(state).items():
                new.setdefault(fact, dep)
        added: list[Fact] = []
        for fact, (kind, supports) in new.items():
            if fact in state.facts:
                continue
            if not check_fact(fact, state.diagram, TOL_TRUE):
                raise UnsoundDerivation(
                    f"{fact} via {kind} fails numerically "
                    f"(residual {fact_residual(fact, state.diagram):.3e}) "
                    f"on premise {premise.text()!r}")
            state.add_fact(fact, Derivation(kind, supports, state.level))
            added.append(fact)
        if not added:
            state.level -= 1
            break
        state.frontier = added
    return state


# ------------------------------------------------------------ proof traces

def extract_proof(state: SaturationState, conclusion: Fact) -> ProofTrace:
    if conclusion not in state.facts:
        raise NotDerived(str(conclusion))
    order: dict[Fact, int] = {f: i for i, f in enumerate(state.facts)}
    needed: dict[Fact, None] = {}
    stack = [conclusion]
    while stack:
        f = stack.pop()
        if f in needed:
            continue
        needed[f] = None
        for s in state.facts[f].supports:
            stack.append(s)
    steps = [(f, state.facts[f]) for f in needed if state.facts[f].kind != PREMISE]
    steps.sort(key=lambda fd: (fd[1].level, order[fd[0]]))
    return ProofTrace(
        conclusion=conclusion,
        steps=steps,
        proof_length=len(steps),
        search_depth=state.facts[conclusion].level,
    )


def replay_trace(trace: ProofTrace, premise_facts: list[Fact]) -> bool:
    """Check each step's supports precede it, ending at the conclusion."""
    available = set(premise_facts)
    for fact, deriv in trace.steps:
        if any(s not in available for s in deriv.supports):
            return False
        available.add(fact)
    return trace.conclusion in available
