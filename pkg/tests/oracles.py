"""Independent oracles: a naive closure engine and per-record metric math.

These deliberately re-implement the checked behavior the slow way (full
re-scan each round, no indexes, no frontier restriction, direct formulas)
so they share no matching or aggregation code with the package.
"""
from __future__ import annotations

from itertools import permutations

from geoforge.engine.rules import SIDE_CONDITIONS
from geoforge.kernel.diagram import check_fact
from geoforge.kernel.facts import Fact, variants


def brute_force_closure(premise_facts, rules, diagram, max_level):
    """Fixpoint by re-scanning every rule against every fact each round."""
    facts = set(premise_facts)
    for _ in range(max_level):
        new = set()
        for rule in rules:
            for concl in _rule_conclusions(rule, facts, diagram):
                if concl not in facts:
                    new.add(concl)
        if not new:
            break
        facts |= new
    return facts


def _rule_conclusions(rule, facts, diagram):
    fact_pats = [p for p in rule.premises if p.predicate not in SIDE_CONDITIONS]
    side_pats = [p for p in rule.premises if p.predicate in SIDE_CONDITIONS]
    clusters = _cyclic_clusters(facts)

    def rec(i, theta):
        if i == len(fact_pats):
            for side in side_pats:
                args = tuple(theta[v] for v in side.vars)
                if not check_fact(Fact.make(side.predicate, args), diagram):
                    return
            yield Fact.make(rule.conclusion.predicate,
                            tuple(theta[v] for v in rule.conclusion.vars))
            return
        pat = fact_pats[i]
        if pat.predicate == "cyclic" and len(pat.vars) > 4:
            for grp in clusters:
                if len(grp) < len(pat.vars):
                    continue
                for perm in permutations(sorted(grp), len(pat.vars)):
                    theta2 = _unify(pat.vars, perm, theta)
                    if theta2 is not None:
                        yield from rec(i + 1, theta2)
            return
        for fact in facts:
            if fact.predicate != pat.predicate or len(fact.args) != len(pat.vars):
                continue
            for var in variants(fact):
                theta2 = _unify(pat.vars, var, theta)
                if theta2 is not None:
                    yield from rec(i + 1, theta2)

    yield from rec(0, {})


def _unify(vars_, args, theta):
    new = dict(theta)
    taken = set(new.values())
    for v, a in zip(vars_, args):
        if v in new:
            if new[v] != a:
                return None
        else:
            if a in taken:
                return None
            new[v] = a
            taken.add(a)
    return new


def _cyclic_clusters(facts):
    clusters: list[set] = []
    for f in facts:
        if f.predicate != "cyclic":
            continue
        grp = set(f.args)
        again = True
        while again:
            again = False
            for other in clusters:
                if other is not grp and len(other & grp) >= 3:
                    grp |= other
                    clusters.remove(other)
                    again = True
                    break
        clusters.append(grp)
    return clusters


def metric_row(pred: set[str], key: set[str], k: int = 4):
    """(em, p, r, f1, hl, n_sel) for one problem, straight from formulas."""
    em = 1.0 if pred == key else 0.0
    inter = len(pred & key)
    p = inter / len(pred) if pred else 0.0
    r = inter / len(key) if key else 0.0
    f1 = (2 * p * r / (p + r)) if p + r > 0 else 0.0
    hl = sum(1 for lab in "ABCD" if (lab in pred) != (lab in key)) / k
    return em, p, r, f1, hl, len(pred)
