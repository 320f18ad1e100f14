"""Ground predicate instances over point symbols.

A :class:`Fact` is stored in a canonical argument order so that symmetric
writings (``cong a b c d`` vs ``cong c d a b``) collapse to one set element.
For rule matching we also enumerate every truth-preserving rewriting of a
fact ("variants"), since rule patterns may pin repeated variables at
positions the canonical order does not expose.

Angle-like predicates (para/eqangle) are read modulo pi: two segments on a
common line count as having equal directions, so ``para`` here means
"parallel or collinear", matching the deduction rules' usage (e.g.
``para A B A C -> coll A B C``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from ..errors import UnknownPredicate
from .geometry import Point, Line, Circle, direction_angle, angle_mod_pi

PREDICATES = (
    "coll", "ncoll", "para", "npara", "perp", "cong", "cyclic",
    "eqangle", "eqangle6", "eqratio", "eqratio3", "eqratio6",
    "midp", "circle", "sameside",
)

# Fixed arity per predicate; coll/cyclic accept at least this many.
_ARITY = {
    "coll": 3, "ncoll": 3, "para": 4, "npara": 4, "perp": 4, "cong": 4,
    "cyclic": 4, "eqangle": 8, "eqratio": 8, "eqratio3": 6,
    "midp": 3, "circle": 4, "sameside": 6,
}
_VARIADIC = {"coll", "ncoll", "cyclic"}

# Position permutations preserving truth for the 8-argument linear relations
# d2-d1 = d4-d3 over pairs (0,1),(2,3),(4,5),(6,7): generated by swapping the
# two sides, reversing both differences, and exchanging the middle pairs.
def _pair_group() -> tuple[tuple[int, ...], ...]:
    gens = [(2, 3, 0, 1), (1, 0, 3, 2), (0, 2, 1, 3)]
    group = {(0, 1, 2, 3)}
    frontier = list(group)
    while frontier:
        g = frontier.pop()
        for h in gens:
            comp = tuple(g[i] for i in h)
            if comp not in group:
                group.add(comp)
                frontier.append(comp)
    return tuple(sorted(group))

_PAIR_GROUP = _pair_group()


@dataclass(frozen=True)
class Fact:
    predicate: str
    args: tuple[str, ...]

    @staticmethod
    def make(predicate: str, args) -> "Fact":
        return _make_cached(predicate, tuple(args))

    @staticmethod
    def _make(predicate: str, args) -> "Fact":
        predicate = predicate.lower()
        if predicate == "eqangle6":
            predicate = "eqangle"
        elif predicate == "eqratio6":
            predicate = "eqratio"
        if predicate not in _ARITY:
            raise UnknownPredicate(predicate)
        args = tuple(args)
        n = _ARITY[predicate]
        if (len(args) != n and predicate not in _VARIADIC) or len(args) < n:
            raise UnknownPredicate(f"{predicate} expects {n} args, got {len(args)}")
        return Fact(predicate, _canonical(predicate, args))

    def __str__(self) -> str:
        return f"{self.predicate} {' '.join(self.args)}"

    @staticmethod
    def parse(text: str) -> "Fact":
        parts = text.split()
        return Fact.make(parts[0], parts[1:])


@lru_cache(maxsize=1_000_000)
def _make_cached(predicate: str, args: tuple) -> "Fact":
    return Fact._make(predicate, args)


def _sorted_pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def _canonical(pred: str, args: tuple[str, ...]) -> tuple[str, ...]:
    if pred in ("coll", "ncoll", "cyclic"):
        return tuple(sorted(args))
    if pred in ("para", "npara", "perp", "cong"):
        p1 = _sorted_pair(args[0], args[1])
        p2 = _sorted_pair(args[2], args[3])
        return p1 + p2 if p1 <= p2 else p2 + p1
    if pred == "midp":
        return (args[0],) + _sorted_pair(args[1], args[2])
    if pred == "circle":
        return (args[0],) + tuple(sorted(args[1:]))
    if pred == "sameside":
        t1 = (args[0],) + _sorted_pair(args[1], args[2])
        t2 = (args[3],) + _sorted_pair(args[4], args[5])
        return t1 + t2 if t1 <= t2 else t2 + t1
    if pred in ("eqangle", "eqratio"):
        pairs = [_sorted_pair(args[2 * i], args[2 * i + 1]) for i in range(4)]
        best = min(tuple(pairs[i] for i in perm) for perm in _PAIR_GROUP)
        return best[0] + best[1] + best[2] + best[3]
    if pred == "eqratio3":
        a, b, c, d, m, n = args
        forms = [(a, b, c, d, m, n), (b, a, d, c, n, m), (c, d, a, b, m, n), (d, c, b, a, n, m)]
        return min(forms)
    raise UnknownPredicate(pred)


def variants(fact: Fact) -> tuple[tuple[str, ...], ...]:
    """All argument orderings denoting the same statement (deduplicated)."""
    pred, args = fact.predicate, fact.args
    if pred in ("coll", "ncoll", "cyclic"):
        return tuple(sorted(set(permutations(args))))
    if pred in ("para", "npara", "perp", "cong"):
        out = set()
        for p1 in ((args[0], args[1]), (args[1], args[0])):
            for p2 in ((args[2], args[3]), (args[3], args[2])):
                out.add(p1 + p2)
                out.add(p2 + p1)
        return tuple(sorted(out))
    if pred == "midp":
        return ((args[0], args[1], args[2]), (args[0], args[2], args[1]))
    if pred == "circle":
        return tuple(sorted({(args[0],) + p for p in permutations(args[1:])}))
    if pred == "sameside":
        out = set()
        for t1 in ((args[0], args[1], args[2]), (args[0], args[2], args[1])):
            for t2 in ((args[3], args[4], args[5]), (args[3], args[5], args[4])):
                out.add(t1 + t2)
                out.add(t2 + t1)
        return tuple(sorted(out))
    if pred in ("eqangle", "eqratio"):
        pair_opts = []
        for i in range(4):
            a, b = args[2 * i], args[2 * i + 1]
            pair_opts.append(((a, b), (b, a)))
        out = set()
        for perm in _PAIR_GROUP:
            for o0 in pair_opts[perm[0]]:
                for o1 in pair_opts[perm[1]]:
                    for o2 in pair_opts[perm[2]]:
                        for o3 in pair_opts[perm[3]]:
                            out.add(o0 + o1 + o2 + o3)
        return tuple(sorted(out))
    if pred == "eqratio3":
        a, b, c, d, m, n = args
        return tuple(sorted({(a, b, c, d, m, n), (b, a, d, c, n, m),
                             (c, d, a, b, m, n), (d, c, b, a, n, m)}))
    raise UnknownPredicate(pred)


# Residual floor marking a relation as decisively false (three-band scheme).
TOL_TRUE = 1e-9
TOL_FALSE = 1e-3


def residual(fact: Fact, coords: dict[str, Point], diameter: float) -> float:
    """Scale-normalized defect of the fact on concrete coordinates.

    Angles are radians mod pi; lengths are relative to the figure diameter.
    Negated predicates (ncoll/npara) return ``TOL_FALSE - base`` so that a
    small residual still means "the stated (negative) relation holds".
    """
    pred, args = fact.predicate, fact.args
    P = [coords[a] for a in args]
    if pred == "coll":
        return _coll_residual(P, diameter)
    if pred == "ncoll":
        return TOL_FALSE - _coll_residual(P, diameter)
    if pred == "para":
        return angle_mod_pi(direction_angle(P[0], P[1]) - direction_angle(P[2], P[3]))
    if pred == "npara":
        return TOL_FALSE - angle_mod_pi(
            direction_angle(P[0], P[1]) - direction_angle(P[2], P[3]))
    if pred == "perp":
        d = (direction_angle(P[0], P[1]) - direction_angle(P[2], P[3])) % math.pi
        return abs(d - math.pi / 2)
    if pred == "cong":
        return abs(P[0].distance(P[1]) - P[2].distance(P[3])) / diameter
    if pred == "midp":
        return P[0].distance(P[1].midpoint(P[2])) / diameter
    if pred == "circle":
        o = P[0]
        rads = [o.distance(p) for p in P[1:]]
        return (max(rads) - min(rads)) / diameter
    if pred == "cyclic":
        c = Circle.through(P[0], P[1], P[2])
        return max(abs(c.center.distance(p) - c.radius) for p in P[3:]) / diameter
    if pred == "eqangle":
        d1 = direction_angle(P[2], P[3]) - direction_angle(P[0], P[1])
        d2 = direction_angle(P[6], P[7]) - direction_angle(P[4], P[5])
        return angle_mod_pi(d1 - d2)
    if pred == "eqratio":
        return _log_ratio_residual(P[0], P[1], P[2], P[3], P[4], P[5], P[6], P[7])
    if pred == "eqratio3":
        a, b, c, d, m, n = P
        r1 = _log_ratio_residual(m, a, m, c, n, b, n, d)
        r2 = _log_ratio_residual(m, a, m, c, a, b, c, d)
        return max(r1, r2)
    if pred == "sameside":
        b, a, c, y, x, z = P
        s = (b - a).dot(b - c) * (y - x).dot(y - z)
        return 0.0 if s > 0 else 1.0
    raise UnknownPredicate(pred)


def _coll_residual(P: list[Point], diameter: float) -> float:
    # Use the most separated anchor pair so the line is well conditioned.
    n = len(P)
    i, j = max(((i, j) for i in range(n) for j in range(i + 1, n)),
               key=lambda ij: P[ij[0]].distance(P[ij[1]]))
    line = Line(P[i], P[j])
    worst = max(line.distance(p) for k, p in enumerate(P) if k not in (i, j))
    return worst / diameter


def _log_ratio_residual(a, b, c, d, e, f, g, h) -> float:
    ab, cd, ef, gh = a.distance(b), c.distance(d), e.distance(f), g.distance(h)
    if min(ab, cd, ef, gh) <= 0.0:
        return math.inf
    return abs(math.log(ab) - math.log(cd) - math.log(ef) + math.log(gh))
