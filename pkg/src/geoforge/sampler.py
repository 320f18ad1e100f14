"""Layered premise sampling with an annealed branching schedule.

Pools grow breadth-first: a seed polygon at depth 0, then per layer each
partial premise is extended by up to ``branching_schedule[layer]`` new
constructions whose arguments are drawn from the already-defined points.
Every extension must instantiate; failures are discarded, not repaired.
Each partial premise owns an RNG stream keyed by ``(seed, layer, text)``,
so expansion order (or parallelism) cannot change the result.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import DegenerateAfterRetries, EmptyPool, NoValidExtension, Unsatisfiable
from .kernel.diagram import Diagram, instantiate
from .kernel.dsl import Clause, Construction, Premise
from .kernel.templates import LOCUS_TEMPLATES, SEED_TEMPLATES, TEMPLATES

_NAMES = "abcdefghijklmnopqrstuvwxyz"
_ANGLES = (30, 40, 45, 50, 60, 70, 75, 90, 105, 110, 120, 135, 150)


def default_schedule(max_depth: int, start: int = 8) -> tuple[int, ...]:
    out = []
    b = start
    for _ in range(max_depth):
        out.append(max(b, 1))
        b //= 2
    return tuple(out)


@dataclass(frozen=True)
class SamplerConfig:
    max_depth: int = 8
    branching_schedule: tuple[int, ...] = ()
    seed: int = 0
    templates_per_layer: int = 2         # 1 = single-clause constructions only
    rejection_budget: int = 24           # candidate draws per requested extension
    instantiate_retries: int = 8

    def __post_init__(self):
        sched = self.branching_schedule or default_schedule(self.max_depth)
        object.__setattr__(self, "branching_schedule", tuple(sched))
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if len(self.branching_schedule) != self.max_depth:
            raise ValueError("schedule length must equal max_depth")
        if min(self.branching_schedule) < 1:
            raise ValueError("schedule entries must be positive")
        if self.templates_per_layer not in (1, 2):
            raise ValueError("templates_per_layer is 1 or 2")


@dataclass(frozen=True)
class PoolEntry:
    premise: Premise
    seed: int
    path: tuple[int, ...]       # branch index chosen at each layer
    depth: int                  # layers successfully added
    complete: bool              # reached max_depth

    @property
    def entry_id(self) -> str:
        return f"p{self.seed:04d}-" + ".".join(str(i) for i in self.path)


@dataclass
class PremisePool:
    config: SamplerConfig
    entries: list[PoolEntry] = field(default_factory=list)

    @property
    def premises(self) -> list[Premise]:
        return [e.premise for e in self.entries]


def sample_layer(partial: Premise, config: SamplerConfig, layer: int) -> list[Premise]:
    """Up to ``schedule[layer]`` instantiable one-construction extensions."""
    if layer >= config.max_depth:
        raise ValueError("layer past max_depth")
    branch = config.branching_schedule[layer]
    rng = random.Random(f"{config.seed}|{layer}|{partial.text()}")
    try:
        diagram = instantiate(partial, seed=config.seed,
                              max_retries=config.instantiate_retries)
    except (DegenerateAfterRetries, Unsatisfiable) as exc:
        raise NoValidExtension(f"partial premise no longer instantiates: {exc}")

    found: list[Premise] = []
    seen: set[str] = set()
    budget = config.rejection_budget * branch
    while len(found) < branch and budget > 0:
        budget -= 1
        con = _propose(partial, diagram, config, rng)
        if con is None:
            continue
        candidate = partial.extended(con)
        key = candidate.text()
        if key in seen:
            continue
        seen.add(key)
        try:
            instantiate(candidate, seed=config.seed,
                        max_retries=config.instantiate_retries)
        except (DegenerateAfterRetries, Unsatisfiable):
            continue
        found.append(candidate)
    if not found:
        raise NoValidExtension(f"no valid extension at layer {layer}")
    return found


def sample_pool(config: SamplerConfig) -> PremisePool:
    rng = random.Random(f"{config.seed}|seed-template")
    seed_name = rng.choice(SEED_TEMPLATES)
    tpl = TEMPLATES[seed_name]
    new_points = tuple(_NAMES[:tpl.new_points])
    seed_premise = Premise((Construction(new_points, (Clause(seed_name, new_points),)),))
    try:
        instantiate(seed_premise, seed=config.seed,
                    max_retries=config.instantiate_retries)
    except (DegenerateAfterRetries, Unsatisfiable) as exc:
        raise EmptyPool(f"seed construction failed: {exc}")

    frontier: list[tuple[Premise, tuple[int, ...]]] = [(seed_premise, ())]
    done: list[tuple[Premise, tuple[int, ...], int]] = []
    for layer in range(config.max_depth):
        nxt: list[tuple[Premise, tuple[int, ...]]] = []
        for premise, path in frontier:
            try:
                extensions = sample_layer(premise, config, layer)
            except NoValidExtension:
                done.append((premise, path, layer))
                continue
            for i, ext in enumerate(extensions):
                nxt.append((ext, path + (i,)))
        frontier = nxt

    pool = PremisePool(config=config)
    for premise, path, depth in done:
        pool.entries.append(PoolEntry(premise, config.seed, path, depth, False))
    for premise, path in frontier:
        pool.entries.append(PoolEntry(premise, config.seed, path, config.max_depth, True))
    pool.entries.sort(key=lambda e: e.path)
    return pool


def _propose(partial: Premise, diagram: Diagram, config: SamplerConfig,
             rng: random.Random) -> Construction | None:
    points = partial.points
    new_name = next((n for n in _NAMES if n not in points), None)
    if new_name is None:
        return None
    two = config.templates_per_layer == 2 and len(points) >= 3 and rng.random() < 0.4
    if two:
        c1 = _propose_clause(new_name, points, diagram, rng, locus_only=True)
        c2 = _propose_clause(new_name, points, diagram, rng, locus_only=True)
        if c1 is None or c2 is None or c1 == c2:
            return None
        return Construction((new_name,), (c1, c2))
    clause = _propose_clause(new_name, points, diagram, rng, locus_only=False)
    if clause is None:
        return None
    tpl = clause.template
    if tpl.new_points != 1:
        return None
    return Construction((new_name,), (clause,))


def _propose_clause(new_name: str, points: tuple[str, ...], diagram: Diagram,
                    rng: random.Random, locus_only: bool) -> Clause | None:
    pool, weights = _LOCUS_POOL if locus_only else _EXTENSION_POOL
    name = rng.choices(pool, weights=weights, k=1)[0]
    tpl = TEMPLATES[name]
    if tpl.num_args > len(points):
        return None
    args = rng.sample(points, tpl.num_args)
    if not tpl.arg_check(*[diagram.coords[p] for p in args]):
        return None
    numeric = (float(rng.choice(_ANGLES)),) if tpl.numeric_slots else ()
    return Clause(name, (new_name, *args), numeric)


# Relation-dense templates are favored: constructions that pin midpoints,
# circles, feet and reflections feed the deduction rules far more than a
# bare on_line point, and deep premises otherwise saturate trivially.
_TEMPLATE_WEIGHT = {
    "midpoint": 5, "circle": 4, "on_circle": 4, "foot": 4, "on_circum": 3,
    "reflect": 3, "mirror": 3, "on_bline": 3, "on_dia": 3, "parallelogram": 3,
    "intersection_lc": 2, "intersection_ll": 2, "intersection_lp": 2,
    "intersection_lt": 2, "intersection_pp": 2, "intersection_tt": 2,
    "orthocenter": 2, "centroid": 2, "ninepoints": 2, "on_pline": 2,
    "on_tline": 2, "eq_triangle": 2, "nsquare": 2, "square": 2, "shift": 2,
    "tangent": 2, "lc_tangent": 1, "eqdistance": 2, "on_line": 2,
    "angle_bisector": 1, "incenter": 1, "excenter": 1, "angle_mirror": 1,
    "on_aline": 1, "s_angle": 1, "eqangle2": 1, "eqangle3": 1,
}


def _weighted(names: tuple[str, ...]) -> tuple[tuple[str, ...], tuple[int, ...]]:
    return names, tuple(_TEMPLATE_WEIGHT.get(n, 1) for n in names)


# single-clause extensions define exactly one new point
_EXTENSION_TEMPLATES = tuple(
    t.name for t in TEMPLATES.values()
    if t.kind in ("point", "line", "circle") and t.new_points == 1
)
_EXTENSION_POOL = _weighted(_EXTENSION_TEMPLATES)
_LOCUS_POOL = _weighted(LOCUS_TEMPLATES)
