"""MCQ assembly: difficulty scoring, option selection, distractors, refinement.

A saturated premise becomes a four-option problem: the answer-key size is
drawn from a configured distribution, the key options are the top-scoring
provable conclusions, the premise is pruned to what those proofs and
statements actually use, and the remaining slots are filled with
distractors that are provably outside the closure and numerically false on
three independent diagrams of the refined premise.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .errors import (
    DegenerateAfterRetries,
    InsufficientConclusions,
    NoFalsifiableVariant,
    Unsatisfiable,
)
from .kernel.diagram import Diagram, instantiate
from .kernel.dsl import Premise
from .kernel.facts import Fact, TOL_FALSE, residual
from .engine.rules import Rule
from .engine.saturate import (
    PREMISE,
    ProofTrace,
    SaturationState,
    extract_proof,
    saturate,
)
from .render.text import render_premise_text, statement_points

LABELS = ("A", "B", "C", "D")


@dataclass(frozen=True)
class RatioClaim:
    """Claim that segment ab is (num/den) times segment cd."""
    a: str
    b: str
    c: str
    d: str
    num: int
    den: int = 1

    def key(self) -> tuple:
        return ("ratio", self.a, self.b, self.c, self.d, self.num, self.den)


Statement = Fact | RatioClaim


@dataclass(frozen=True)
class DifficultyIndicators:
    x1: int     # description length (EN whitespace tokens)
    x2: int     # premise length (constructions)
    x3: int     # point count
    x4: int     # proof-search depth
    x5: int     # proof length

    def as_tuple(self) -> tuple[int, ...]:
        return (self.x1, self.x2, self.x3, self.x4, self.x5)


@dataclass(frozen=True)
class DifficultyConfig:
    weights: tuple[float, float, float, float, float] = (0.2, 0.2, 0.2, 0.2, 0.2)
    normalize: bool = False      # per-batch z-scores, applied by score_batch

    def __post_init__(self):
        if min(self.weights) < 0:
            raise ValueError("weights must be non-negative")


@dataclass
class Option:
    statement: Statement
    truth: bool
    origin: str                  # provable | negation | ratio_perturbation | rewrite
    trace: ProofTrace | None = None
    indicators: DifficultyIndicators | None = None
    score: float = 0.0


@dataclass
class Problem:
    problem_id: str
    premise: Premise
    options: list[Option]        # exactly 4, in label order A-D
    answer_key: tuple[str, ...]
    difficulty_score: float
    indicators: DifficultyIndicators
    seed: int
    difficulty_band: str | None = None
    solution_length: int = 0     # distinct derivation steps across true options


@dataclass(frozen=True)
class ForgeConfig:
    difficulty: DifficultyConfig = field(default_factory=DifficultyConfig)
    key_cardinality_dist: tuple[float, float, float] = (0.45, 0.45, 0.10)
    max_level: int = 8
    instantiate_retries: int = 24
    falsifiability_diagrams: int = 3


def score_difficulty(indicators: DifficultyIndicators, config: DifficultyConfig,
                     stats: list[tuple[float, float]] | None = None) -> float:
    """Weighted sum of the five indicators; optional per-batch z-scores."""
    xs = indicators.as_tuple()
    if config.normalize and stats is not None:
        xs = tuple((x - mu) / sd if sd > 0 else 0.0
                   for x, (mu, sd) in zip(xs, stats))
    return sum(w * x for w, x in zip(config.weights, xs))


def batch_stats(batch: list[DifficultyIndicators]) -> list[tuple[float, float]]:
    stats = []
    for i in range(5):
        vals = [ind.as_tuple()[i] for ind in batch]
        mu = sum(vals) / len(vals)
        sd = math.sqrt(sum((v - mu) ** 2 for v in vals) / len(vals))
        stats.append((mu, sd))
    return stats


# ------------------------------------------------------------ true options

def solo_closures(state: SaturationState) -> set[Fact]:
    """Facts derivable from any single construction's clauses alone."""
    out: set[Fact] = set()
    for con in state.premise.constructions:
        facts = Premise((con,)).facts()
        if not facts:
            continue
        sub = saturate(state.premise, state.diagram, rules=state.rules,
                       max_level=state.max_level, facts=facts)
        out.update(sub.facts)
    return out


def candidate_conclusions(state: SaturationState, config: ForgeConfig,
                          shared: DifficultyIndicators | None = None
                          ) -> list[Option]:
    """Provable non-premise conclusions ranked by difficulty score."""
    banned = solo_closures(state)
    if shared is None:
        shared = premise_indicators(state.premise)
    opts: list[Option] = []
    for fact, deriv in state.facts.items():
        if deriv.kind == PREMISE or fact in banned:
            continue
        trace = extract_proof(state, fact)
        ind = DifficultyIndicators(shared.x1, shared.x2, shared.x3,
                                   trace.search_depth, trace.proof_length)
        opts.append(Option(fact, True, "provable", trace, ind,
                           score_difficulty(ind, config.difficulty)))
    opts.sort(key=lambda o: (-o.score, str(o.statement)))
    return opts


def select_true_options(state: SaturationState, count: int,
                        config: ForgeConfig | None = None) -> list[Option]:
    if not 1 <= count <= 3:
        raise ValueError("count must be 1..3")
    config = config or ForgeConfig()
    opts = candidate_conclusions(state, config)
    if len(opts) < count:
        raise InsufficientConclusions(
            f"{len(opts)} eligible conclusions, need {count}")
    return opts[:count]


def premise_indicators(premise: Premise) -> DifficultyIndicators:
    x1 = len(render_premise_text(premise, "en").split())
    return DifficultyIndicators(x1, len(premise.constructions),
                                len(premise.points), 0, 0)


# ------------------------------------------------------------- distractors

def statement_residual(stmt: Statement, diagram: Diagram) -> float:
    if isinstance(stmt, Fact):
        return residual(stmt, diagram.coords, diagram.diameter)
    pa, pb = diagram.coords[stmt.a], diagram.coords[stmt.b]
    pc, pd = diagram.coords[stmt.c], diagram.coords[stmt.d]
    ab, cd = pa.distance(pb), pc.distance(pd)
    if min(ab, cd) <= 0.0:
        return math.inf
    return abs(math.log(ab) - math.log(cd) - math.log(stmt.num / stmt.den))


def is_entity_substitution(candidate: Statement, base: Statement) -> bool:
    """True if candidate is base with exactly one point swapped."""
    if not (isinstance(candidate, Fact) and isinstance(base, Fact)):
        return False
    if candidate.predicate != base.predicate or len(candidate.args) != len(base.args):
        return False
    from .kernel.facts import variants
    for var in variants(base):
        if sum(1 for x, y in zip(var, candidate.args) if x != y) == 1:
            return True
    return False


def _negation_candidates(base: Fact) -> list[Statement]:
    p, a = base.predicate, base.args
    if p == "para":
        return [Fact.make("perp", a)]
    if p == "perp":
        return [Fact.make("para", a)]
    if p == "cong":
        return [Fact.make("perp", a), Fact.make("para", a)]
    if p == "eqangle":
        return [Fact.make("perp", a[:4]), Fact.make("perp", a[4:])]
    if p == "cyclic":
        return [Fact.make("coll", a[:3]), Fact.make("coll", a[1:])]
    if p == "midp":
        return [Fact.make("cong", (a[0], a[1], a[1], a[2]))]
    if p == "coll":
        return [Fact.make("midp", (a[0], a[1], a[2])),
                Fact.make("midp", (a[1], a[0], a[2]))]
    if p == "eqratio":
        return [Fact.make("cong", a[:4]), Fact.make("cong", a[4:])]
    if p == "circle":
        return [Fact.make("cong", (a[1], a[2], a[2], a[3]))]
    if p == "eqratio3":
        return [Fact.make("cong", a[:4])]
    return []


def _ratio_candidates(base: Fact, rng: random.Random) -> list[Statement]:
    p, a = base.predicate, base.args
    factors = [(2, 1), (3, 1), (1, 2), (1, 3), (3, 2)]
    rng.shuffle(factors)
    segs: list[tuple[str, str, str, str]] = []
    if p in ("cong", "para", "perp", "eqratio"):
        segs.append((a[0], a[1], a[2], a[3]))
    if p == "eqratio":
        segs.append((a[4], a[5], a[6], a[7]))
    if p == "midp":
        segs.append((a[0], a[1], a[0], a[2]))
        segs.append((a[0], a[1], a[1], a[2]))
    if p == "coll":
        segs.append((a[0], a[1], a[1], a[2]))
    if p == "circle":
        segs.append((a[0], a[1], a[1], a[2]))
    if p == "cyclic":
        segs.append((a[0], a[1], a[2], a[3]))
    if p == "eqangle":
        segs.append((a[0], a[1], a[2], a[3]))
    if p == "eqratio3":
        segs.append((a[0], a[1], a[2], a[3]))
    return [RatioClaim(*seg, num, den) for seg in segs for num, den in factors]


def _rewrite_candidates(base: Fact) -> list[Statement]:
    p, a = base.predicate, base.args
    if p == "eqangle":
        return [Fact.make("cong", (a[2], a[3], a[6], a[7])),
                Fact.make("cong", (a[0], a[1], a[4], a[5]))]
    if p == "eqratio":
        return [Fact.make("cong", a[:4])]
    if p in ("para", "perp"):
        return [Fact.make("cong", a)]
    if p == "cong":
        return [Fact.make("para", a), Fact.make("midp", (a[0], a[2], a[3]))]
    if p == "cyclic":
        return [Fact.make("cong", a)]
    if p == "circle":
        return [Fact.make("cong", (a[1], a[2], a[2], a[3]))]
    if p == "coll":
        return [Fact.make("midp", (a[1], a[0], a[2]))]
    if p == "midp":
        return [Fact.make("cong", (a[0], a[1], a[1], a[2]))]
    if p == "eqratio3":
        return [Fact.make("cong", a[:4])]
    return []


STRATEGIES = ("negation", "ratio_perturbation", "rewrite")


def make_distractor(base: Fact, premise: Premise, closure: SaturationState,
                    diagrams: list[Diagram], strategy: str,
                    rng: random.Random | None = None) -> Option:
    """A falsifiable false option derived from a true base fact."""
    rng = rng or random.Random(0)
    if strategy == "negation":
        candidates = _negation_candidates(base)
    elif strategy == "ratio_perturbation":
        candidates = _ratio_candidates(base, rng)
    elif strategy == "rewrite":
        candidates = _rewrite_candidates(base)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    points = set(premise.points)
    for cand in candidates:
        if is_entity_substitution(cand, base):
            continue
        if any(p not in points for p in statement_points(cand)):
            continue
        if isinstance(cand, Fact) and cand in closure.facts:
            continue
        if all(statement_residual(cand, d) > TOL_FALSE for d in diagrams):
            return Option(cand, False, strategy, None)
    raise NoFalsifiableVariant(f"{strategy} on {base}")


# -------------------------------------------------------------- refinement

def refine_symbols(premise: Premise, options: list[Option]) -> Premise:
    """Minimal prefix-closed premise keeping option points and proof leaves."""
    needed_points: set[str] = set()
    needed_facts: set[Fact] = set()
    for opt in options:
        needed_points.update(statement_points(opt.statement))
        if opt.trace is None:
            continue
        step_facts = {f for f, _ in opt.trace.steps}
        if not opt.trace.steps:
            needed_facts.add(opt.trace.conclusion)
        for _, deriv in opt.trace.steps:
            for s in deriv.supports:
                if s not in step_facts:
                    needed_facts.add(s)

    cons = list(premise.constructions)
    keep = [False] * len(cons)
    con_facts = [set(c.facts()) for c in cons]
    for i, cf in enumerate(con_facts):
        if cf & needed_facts:
            keep[i] = True
    # grouped circle facts have no single owning construction: keep every
    # construction contributing a cong at that center
    direct = set().union(*con_facts) if con_facts else set()
    for f in needed_facts - direct:
        if f.predicate != "circle":
            continue
        center = f.args[0]
        for i, cf in enumerate(con_facts):
            if any(g.predicate == "cong" and center in (g.args[0], g.args[2])
                   for g in cf):
                keep[i] = True

    changed = True
    while changed:
        changed = False
        for i, con in enumerate(cons):
            if keep[i] or not (set(con.new_points) & needed_points):
                continue
            keep[i] = True
            changed = True
        for i, con in enumerate(cons):
            if not keep[i]:
                continue
            for clause in con.clauses:
                for arg in clause.args[clause.template.new_points:]:
                    if arg not in needed_points:
                        needed_points.add(arg)
                        changed = True
    kept = tuple(c for i, c in enumerate(cons) if keep[i])
    return Premise(kept)


# ---------------------------------------------------------------- assembly

def draw_key_cardinality(dist: tuple[float, float, float], rng: random.Random) -> int:
    u = rng.random()
    if u < dist[0]:
        return 1
    if u < dist[0] + dist[1]:
        return 2
    return 3


def assemble_problem(state: SaturationState, premise: Premise,
                     config: ForgeConfig, problem_id: str, seed: int,
                     rules: list[Rule] | None = None) -> Problem:
    """One problem from a saturated premise; raises if guarantees fail."""
    rng = random.Random(f"assemble:{problem_id}:{seed}")
    k = draw_key_cardinality(config.key_cardinality_dist, rng)
    ranked = candidate_conclusions(state, config)
    if not ranked:
        raise InsufficientConclusions("no eligible conclusions")
    k = min(k, len(ranked))
    trues = ranked[:k]

    refined = refine_symbols(premise, trues)
    diagram = instantiate(refined, seed=seed, max_retries=config.instantiate_retries)
    refined_state = saturate(refined, diagram, rules=rules or state.rules,
                             max_level=config.max_level)
    shared = premise_indicators(refined)
    final_trues: list[Option] = []
    for opt in trues:
        fact = opt.statement
        if fact not in refined_state.facts:
            raise InsufficientConclusions(f"{fact} lost by refinement")
        trace = extract_proof(refined_state, fact)
        ind = DifficultyIndicators(shared.x1, shared.x2, shared.x3,
                                   trace.search_depth, trace.proof_length)
        final_trues.append(Option(fact, True, "provable", trace, ind,
                                  score_difficulty(ind, config.difficulty)))

    fresh = [instantiate(refined, seed=seed + 1 + i,
                         max_retries=config.instantiate_retries)
             for i in range(config.falsifiability_diagrams)]
    distractors: list[Option] = []
    seen_keys = {_stmt_key(o.statement) for o in final_trues}
    strategies = list(STRATEGIES)
    rng.shuffle(strategies)
    bases = [o.statement for o in final_trues] + [o.statement for o in ranked[k:k + 6]
                                                  if isinstance(o.statement, Fact)]
    while len(distractors) < 4 - len(final_trues):
        made = None
        for base in bases:
            for strat in strategies:
                try:
                    cand = make_distractor(base, refined, refined_state, fresh,
                                           strat, rng)
                except NoFalsifiableVariant:
                    continue
                if _stmt_key(cand.statement) in seen_keys:
                    continue
                made = cand
                break
            if made:
                break
        if made is None:
            raise NoFalsifiableVariant(f"problem {problem_id}")
        seen_keys.add(_stmt_key(made.statement))
        distractors.append(made)
        rng.shuffle(strategies)

    options = final_trues + distractors
    order = list(range(4))
    rng.shuffle(order)
    shuffled = [options[i] for i in order]
    answer_key = tuple(sorted(LABELS[pos] for pos, opt in enumerate(shuffled)
                              if opt.truth))
    hardest = max(final_trues, key=lambda o: o.score)
    solution_steps = {f for o in final_trues if o.trace for f, _ in o.trace.steps}
    return Problem(
        problem_id=problem_id,
        premise=refined,
        options=shuffled,
        answer_key=answer_key,
        difficulty_score=hardest.score,
        indicators=hardest.indicators,
        seed=seed,
        solution_length=len(solution_steps),
    )


def _stmt_key(stmt: Statement) -> tuple:
    if isinstance(stmt, Fact):
        return (stmt.predicate,) + stmt.args
    return stmt.key()
