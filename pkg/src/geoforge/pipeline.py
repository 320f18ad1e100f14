"""End-to-end pipeline: sample, saturate, assemble, render, split, stats.

Every stage reads and writes plain JSONL so any stage can be rerun from its
input artifact.  All randomness is keyed off ids and the global seed, so a
rerun with the same config reproduces every artifact byte for byte.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .dataset import (
    CorpusRecord,
    OptionRecord,
    SplitSpec,
    stats,
    stratify,
    write_corpus,
)
from .errors import (
    ConfigError,
    DegenerateAfterRetries,
    EmptyPool,
    InsufficientConclusions,
    NoFalsifiableVariant,
    Unsatisfiable,
)
from .forge import (
    DifficultyConfig,
    DifficultyIndicators,
    ForgeConfig,
    Option,
    Problem,
    RatioClaim,
    assemble_problem,
)
from .kernel.diagram import instantiate
from .kernel.dsl import parse_premise
from .kernel.facts import Fact
from .engine.rules import default_rules, load_rules
from .engine.saturate import Derivation, PREMISE, SaturationState, saturate
from .render import render_diagram, render_premise_text, render_statement, verify_render
from .sampler import SamplerConfig, sample_pool


@dataclass
class PipelineConfig:
    seed: int = 0
    out_dir: str = "out"
    seeds: tuple[int, ...] = (0,)
    max_depth: int = 2
    schedule: tuple[int, ...] | None = None
    templates_per_layer: int = 2
    rejection_budget: int = 24
    max_level: int = 8
    rules_path: str | None = None
    weights: tuple[float, ...] = (0.2, 0.2, 0.2, 0.2, 0.2)
    key_dist: tuple[float, float, float] = (0.45, 0.45, 0.10)
    split_ratios: tuple[float, float, float] = (0.3, 0.5, 0.2)
    verify: bool = True
    jobs: int = 1
    max_problems: int | None = None
    min_solution_length: int = 0

    _FIELDS = ("seed", "out_dir", "seeds", "max_depth", "schedule",
               "templates_per_layer", "rejection_budget", "max_level",
               "rules_path", "weights", "key_dist", "split_ratios", "verify",
               "jobs", "max_problems", "min_solution_length")

    @staticmethod
    def from_dict(obj: dict) -> "PipelineConfig":
        unknown = [k for k in obj if k not in PipelineConfig._FIELDS]
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg = PipelineConfig()
        for k, v in obj.items():
            if isinstance(v, list):
                v = tuple(v)
            setattr(cfg, k, v)
        return cfg

    @staticmethod
    def load(path: str) -> "PipelineConfig":
        with open(path, encoding="utf-8") as fh:
            return PipelineConfig.from_dict(json.load(fh))

    def forge_config(self) -> ForgeConfig:
        return ForgeConfig(
            difficulty=DifficultyConfig(weights=tuple(self.weights)),
            key_cardinality_dist=tuple(self.key_dist),
            max_level=self.max_level)

    def rules(self):
        return load_rules(self.rules_path) if self.rules_path else default_rules()


# ------------------------------------------------------------------ stages

def stage_sample(cfg: PipelineConfig) -> list[dict]:
    rows = []
    for seed in cfg.seeds:
        sampler = SamplerConfig(
            max_depth=cfg.max_depth,
            branching_schedule=tuple(cfg.schedule) if cfg.schedule else (),
            seed=seed,
            templates_per_layer=cfg.templates_per_layer,
            rejection_budget=cfg.rejection_budget)
        try:
            pool = sample_pool(sampler)
        except EmptyPool:
            continue
        for entry in pool.entries:
            rows.append({"id": entry.entry_id, "dsl": entry.premise.text(),
                         "depth": entry.depth, "seed": entry.seed,
                         "complete": entry.complete})
    rows.sort(key=lambda r: r["id"])
    return rows


def _saturate_one(args: tuple) -> dict | None:
    row, max_level, rules_path = args
    rules = load_rules(rules_path) if rules_path else default_rules()
    premise = parse_premise(row["dsl"])
    try:
        diagram = instantiate(premise, seed=row["seed"])
    except (DegenerateAfterRetries, Unsatisfiable) as exc:
        return {"id": row["id"], "error": f"{type(exc).__name__}: {exc}"}
    state = saturate(premise, diagram, rules=rules, max_level=max_level)
    order = {f: i for i, f in enumerate(state.facts)}
    facts = []
    for f, d in state.facts.items():
        facts.append({"f": str(f), "by": d.kind, "level": d.level,
                      "deps": [order[s] for s in d.supports]})
    return {"id": row["id"], "dsl": row["dsl"], "seed": row["seed"],
            "depth": row.get("depth"), "facts": facts}


def stage_saturate(rows: list[dict], cfg: PipelineConfig) -> list[dict]:
    tasks = [(row, cfg.max_level, cfg.rules_path) for row in rows]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            out = list(pool.map(_saturate_one, tasks, chunksize=4))
    else:
        out = [_saturate_one(t) for t in tasks]
    return [o for o in out if o is not None]


def restore_state(row: dict, cfg: PipelineConfig) -> tuple[SaturationState, object]:
    premise = parse_premise(row["dsl"])
    diagram = instantiate(premise, seed=row["seed"])
    rules = cfg.rules()
    state = SaturationState(premise, diagram, rules, cfg.max_level)
    facts: list[Fact] = []
    for item in row["facts"]:
        fact = Fact.parse(item["f"])
        supports = tuple(facts[i] for i in item["deps"])
        state.add_fact(fact, Derivation(item["by"], supports, item["level"]))
        facts.append(fact)
        state.level = max(state.level, item["level"])
    return state, premise


def parse_formal(text: str):
    parts = text.split()
    if parts[0] == "ratio":
        return RatioClaim(parts[1], parts[2], parts[3], parts[4],
                          int(parts[5]), int(parts[6]))
    return Fact.parse(text)


def format_formal(stmt) -> str:
    if isinstance(stmt, Fact):
        return str(stmt)
    return f"ratio {stmt.a} {stmt.b} {stmt.c} {stmt.d} {stmt.num} {stmt.den}"


def problem_to_record(problem: Problem) -> CorpusRecord:
    en = render_premise_text(problem.premise, "en")
    zh = render_premise_text(problem.premise, "zh")
    options = []
    for label, opt in zip("ABCD", problem.options):
        options.append(OptionRecord(
            label=label,
            text_en=render_statement(opt.statement, "en"),
            text_zh=render_statement(opt.statement, "zh"),
            formal=format_formal(opt.statement),
            is_answer=opt.truth))
    hist: dict[str, int] = {}
    for f in problem.premise.facts():
        hist[f.predicate] = hist.get(f.predicate, 0) + 1
    for opt in problem.options:
        key = opt.statement.predicate if isinstance(opt.statement, Fact) else "ratio"
        hist[key] = hist.get(key, 0) + 1
    return CorpusRecord(
        id=problem.problem_id,
        premise_dsl=problem.premise.text(),
        statement_en=en,
        statement_zh=zh,
        options=options,
        answer_key=list(problem.answer_key),
        difficulty_score=problem.difficulty_score,
        difficulty_band=problem.difficulty_band,
        proof_lengths=[opt.trace.proof_length for opt in problem.options
                       if opt.truth and opt.trace],
        figure_path="",
        relations_histogram=dict(sorted(hist.items())),
        indicators=list(problem.indicators.as_tuple()),
        seed=problem.seed,
        solution_length=problem.solution_length)


def record_to_problem(record: CorpusRecord) -> Problem:
    """Problem view of a corpus record (for rendering and verification)."""
    premise = parse_premise(record.premise_dsl)
    options = [Option(parse_formal(o.formal), o.is_answer, "stored")
               for o in record.options]
    ind = DifficultyIndicators(*(record.indicators or [0, 0, 0, 0, 0]))
    return Problem(record.id, premise, options, tuple(record.answer_key),
                   record.difficulty_score, ind, record.seed,
                   record.difficulty_band)


def _assemble_one(args: tuple) -> dict | None:
    row, cfg_dict = args
    cfg = PipelineConfig.from_dict(cfg_dict)
    if "error" in row:
        return None
    try:
        state, premise = restore_state(row, cfg)
        problem = assemble_problem(state, premise, cfg.forge_config(),
                                   f"q-{row['id']}", seed=cfg.seed,
                                   rules=state.rules)
    except (InsufficientConclusions, NoFalsifiableVariant,
            DegenerateAfterRetries, Unsatisfiable):
        return None
    if problem.solution_length < cfg.min_solution_length:
        return None
    return problem_to_record(problem).to_json()


def stage_assemble(rows: list[dict], cfg: PipelineConfig) -> list[CorpusRecord]:
    cfg_dict = {k: getattr(cfg, k) for k in PipelineConfig._FIELDS}
    tasks = [(row, cfg_dict) for row in rows]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            out = list(pool.map(_assemble_one, tasks, chunksize=2))
    else:
        out = [_assemble_one(t) for t in tasks]
    records = [CorpusRecord.from_json(o) for o in out if o is not None]
    records.sort(key=lambda r: r.id)
    if cfg.max_problems is not None:
        records = records[:cfg.max_problems]
    return records


def stage_render(records: list[CorpusRecord], cfg: PipelineConfig,
                 fig_dir: str) -> tuple[list[CorpusRecord], list[dict]]:
    """Render + verify each figure; only passing problems are kept."""
    os.makedirs(fig_dir, exist_ok=True)
    kept: list[CorpusRecord] = []
    reports: list[dict] = []
    for rec in records:
        problem = record_to_problem(rec)
        diagram = instantiate(problem.premise, seed=rec.seed)
        svg = render_diagram(problem, diagram)
        report = verify_render(problem, diagram, svg) if cfg.verify else None
        ok = report.passed if report else True
        reports.append({"id": rec.id, "pass": ok,
                        "violations": report.violations if report else []})
        if not ok:
            continue
        path = f"{rec.id}.svg"
        with open(os.path.join(fig_dir, path), "w", encoding="utf-8") as fh:
            fh.write(svg)
        rec.figure_path = path
        kept.append(rec)
    return kept, reports


def run_pipeline(cfg: PipelineConfig) -> dict:
    """Full pipeline; returns summary with stage counts and stats."""
    out = cfg.out_dir
    os.makedirs(out, exist_ok=True)

    premises = stage_sample(cfg)
    _write_jsonl(os.path.join(out, "premises.jsonl"), premises)

    closures = stage_saturate(premises, cfg)
    _write_jsonl(os.path.join(out, "closures.jsonl"), closures)

    records = stage_assemble(closures, cfg)
    kept, reports = stage_render(records, cfg, os.path.join(out, "figs"))
    _write_jsonl(os.path.join(out, "render_report.jsonl"), reports)

    stratify(kept, SplitSpec(tuple(cfg.split_ratios)))
    write_corpus(kept, os.path.join(out, "corpus.jsonl"))

    report = stats(kept)
    with open(os.path.join(out, "stats.json"), "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True, ensure_ascii=False)
    return {
        "premises": len(premises),
        "closures": len([c for c in closures if "error" not in c]),
        "assembled": len(records),
        "kept": len(kept),
        "stats": report,
    }


def _write_jsonl(path: str, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True, ensure_ascii=False) + "\n")


def read_jsonl(path: str) -> list[dict]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(json.loads(line))
    return out
