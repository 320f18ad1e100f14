"""Corpus persistence, difficulty stratification, and corpus statistics.

The corpus is JSONL: a schema-version header line followed by one record
per problem, sorted by id.  Difficulty bands are assigned by global score
quantiles at the 30th and 80th percentiles so any corpus splits 3:5:2.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

from .errors import MalformedLine, SchemaMismatch

SCHEMA_NAME = "geoforge-corpus"
SCHEMA_VERSION = 1

BANDS = ("easy", "medium", "hard")
SPLIT_RATIOS = (0.3, 0.5, 0.2)

# Table-style relation taxonomy used by corpus statistics.
RELATION_CATEGORIES = {
    "cong": "equality",
    "midp": "equality",
    "para": "parallel",
    "perp": "vertical",
    "coll": "collinear",
    "cyclic": "circle_related",
    "circle": "circle_related",
}
OTHER_CATEGORY = "others"
CATEGORY_ORDER = ("equality", "parallel", "vertical", "collinear",
                  "circle_related", "others")

# published reference values, reported as informational deltas by stats()
REFERENCE_AVG_PROOF_LENGTH = 16.72
REFERENCE_AVG_DESCRIPTION_LENGTH = 39.15


@dataclass
class OptionRecord:
    label: str
    text_en: str
    text_zh: str
    formal: str
    is_answer: bool


@dataclass
class CorpusRecord:
    id: str
    premise_dsl: str
    statement_en: str
    statement_zh: str
    options: list[OptionRecord]
    answer_key: list[str]
    difficulty_score: float
    difficulty_band: str | None
    proof_lengths: list[int]
    figure_path: str
    relations_histogram: dict[str, int] = field(default_factory=dict)
    indicators: list[int] = field(default_factory=list)
    seed: int = 0
    solution_length: int = 0

    def to_json(self) -> dict:
        return asdict(self)

    @staticmethod
    def from_json(obj: dict) -> "CorpusRecord":
        opts = [OptionRecord(**o) for o in obj.pop("options")]
        return CorpusRecord(options=opts, **obj)


@dataclass
class SplitSpec:
    ratios: tuple[float, float, float] = SPLIT_RATIOS

    def __post_init__(self):
        if abs(sum(self.ratios) - 1.0) > 1e-9:
            raise ValueError("split ratios must sum to 1")


def stratify(records: list[CorpusRecord], spec: SplitSpec | None = None
             ) -> list[CorpusRecord]:
    """Assign difficulty bands by score quantiles (ties broken by id)."""
    spec = spec or SplitSpec()
    order = sorted(range(len(records)),
                   key=lambda i: (records[i].difficulty_score, records[i].id))
    n = len(records)
    cut1 = math.floor(spec.ratios[0] * n)
    cut2 = math.floor((spec.ratios[0] + spec.ratios[1]) * n)
    for rank, idx in enumerate(order):
        records[idx].difficulty_band = (
            "easy" if rank < cut1 else "medium" if rank < cut2 else "hard")
    return records


def split_counts(n: int, spec: SplitSpec | None = None) -> tuple[int, int, int]:
    spec = spec or SplitSpec()
    cut1 = math.floor(spec.ratios[0] * n)
    cut2 = math.floor((spec.ratios[0] + spec.ratios[1]) * n)
    return (cut1, cut2 - cut1, n - cut2)


def stats(records: list[CorpusRecord]) -> dict:
    """Relation-category histogram plus proof/description length summaries."""
    categories = {c: 0 for c in CATEGORY_ORDER}
    total_relations = 0
    proof_lengths: list[int] = []
    solution_lengths: list[int] = []
    statement_lengths: list[int] = []
    band_counts = {b: 0 for b in BANDS}
    key_sizes: list[int] = []
    for rec in records:
        for pred in rec.relations_histogram:
            categories[RELATION_CATEGORIES.get(pred, OTHER_CATEGORY)] += \
                rec.relations_histogram[pred]
            total_relations += rec.relations_histogram[pred]
        proof_lengths.extend(rec.proof_lengths)
        solution_lengths.append(rec.solution_length or max(rec.proof_lengths, default=0))
        statement_lengths.append(len(rec.statement_en.split()))
        if rec.difficulty_band:
            band_counts[rec.difficulty_band] += 1
        key_sizes.append(len(rec.answer_key))
    avg_pl = (sum(solution_lengths) / len(solution_lengths)) if solution_lengths else 0.0
    avg_dl = sum(statement_lengths) / len(statement_lengths) if statement_lengths else 0.0
    return {
        "total_problems": len(records),
        "relations": categories,
        "total_relations": total_relations,
        "difficulty_bands": band_counts,
        "avg_proof_length": avg_pl,
        "max_proof_length": max(solution_lengths, default=0),
        "proof_length_distribution": _hist(solution_lengths),
        "avg_option_proof_length": (sum(proof_lengths) / len(proof_lengths)) if proof_lengths else 0.0,
        "option_proof_length_distribution": _hist(proof_lengths),
        "avg_description_length": avg_dl,
        "avg_answer_key_size": (sum(key_sizes) / len(key_sizes)) if key_sizes else 0.0,
        "reference_avg_proof_length": REFERENCE_AVG_PROOF_LENGTH,
        "reference_avg_description_length": REFERENCE_AVG_DESCRIPTION_LENGTH,
        "delta_avg_proof_length": avg_pl - REFERENCE_AVG_PROOF_LENGTH,
        "delta_avg_description_length": avg_dl - REFERENCE_AVG_DESCRIPTION_LENGTH,
        "coverage": _coverage(records),
    }


def _hist(values: list[int]) -> dict[str, int]:
    out: dict[str, int] = {}
    for v in sorted(values):
        out[str(v)] = out.get(str(v), 0) + 1
    return out


def _coverage(records: list[CorpusRecord]) -> dict[str, float]:
    n = len(records) or 1
    return {
        "image": sum(1 for r in records if r.figure_path) / n,
        "solution": sum(1 for r in records if r.proof_lengths) / n,
        "en": sum(1 for r in records if r.statement_en) / n,
        "zh": sum(1 for r in records if r.statement_zh) / n,
    }


def write_corpus(records: list[CorpusRecord], path: str) -> None:
    header = {"schema": SCHEMA_NAME, "version": SCHEMA_VERSION}
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, sort_keys=True, ensure_ascii=False) + "\n")
        for rec in sorted(records, key=lambda r: r.id):
            fh.write(json.dumps(rec.to_json(), sort_keys=True, ensure_ascii=False) + "\n")


def read_corpus(path: str) -> list[CorpusRecord]:
    records: list[CorpusRecord] = []
    header_seen = False
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedLine(f"invalid JSON: {exc}", ln)
            if not header_seen:
                header_seen = True
                if obj.get("schema") != SCHEMA_NAME or obj.get("version") != SCHEMA_VERSION:
                    raise SchemaMismatch(
                        f"expected {SCHEMA_NAME} v{SCHEMA_VERSION}, "
                        f"found {obj.get('schema')} v{obj.get('version')}")
                continue
            try:
                records.append(CorpusRecord.from_json(obj))
            except (KeyError, TypeError) as exc:
                raise MalformedLine(f"bad record: {exc}", ln)
    return records
