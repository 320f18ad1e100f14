import json
import random

import pytest

from geoforge.dataset import (
    CorpusRecord,
    OptionRecord,
    SplitSpec,
    read_corpus,
    split_counts,
    stats,
    stratify,
    write_corpus,
)
from geoforge.errors import MalformedLine, SchemaMismatch


def _rec(i, score, band=None, hist=None, pls=None):
    return CorpusRecord(
        id=f"q{i:05d}", premise_dsl="a b = segment",
        statement_en="In the figure, AB is a segment.",
        statement_zh="如图，AB是一条线段。",
        options=[OptionRecord("A", "x", "x", "cong a b a b", True)],
        answer_key=["A"], difficulty_score=score, difficulty_band=band,
        proof_lengths=pls or [2], figure_path="fig.svg",
        relations_histogram=hist or {"cong": 1}, solution_length=(pls or [2])[0])


def test_stratify_ten_records():
    recs = [_rec(i, float(i)) for i in range(10)]
    stratify(recs)
    bands = [r.difficulty_band for r in sorted(recs, key=lambda r: r.difficulty_score)]
    assert bands == ["easy"] * 3 + ["medium"] * 5 + ["hard"] * 2


def test_stratify_published_counts():
    n = 90279
    assert split_counts(n) == (27083, 45140, 18056)
    rng = random.Random(0)
    recs = [_rec(i, rng.random()) for i in range(n)]
    stratify(recs)
    counts = {b: 0 for b in ("easy", "medium", "hard")}
    for r in recs:
        counts[r.difficulty_band] += 1
    assert counts == {"easy": 27083, "medium": 45140, "hard": 18056}


def test_stratify_all_equal_scores_deterministic():
    recs = [_rec(i, 1.0) for i in range(10)]
    stratify(recs)
    first = [r.difficulty_band for r in recs]
    recs2 = [_rec(i, 1.0) for i in range(10)]
    stratify(recs2)
    assert [r.difficulty_band for r in recs2] == first
    assert first.count("easy") == 3 and first.count("medium") == 5


def test_band_monotonicity():
    rng = random.Random(4)
    recs = [_rec(i, rng.uniform(0, 50)) for i in range(137)]
    stratify(recs)
    easy = [r.difficulty_score for r in recs if r.difficulty_band == "easy"]
    med = [r.difficulty_score for r in recs if r.difficulty_band == "medium"]
    hard = [r.difficulty_score for r in recs if r.difficulty_band == "hard"]
    assert max(easy) <= min(med) and max(med) <= min(hard)


def test_split_spec_validation():
    with pytest.raises(ValueError):
        SplitSpec((0.4, 0.4, 0.4))


def test_stats_empty_corpus():
    report = stats([])
    assert report["total_problems"] == 0
    assert all(v == 0 for v in report["relations"].values())
    assert report["avg_proof_length"] == 0.0


def test_stats_recount_oracle():
    rng = random.Random(1)
    preds = ["cong", "para", "perp", "coll", "cyclic", "circle", "midp",
             "eqangle", "eqratio", "ratio"]
    recs = []
    for i in range(300):
        hist = {p: rng.randrange(0, 4) for p in rng.sample(preds, 4)}
        recs.append(_rec(i, float(i), hist=hist, pls=[rng.randrange(1, 9)]))
    report = stats(recs)
    # independent recount
    count = {"equality": 0, "parallel": 0, "vertical": 0, "collinear": 0,
             "circle_related": 0, "others": 0}
    mapping = {"cong": "equality", "midp": "equality", "para": "parallel",
               "perp": "vertical", "coll": "collinear",
               "cyclic": "circle_related", "circle": "circle_related"}
    for r in recs:
        for p, n in r.relations_histogram.items():
            count[mapping.get(p, "others")] += n
    assert report["relations"] == count
    assert report["total_relations"] == sum(count.values())


def test_stats_reports_reference_deltas():
    report = stats([_rec(0, 1.0, pls=[16])])
    assert report["reference_avg_proof_length"] == 16.72
    assert report["reference_avg_description_length"] == 39.15
    assert abs(report["delta_avg_proof_length"] - (16 - 16.72)) < 1e-9


def test_roundtrip(tmp_path):
    recs = [_rec(i, float(i), band="easy") for i in range(100)]
    path = tmp_path / "corpus.jsonl"
    write_corpus(recs, str(path))
    back = read_corpus(str(path))
    assert back == recs


def test_malformed_line(tmp_path):
    recs = [_rec(0, 1.0)]
    path = tmp_path / "corpus.jsonl"
    write_corpus(recs, str(path))
    with open(path, "a", encoding="utf-8") as fh:
        fh.write('{"id": "q-trunc", "premise_dsl": ')
    with pytest.raises(MalformedLine) as err:
        read_corpus(str(path))
    assert err.value.line_number == 3


def test_schema_mismatch(tmp_path):
    path = tmp_path / "corpus.jsonl"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps({"schema": "geoforge-corpus", "version": 2}) + "\n")
    with pytest.raises(SchemaMismatch) as err:
        read_corpus(str(path))
    assert "1" in str(err.value) and "2" in str(err.value)


def test_coverage_fields():
    recs = [_rec(i, float(i)) for i in range(5)]
    report = stats(recs)
    assert report["coverage"] == {"image": 1.0, "solution": 1.0, "en": 1.0, "zh": 1.0}
