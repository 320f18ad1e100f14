import json
import os

import pytest

from geoforge.cli import main
from geoforge.dataset import read_corpus
from geoforge.errors import ConfigError
from geoforge.pipeline import PipelineConfig


def run(args):
    return main(args)


def test_sample_saturate_assemble_split_stats(tmp_path, capsys):
    prem = tmp_path / "premises.jsonl"
    assert run(["sample", "--depth", "2", "--schedule", "2,2",
                "--seeds", "0..2", "--out", str(prem)]) == 0
    assert prem.exists()
    clos = tmp_path / "closures.jsonl"
    assert run(["saturate", "--in", str(prem), "--out", str(clos)]) == 0
    probs = tmp_path / "problems.jsonl"
    assert run(["assemble", "--closures", str(clos), "--out", str(probs)]) == 0
    records = read_corpus(str(probs))
    assert records
    split = tmp_path / "banded.jsonl"
    assert run(["split", "--in", str(probs), "--out", str(split)]) == 0
    assert all(r.difficulty_band for r in read_corpus(str(split)))
    assert run(["stats", "--in", str(split)]) == 0
    out = capsys.readouterr().out
    assert "avg_proof_length" in out


def test_render_subcommand(tmp_path):
    prem = tmp_path / "p.jsonl"
    clos = tmp_path / "c.jsonl"
    probs = tmp_path / "q.jsonl"
    figs = tmp_path / "figs"
    run(["sample", "--depth", "2", "--schedule", "2,1", "--seeds", "0..1",
         "--out", str(prem)])
    run(["saturate", "--in", str(prem), "--out", str(clos)])
    run(["assemble", "--closures", str(clos), "--out", str(probs)])
    assert run(["render", "--problems", str(probs), "--out-dir", str(figs)]) == 0
    kept = read_corpus(str(probs))
    for rec in kept:
        assert (figs / rec.figure_path).exists()
    assert (figs / "render_report.jsonl").exists()


def test_eval_and_baseline_subcommands(tmp_path, capsys):
    prem, clos, probs = (tmp_path / n for n in ("p.jsonl", "c.jsonl", "q.jsonl"))
    run(["sample", "--depth", "2", "--schedule", "2,2", "--seeds", "0..3",
         "--out", str(prem)])
    run(["saturate", "--in", str(prem), "--out", str(clos)])
    run(["assemble", "--closures", str(clos), "--out", str(probs)])
    run(["split", "--in", str(probs), "--out", str(probs)])
    records = read_corpus(str(probs))
    preds = tmp_path / "preds.jsonl"
    with open(preds, "w") as fh:
        for rec in records:
            fh.write(json.dumps({"problem_id": rec.id,
                                 "raw_text": f"ANSWER: {','.join(rec.answer_key)}"})
                     + "\n")
    report = tmp_path / "report.json"
    assert run(["eval", "--corpus", str(probs), "--preds", str(preds),
                "--report", str(report)]) == 0
    rep = json.load(open(report))
    assert rep["em_all"] == 100.0
    capsys.readouterr()
    assert run(["baseline", "--corpus", str(probs), "--trials", "2000"]) == 0
    out = capsys.readouterr().out
    assert "uniform16" in out and "EM difference" in out


def test_pipeline_subcommand_and_exit_codes(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seeds": [0, 1], "max_depth": 2,
                               "schedule": [2, 1], "out_dir": str(tmp_path / "o")}))
    assert run(["--config", str(cfg), "pipeline"]) == 0
    assert (tmp_path / "o" / "corpus.jsonl").exists()
    assert (tmp_path / "o" / "stats.json").exists()


def test_unknown_config_key_rejected(tmp_path):
    with pytest.raises(ConfigError) as err:
        PipelineConfig.from_dict({"seeds": [0], "mysterious_knob": 3})
    assert "mysterious_knob" in str(err.value)


def test_nonzero_exit_on_bad_input(tmp_path, capsys):
    missing = tmp_path / "missing.jsonl"
    missing.write_text('{"schema": "wrong", "version": 9}\n')
    code = run(["stats", "--in", str(missing)])
    assert code == 1
    assert "error" in capsys.readouterr().err
