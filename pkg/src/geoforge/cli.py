"""``forge`` command line: pipeline stages, evaluation, and the model runner."""
from __future__ import annotations

import argparse
import json
import os
import sys

from .dataset import SplitSpec, read_corpus, stats, stratify, write_corpus
from .errors import GeoForgeError
from .evalharness import (
    EndpointConfig,
    PredictionRecord,
    compute_metrics,
    format_table,
    random_baseline,
    run_model,
)
from .pipeline import (
    PipelineConfig,
    read_jsonl,
    run_pipeline,
    stage_assemble,
    stage_render,
    stage_sample,
    stage_saturate,
    _write_jsonl,
)


def _parse_seeds(text: str) -> tuple[int, ...]:
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(t) for t in text.split(",") if t)


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(","))


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in text.split(","))


def _base_config(args) -> PipelineConfig:
    if getattr(args, "config", None):
        cfg = PipelineConfig.load(args.config)
    else:
        cfg = PipelineConfig()
    for name in ("seed", "jobs", "max_level"):
        val = getattr(args, name, None)
        if val is not None:
            setattr(cfg, name, val)
    if getattr(args, "rules", None):
        cfg.rules_path = args.rules
    return cfg


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(prog="forge",
                                 description="geometry problem generation and evaluation")
    ap.add_argument("--config", help="pipeline config JSON")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--jobs", type=int, default=None)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("sample", help="sample premises into JSONL")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--schedule", type=_parse_ints, default=None)
    p.add_argument("--seeds", type=_parse_seeds, default=(0,))
    p.add_argument("--out", required=True)

    p = sub.add_parser("saturate", help="saturate premises into closures")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--rules", default=None)
    p.add_argument("--max-level", dest="max_level", type=int, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("assemble", help="assemble problems from closures")
    p.add_argument("--closures", required=True)
    p.add_argument("--weights", type=_parse_floats, default=None)
    p.add_argument("--key-dist", dest="key_dist", type=_parse_floats, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("render", help="render + verify figures")
    p.add_argument("--problems", required=True)
    p.add_argument("--out-dir", dest="out_dir", required=True)
    p.add_argument("--verify", action="store_true", default=True)

    p = sub.add_parser("split", help="assign difficulty bands 3:5:2")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--ratios", type=_parse_floats, default=(0.3, 0.5, 0.2))
    p.add_argument("--out", required=True)

    p = sub.add_parser("stats", help="corpus statistics")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("eval", help="score predictions against a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--preds", required=True)
    p.add_argument("--report", required=True)
    p.add_argument("--averaging", choices=("macro", "micro"), default="macro")

    p = sub.add_parser("run", help="query a model endpoint over a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--endpoint", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--api-key", default=os.environ.get("FORGE_API_KEY", ""))
    p.add_argument("--modality", choices=("text_only", "text_image"),
                   default="text_only")
    p.add_argument("--prompt", choices=("en", "zh"), default="en")
    p.add_argument("--figures", default=None)
    p.add_argument("--ledger", default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("baseline", help="random baseline metrics")
    p.add_argument("--corpus", required=True)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--law", choices=("uniform16", "uniform_nonempty",
                                     "always_empty", "both"), default="both")
    p.add_argument("--report", default=None)

    p = sub.add_parser("pipeline", help="run every stage end to end")
    p.add_argument("--out", default=None)

    args = ap.parse_args(argv)
    try:
        return _dispatch(args)
    except GeoForgeError as exc:
        print(f"forge {args.cmd}: error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    cfg = _base_config(args)
    cmd = args.cmd

    if cmd == "sample":
        cfg.max_depth = args.depth
        cfg.schedule = args.schedule
        cfg.seeds = args.seeds
        rows = stage_sample(cfg)
        _write_jsonl(args.out, rows)
        print(f"sample: {len(rows)} premises -> {args.out}")
        return 0

    if cmd == "saturate":
        rows = read_jsonl(args.inp)
        closures = stage_saturate(rows, cfg)
        _write_jsonl(args.out, closures)
        errs = sum(1 for c in closures if "error" in c)
        print(f"saturate: {len(closures) - errs} closures, {errs} failures -> {args.out}")
        return 0

    if cmd == "assemble":
        if args.weights:
            cfg.weights = args.weights
        if args.key_dist:
            cfg.key_dist = args.key_dist
        closures = read_jsonl(args.closures)
        records = stage_assemble(closures, cfg)
        write_corpus(records, args.out)
        print(f"assemble: {len(records)} problems -> {args.out}")
        return 0

    if cmd == "render":
        records = read_corpus(args.problems)
        kept, reports = stage_render(records, cfg, args.out_dir)
        _write_jsonl(os.path.join(args.out_dir, "render_report.jsonl"), reports)
        write_corpus(kept, args.problems)
        print(f"render: kept {len(kept)}/{len(records)} -> {args.out_dir}")
        return 0

    if cmd == "split":
        records = read_corpus(args.inp)
        stratify(records, SplitSpec(tuple(args.ratios)))
        write_corpus(records, args.out)
        print(f"split: {len(records)} records banded -> {args.out}")
        return 0

    if cmd == "stats":
        records = read_corpus(args.inp)
        report = stats(records)
        text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        print(text)
        return 0

    if cmd == "eval":
        corpus = read_corpus(args.corpus)
        preds = [PredictionRecord(
            problem_id=row["problem_id"], raw_text=row.get("raw_text", ""),
            predicted=tuple(row["predicted"]) if "predicted" in row else None,
            truncated=row.get("truncated", False))
            for row in read_jsonl(args.preds)]
        report = compute_metrics(preds, corpus, averaging=args.averaging)
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report.__dict__, fh, indent=2, sort_keys=True)
        print(format_table({"model": report}))
        return 0

    if cmd == "run":
        corpus = read_corpus(args.corpus)
        endpoint = EndpointConfig(base_url=args.endpoint, model=args.model,
                                  api_key=args.api_key)
        preds = run_model(endpoint, corpus, prompt_lang=args.prompt,
                          modality=args.modality, figure_dir=args.figures,
                          ledger_path=args.ledger, jobs=cfg.jobs or 1)
        rows = [{"problem_id": p.problem_id, "raw_text": p.raw_text,
                 "truncated": p.truncated} for p in preds]
        _write_jsonl(args.out, rows)
        print(f"run: {len(rows)} predictions -> {args.out}")
        return 0

    if cmd == "baseline":
        corpus = read_corpus(args.corpus)
        laws = ("uniform16", "uniform_nonempty") if args.law == "both" else (args.law,)
        reports = {law: random_baseline(corpus, args.trials, seed=cfg.seed, law=law)
                   for law in laws}
        print(format_table(reports))
        if len(reports) == 2:
            delta = (reports["uniform16"].em_all
                     - reports["uniform_nonempty"].em_all)
            print(f"EM difference (uniform16 - uniform_nonempty): {delta:+.2f} pp")
        if args.report:
            with open(args.report, "w", encoding="utf-8") as fh:
                json.dump({k: r.__dict__ for k, r in reports.items()}, fh,
                          indent=2, sort_keys=True)
        return 0

    if cmd == "pipeline":
        if args.out:
            cfg.out_dir = args.out
        summary = run_pipeline(cfg)
        print(json.dumps({k: v for k, v in summary.items() if k != "stats"},
                         indent=2, sort_keys=True))
        print(f"corpus: {os.path.join(cfg.out_dir, 'corpus.jsonl')}")
        return 0

    raise ValueError(f"unhandled command {cmd}")


if __name__ == "__main__":
    raise SystemExit(main())
