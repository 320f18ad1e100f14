"""Build a small desk-scale corpus and print its statistics.

Usage: python scripts/build_desk_corpus.py --out out_desk --seeds 12 [--depth 8]
"""
import argparse
import json

from geoforge.pipeline import PipelineConfig, run_pipeline


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="out_desk")
    ap.add_argument("--seeds", type=int, default=12)
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument("--jobs", type=int, default=2)
    ap.add_argument("--min-solution-length", type=int, default=0)
    args = ap.parse_args()

    cfg = PipelineConfig.from_dict({
        "seed": 0,
        "seeds": list(range(args.seeds)),
        "max_depth": args.depth,
        "schedule": None,
        "out_dir": args.out,
        "jobs": args.jobs,
        "min_solution_length": args.min_solution_length,
    })
    summary = run_pipeline(cfg)
    print(json.dumps({k: v for k, v in summary.items() if k != "stats"}, indent=2))
    stats = summary["stats"]
    print(f"problems: {stats['total_problems']}")
    print(f"avg solution length: {stats['avg_proof_length']:.2f} "
          f"(reference {stats['reference_avg_proof_length']})")
    print(f"avg description length: {stats['avg_description_length']:.2f} "
          f"(reference {stats['reference_avg_description_length']})")
    print(f"bands: {stats['difficulty_bands']}")
    print(f"relations: {stats['relations']}")


if __name__ == "__main__":
    main()
