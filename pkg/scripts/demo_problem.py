"""Generate and print one worked problem end to end.

Usage: python scripts/demo_problem.py [--dsl "..."] [--seed 2]
"""
import argparse

from geoforge.engine import saturate
from geoforge.forge import ForgeConfig, assemble_problem
from geoforge.kernel import instantiate, parse_premise
from geoforge.render import render_diagram, render_text, verify_render

DEFAULT = ("a b c = triangle; e = midpoint e a b; f = midpoint f a c; "
           "g = midpoint g b c")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dsl", default=DEFAULT)
    ap.add_argument("--seed", type=int, default=2)
    ap.add_argument("--svg", default=None, help="write the figure here")
    args = ap.parse_args()

    premise = parse_premise(args.dsl)
    diagram = instantiate(premise, seed=args.seed)
    state = saturate(premise, diagram, max_level=8)
    print(f"closure: {len(state.facts)} facts at level {state.level}")
    problem = assemble_problem(state, premise, ForgeConfig(), "demo", seed=args.seed)
    en, options = render_text(problem, "en")
    zh, _ = render_text(problem, "zh")
    print(f"\n{en}\n{zh}\n")
    for label, (opt, text) in zip("ABCD", zip(problem.options, options)):
        marker = "*" if opt.truth else " "
        print(f" {marker} {label}. {text}")
    print(f"\nanswer key: {','.join(problem.answer_key)}   "
          f"difficulty {problem.difficulty_score:.2f}   "
          f"solution length {problem.solution_length}")
    fig = instantiate(problem.premise, seed=args.seed)
    svg = render_diagram(problem, fig)
    report = verify_render(problem, fig, svg)
    print(f"figure verification: {'pass' if report.passed else report.violations}")
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg)
        print(f"figure written to {args.svg}")


if __name__ == "__main__":
    main()
