import re
import xml.etree.ElementTree as ET

import pytest

from geoforge.engine import saturate
from geoforge.errors import MissingTemplate
from geoforge.forge import ForgeConfig, assemble_problem
from geoforge.kernel import instantiate, parse_premise
from geoforge.render import (
    render_clause,
    render_diagram,
    render_premise_text,
    render_statement,
    render_text,
    statement_points,
    verify_render,
)
from geoforge.render.text import CLAUSE_EN, CLAUSE_ZH, PRED_EN, PRED_ZH
from geoforge.kernel.templates import TEMPLATES
from geoforge.kernel.dsl import Clause
from geoforge.kernel import Fact

from test_dsl import APPENDIX_PREMISE, TEMPLATE_FIXTURES


def _problem(dsl="a b c = triangle; e = midpoint e a b; f = midpoint f a c; "
                 "g = midpoint g b c", seed=2):
    premise = parse_premise(dsl)
    diagram = instantiate(premise, seed=seed)
    state = saturate(premise, diagram, max_level=8)
    prob = assemble_problem(state, premise, ForgeConfig(), "q-render", seed=seed)
    dgm = instantiate(prob.premise, seed=seed)
    return prob, dgm


def test_templates_cover_both_languages():
    assert set(CLAUSE_EN) == set(TEMPLATES)
    assert set(CLAUSE_ZH) == set(TEMPLATES)
    assert set(PRED_EN) == set(PRED_ZH)


def test_midpoint_clause_en_zh():
    clause = Clause("midpoint", ("m", "a", "b"))
    en = render_clause(clause, "en")
    zh = render_clause(clause, "zh")
    assert en == "M is the midpoint of segment AB"
    assert {"M", "A", "B"} <= set(re.findall(r"[A-Z]", zh))


def test_language_point_parity():
    prob, _ = _problem()
    en, en_opts = render_text(prob, "en")
    zh, zh_opts = render_text(prob, "zh")
    assert set(re.findall(r"\b[A-Z]\b", en)) == set(re.findall(r"[A-Z]", zh))
    assert len(en_opts) == len(zh_opts) == 4
    for e, z in zip(en_opts, zh_opts):
        assert set(re.findall(r"[A-Z]", e)) == set(re.findall(r"[A-Z]", z))


def test_missing_template_error():
    with pytest.raises(MissingTemplate):
        render_statement(Fact.make("sameside", ("a", "b", "c", "d", "e", "f")), "en")
    with pytest.raises(MissingTemplate):
        render_premise_text(parse_premise("a b = segment"), "fr")


def test_statement_token_count_matches_x1():
    prob, _ = _problem()
    en, _ = render_text(prob, "en")
    assert len(en.split()) == prob.indicators.x1


def test_triangle_svg_small_case():
    premise = parse_premise("a b c = triangle")
    diagram = instantiate(premise, seed=1)
    from geoforge.forge import Problem, DifficultyIndicators
    prob = Problem("q-tri", premise, [], (), 0.0,
                   DifficultyIndicators(0, 1, 3, 0, 0), 1)
    svg = render_diagram(prob, diagram)
    root = ET.fromstring(svg)
    labels = [el for el in root.iter() if el.get("class") == "label"]
    segs = [el for el in root.iter()
            if el.get("class") == "construction" and el.tag.endswith("line")]
    assert len(labels) == 3
    assert len(segs) == 3


def test_perp_option_gets_one_square_mark():
    prob, dgm = _problem("a c = segment; o = midpoint o a c; b = on_circle b o a")
    svg = render_diagram(prob, dgm)
    true_perps = [o for o in prob.options
                  if o.truth and isinstance(o.statement, Fact)
                  and o.statement.predicate == "perp"]
    marks = re.findall(r'class="mark mark-perp"', svg)
    assert len(marks) == len(true_perps)


def test_appendix_svg_parses_with_text_nodes():
    premise = parse_premise(APPENDIX_PREMISE)
    diagram = instantiate(premise, seed=0)
    from geoforge.forge import Problem, DifficultyIndicators
    prob = Problem("q-app", premise, [], (), 0.0,
                   DifficultyIndicators(0, 4, 6, 0, 0), 0)
    svg = render_diagram(prob, diagram)
    root = ET.fromstring(svg)
    texts = [el for el in root.iter() if el.tag.endswith("text")]
    assert len(texts) == len(premise.points)


def test_svg_determinism():
    prob, dgm = _problem()
    assert render_diagram(prob, dgm) == render_diagram(prob, dgm)


def test_verify_pass_on_clean_figure():
    prob, dgm = _problem()
    svg = render_diagram(prob, dgm)
    report = verify_render(prob, dgm, svg)
    assert report.passed and report.violations == []


def test_verify_flags_overlapping_labels():
    prob, dgm = _problem()
    svg = render_diagram(prob, dgm)
    # force two labels onto the same spot
    texts = re.findall(r'<text class="label"[^>]*>', svg)
    first = texts[0]
    x = re.search(r'x="([0-9.]+)"', first).group(1)
    y = re.search(r'y="([0-9.]+)"', first).group(1)
    second = texts[1]
    moved = re.sub(r'x="[0-9.]+"', f'x="{x}"', second)
    moved = re.sub(r'y="[0-9.]+"', f'y="{y}"', moved)
    bad = svg.replace(second, moved)
    report = verify_render(prob, dgm, bad)
    assert not report.readability_ok


def test_verify_flags_contradictory_perp_mark():
    prob, dgm = _problem()
    svg = render_diagram(prob, dgm)
    pts = list(dgm.coords)
    fake = (f'<line class="mark mark-perp" data-kind="perp" '
            f'data-args="{pts[0]},{pts[1]},{pts[0]},{pts[2]}" '
            f'x1="0" y1="0" x2="1" y2="1" stroke="#c60"/>')
    bad = svg.replace('<g class="annotations">', '<g class="annotations">' + fake)
    report = verify_render(prob, dgm, bad)
    assert not report.alignment_ok


def test_render_every_template_fixture():
    from geoforge.forge import Problem, DifficultyIndicators
    for name, dsl in sorted(TEMPLATE_FIXTURES.items()):
        premise = parse_premise(dsl)
        diagram = instantiate(premise, seed=6)
        prob = Problem(f"q-{name}", premise, [], (), 0.0,
                       DifficultyIndicators(0, 0, 0, 0, 0), 6)
        svg = render_diagram(prob, diagram)
        ET.fromstring(svg)
        en = render_premise_text(premise, "en")
        zh = render_premise_text(premise, "zh")
        assert en and zh
