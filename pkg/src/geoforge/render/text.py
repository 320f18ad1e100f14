"""Rule-based bilingual rendering of premises and option statements.

Every clause template and every option predicate has one English and one
Chinese pattern; point symbols stay Latin letters (uppercased for display)
in both languages, so the two renderings always mention identical points.
"""
from __future__ import annotations

from ..errors import MissingTemplate
from ..kernel.dsl import Clause, Premise
from ..kernel.facts import Fact

LANGS = ("en", "zh")

# clause patterns keyed by template name; slots follow the template slot order
CLAUSE_EN = {
    "triangle": "{0}, {1} and {2} form a triangle",
    "iso_triangle": "triangle {0}{1}{2} is isosceles with {0}{1} = {0}{2}",
    "ieq_triangle": "triangle {0}{1}{2} is equilateral",
    "r_triangle": "triangle {0}{1}{2} has a right angle at {0}",
    "risos": "triangle {0}{1}{2} is right isosceles with the right angle at {0}",
    "segment": "{0}{1} is a segment",
    "isquare": "{0}{1}{2}{3} is a square",
    "rectangle": "{0}{1}{2}{3} is a rectangle",
    "trapezoid": "{0}{1}{2}{3} is a trapezoid with {0}{1} parallel to {2}{3}",
    "r_trapezoid": "{0}{1}{2}{3} is a right trapezoid with {0}{1} parallel to {2}{3} and {0}{3} perpendicular to {0}{1}",
    "eq_trapezoid": "{0}{1}{2}{3} is an isosceles trapezoid with {0}{1} parallel to {2}{3} and {0}{3} = {1}{2}",
    "eq_quadrangle": "quadrilateral {0}{1}{2}{3} has {0}{3} = {1}{2}",
    "eqdia_quadrangle": "quadrilateral {0}{1}{2}{3} has equal diagonals {0}{2} = {1}{3}",
    "midpoint": "{0} is the midpoint of segment {1}{2}",
    "mirror": "{0} is the reflection of {1} through {2}",
    "foot": "{0} is the foot of the perpendicular from {1} to line {2}{3}",
    "circle": "{0} is the circumcenter of triangle {1}{2}{3}",
    "centroid": "{0}, {1}, {2} are the midpoints of {5}{6}, {6}{4}, {4}{5} and {3} is the centroid of triangle {4}{5}{6}",
    "incenter": "{0} is the incenter of triangle {1}{2}{3}",
    "excenter": "{0} is the excenter of triangle {1}{2}{3} opposite {1}",
    "orthocenter": "{0} is the orthocenter of triangle {1}{2}{3}",
    "ninepoints": "{0}, {1}, {2} are the midpoints of {5}{6}, {6}{4}, {4}{5} and {3} is the center of the circle through them",
    "eq_triangle": "triangle {0}{1}{2} is equilateral",
    "nsquare": "{0}{1} = {1}{2} and {0}{1} is perpendicular to {1}{2}",
    "parallelogram": "{1}{2}{3}{0} is a parallelogram",
    "shift": "{0}{1} = {2}{3} and {0}{2} = {1}{3}",
    "square": "{2}{3}{0}{1} is a square",
    "tangent": "{0} and {1} are the tangent touch points from {2} to the circle centered at {3} through {4}",
    "intersection_ll": "{0} is the intersection of lines {1}{2} and {3}{4}",
    "intersection_lp": "{0} is the intersection of line {1}{2} with the line through {3} parallel to {4}{5}",
    "intersection_lt": "{0} is the intersection of line {1}{2} with the line through {3} perpendicular to {4}{5}",
    "intersection_pp": "{0}{1} is parallel to {2}{3} and {0}{4} is parallel to {5}{6}",
    "intersection_tt": "{0}{1} is perpendicular to {2}{3} and {0}{4} is perpendicular to {5}{6}",
    "intersection_lc": "{0} is the second intersection of line {1}{3} with the circle centered at {2} through {3}",
    "reflect": "{0} is the reflection of {1} across line {2}{3}",
    "eqangle2": "angle {2}{1}{0} equals angle {0}{3}{2}",
    "eqangle3": "{0} sees segment {1}{2} under an angle equal to angle {4}{3}{5}",
    "s_angle": "angle {1}{2}{0} equals {3} degrees",
    "angle_bisector": "{0} lies on the bisector of angle {1}{2}{3}",
    "angle_mirror": "{2}{3} bisects angle {1}{2}{0}",
    "on_aline": "angle {0}{1}{2} equals angle {3}{4}{5}",
    "on_bline": "{0} lies on the perpendicular bisector of {1}{2}",
    "on_circle": "{0} lies on the circle centered at {1} through {2}",
    "on_circum": "{0} lies on the circle through {1}, {2} and {3}",
    "on_dia": "{0} sees segment {1}{2} under a right angle",
    "on_line": "{0} lies on line {1}{2}",
    "on_pline": "{0}{1} is parallel to {2}{3}",
    "on_tline": "{0}{1} is perpendicular to {2}{3}",
    "lc_tangent": "line {1}{0} is tangent at {1} to the circle centered at {2}",
    "eqdistance": "{0}{1} = {2}{3}",
}

CLAUSE_ZH = {
    "triangle": "{0}、{1}、{2}构成三角形",
    "iso_triangle": "三角形{0}{1}{2}是等腰三角形，{0}{1}＝{0}{2}",
    "ieq_triangle": "三角形{0}{1}{2}是等边三角形",
    "r_triangle": "三角形{0}{1}{2}在{0}处为直角",
    "risos": "三角形{0}{1}{2}是等腰直角三角形，直角在{0}处",
    "segment": "{0}{1}是一条线段",
    "isquare": "{0}{1}{2}{3}是正方形",
    "rectangle": "{0}{1}{2}{3}是矩形",
    "trapezoid": "{0}{1}{2}{3}是梯形，{0}{1}平行于{2}{3}",
    "r_trapezoid": "{0}{1}{2}{3}是直角梯形，{0}{1}平行于{2}{3}且{0}{3}垂直于{0}{1}",
    "eq_trapezoid": "{0}{1}{2}{3}是等腰梯形，{0}{1}平行于{2}{3}且{0}{3}＝{1}{2}",
    "eq_quadrangle": "四边形{0}{1}{2}{3}满足{0}{3}＝{1}{2}",
    "eqdia_quadrangle": "四边形{0}{1}{2}{3}的对角线相等，{0}{2}＝{1}{3}",
    "midpoint": "{0}是线段{1}{2}的中点",
    "mirror": "{0}是{1}关于{2}的对称点",
    "foot": "{0}是{1}到直线{2}{3}的垂足",
    "circle": "{0}是三角形{1}{2}{3}的外心",
    "centroid": "{0}、{1}、{2}分别是{5}{6}、{6}{4}、{4}{5}的中点，{3}是三角形{4}{5}{6}的重心",
    "incenter": "{0}是三角形{1}{2}{3}的内心",
    "excenter": "{0}是三角形{1}{2}{3}对应顶点{1}的旁心",
    "orthocenter": "{0}是三角形{1}{2}{3}的垂心",
    "ninepoints": "{0}、{1}、{2}分别是{5}{6}、{6}{4}、{4}{5}的中点，{3}是过这三点的圆的圆心",
    "eq_triangle": "三角形{0}{1}{2}是等边三角形",
    "nsquare": "{0}{1}＝{1}{2}且{0}{1}垂直于{1}{2}",
    "parallelogram": "{1}{2}{3}{0}是平行四边形",
    "shift": "{0}{1}＝{2}{3}且{0}{2}＝{1}{3}",
    "square": "{2}{3}{0}{1}是正方形",
    "tangent": "{0}、{1}是从{2}向以{3}为圆心、过{4}的圆所作切线的切点",
    "intersection_ll": "{0}是直线{1}{2}与直线{3}{4}的交点",
    "intersection_lp": "{0}是直线{1}{2}与过{3}且平行于{4}{5}的直线的交点",
    "intersection_lt": "{0}是直线{1}{2}与过{3}且垂直于{4}{5}的直线的交点",
    "intersection_pp": "{0}{1}平行于{2}{3}且{0}{4}平行于{5}{6}",
    "intersection_tt": "{0}{1}垂直于{2}{3}且{0}{4}垂直于{5}{6}",
    "intersection_lc": "{0}是直线{1}{3}与以{2}为圆心、过{3}的圆的另一个交点",
    "reflect": "{0}是{1}关于直线{2}{3}的对称点",
    "eqangle2": "角{2}{1}{0}等于角{0}{3}{2}",
    "eqangle3": "{0}对线段{1}{2}所张的角等于角{4}{3}{5}",
    "s_angle": "角{1}{2}{0}等于{3}度",
    "angle_bisector": "{0}在角{1}{2}{3}的平分线上",
    "angle_mirror": "{2}{3}平分角{1}{2}{0}",
    "on_aline": "角{0}{1}{2}等于角{3}{4}{5}",
    "on_bline": "{0}在线段{1}{2}的垂直平分线上",
    "on_circle": "{0}在以{1}为圆心、过{2}的圆上",
    "on_circum": "{0}在过{1}、{2}、{3}的圆上",
    "on_dia": "{0}对线段{1}{2}所张的角为直角",
    "on_line": "{0}在直线{1}{2}上",
    "on_pline": "{0}{1}平行于{2}{3}",
    "on_tline": "{0}{1}垂直于{2}{3}",
    "lc_tangent": "直线{1}{0}在{1}处与以{2}为圆心的圆相切",
    "eqdistance": "{0}{1}＝{2}{3}",
}

PRED_EN = {
    "coll": "{0}, {1} and {2} are collinear",
    "para": "{0}{1} is parallel to {2}{3}",
    "perp": "{0}{1} is perpendicular to {2}{3}",
    "cong": "{0}{1} = {2}{3}",
    "cyclic": "{0}, {1}, {2} and {3} lie on one circle",
    "midp": "{0} is the midpoint of {1}{2}",
    "circle": "{0} is the center of the circle through {1}, {2} and {3}",
    "eqangle": "the angle between {0}{1} and {2}{3} equals the angle between {4}{5} and {6}{7}",
    "eqratio": "{0}{1} : {2}{3} = {4}{5} : {6}{7}",
    "eqratio3": "{4}{0} : {4}{2} = {5}{1} : {5}{3} = {0}{1} : {2}{3}",
}

PRED_ZH = {
    "coll": "{0}、{1}、{2}三点共线",
    "para": "{0}{1}平行于{2}{3}",
    "perp": "{0}{1}垂直于{2}{3}",
    "cong": "{0}{1}＝{2}{3}",
    "cyclic": "{0}、{1}、{2}、{3}四点共圆",
    "midp": "{0}是{1}{2}的中点",
    "circle": "{0}是过{1}、{2}、{3}的圆的圆心",
    "eqangle": "{0}{1}与{2}{3}的夹角等于{4}{5}与{6}{7}的夹角",
    "eqratio": "{0}{1}：{2}{3}＝{4}{5}：{6}{7}",
    "eqratio3": "{4}{0}：{4}{2}＝{5}{1}：{5}{3}＝{0}{1}：{2}{3}",
}

RATIO_EN = "{0}{1} = {k} · {2}{3}"
RATIO_ZH = "{0}{1}＝{k}·{2}{3}"


def _check_lang(lang: str) -> str:
    lang = lang.lower()
    if lang not in LANGS:
        raise MissingTemplate(f"unsupported language {lang!r}")
    return lang


def render_clause(clause: Clause, lang: str) -> str:
    lang = _check_lang(lang)
    table = CLAUSE_EN if lang == "en" else CLAUSE_ZH
    pattern = table.get(clause.relation)
    if pattern is None:
        raise MissingTemplate(f"no {lang} template for clause {clause.relation!r}")
    slots = [a.upper() for a in clause.args]
    slots += [_fmt_deg(v) for v in clause.numeric_params]
    return pattern.format(*slots)


def render_statement(stmt, lang: str) -> str:
    """Text for an option statement (a Fact or a RatioClaim-like object)."""
    lang = _check_lang(lang)
    if isinstance(stmt, Fact):
        table = PRED_EN if lang == "en" else PRED_ZH
        pattern = table.get(stmt.predicate)
        if pattern is None:
            raise MissingTemplate(f"no {lang} template for predicate {stmt.predicate!r}")
        return pattern.format(*[a.upper() for a in stmt.args])
    # ratio claim: claimed  seg1 = (num/den) * seg2
    pattern = RATIO_EN if lang == "en" else RATIO_ZH
    k = f"{stmt.num}/{stmt.den}" if stmt.den != 1 else str(stmt.num)
    return pattern.format(*[a.upper() for a in (stmt.a, stmt.b, stmt.c, stmt.d)], k=k)


def render_premise_text(premise: Premise, lang: str) -> str:
    lang = _check_lang(lang)
    parts = []
    for con in premise.constructions:
        for clause in con.clauses:
            parts.append(render_clause(clause, lang))
    if lang == "en":
        return "In the figure, " + "; ".join(parts) + "."
    return "如图，" + "；".join(parts) + "。"


def statement_points(stmt) -> tuple[str, ...]:
    if isinstance(stmt, Fact):
        return tuple(dict.fromkeys(stmt.args))
    return tuple(dict.fromkeys((stmt.a, stmt.b, stmt.c, stmt.d)))


def _fmt_deg(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else str(v)
