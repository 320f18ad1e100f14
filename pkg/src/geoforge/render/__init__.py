from .diagram import render_diagram
from .text import render_clause, render_premise_text, render_statement, statement_points
from .verify import RenderReport, verify_render


def render_text(problem, lang: str) -> tuple[str, list[str]]:
    """Statement text plus the four option texts for one language."""
    statement = render_premise_text(problem.premise, lang)
    options = [render_statement(opt.statement, lang) for opt in problem.options]
    return statement, options


__all__ = [
    "RenderReport", "render_clause", "render_diagram", "render_premise_text",
    "render_statement", "render_text", "statement_points", "verify_render",
]
