from .dsl import Clause, Construction, Premise, parse_premise, serialize_premise
from .diagram import Diagram, instantiate, check_fact, fact_residual, MARGIN
from .facts import Fact, TOL_FALSE, TOL_TRUE, residual, variants
from .templates import TEMPLATES, SEED_TEMPLATES, catalog_table

__all__ = [
    "Clause", "Construction", "Premise", "parse_premise", "serialize_premise",
    "Diagram", "instantiate", "check_fact", "fact_residual", "MARGIN",
    "Fact", "TOL_FALSE", "TOL_TRUE", "residual", "variants",
    "TEMPLATES", "SEED_TEMPLATES", "catalog_table",
]
