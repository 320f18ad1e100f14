from .answers import NO_ANSWER, OUTCOMES, PredictionRecord, classify_outcome, parse_answer
from .baseline import LAWS, draw_subset, random_baseline
from .metrics import MetricsAccumulator, MetricsReport, compute_metrics, format_table
from .prompts import build_prompt
from .runner import EndpointConfig, query_one, run_model

__all__ = [
    "NO_ANSWER", "OUTCOMES", "PredictionRecord", "classify_outcome", "parse_answer",
    "LAWS", "draw_subset", "random_baseline",
    "MetricsAccumulator", "MetricsReport", "compute_metrics", "format_table",
    "build_prompt", "EndpointConfig", "query_one", "run_model",
]
