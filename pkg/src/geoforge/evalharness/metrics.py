"""Strict multi-answer metrics: exact match by split, option-level P/R/F1,
Hamming accuracy, selection cardinality, and the outcome typology."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UnknownProblemId
from .answers import NO_ANSWER, OUTCOMES, PredictionRecord

K_OPTIONS = 4


@dataclass
class MetricsReport:
    em_all: float = 0.0
    em_easy: float = 0.0
    em_medium: float = 0.0
    em_hard: float = 0.0
    precision: float = 0.0
    recall: float = 0.0
    f1: float = 0.0
    hamming_accuracy: float = 0.0
    hamming_loss: float = 0.0
    avg_selected: float = 0.0
    outcome_counts: dict[str, int] = field(default_factory=lambda: {o: 0 for o in OUTCOMES})
    n: int = 0
    n_by_band: dict[str, int] = field(default_factory=dict)

    def row(self) -> list[float]:
        return [self.em_all, self.em_easy, self.em_medium, self.em_hard,
                self.precision, self.recall, self.f1, self.hamming_accuracy,
                self.avg_selected]


class MetricsAccumulator:
    """Streaming per-problem accumulation; percentages on finalize."""

    def __init__(self, averaging: str = "macro",
                 count_no_answer_in_avg_sel: bool = False):
        if averaging not in ("macro", "micro"):
            raise ValueError("averaging is macro or micro")
        self.averaging = averaging
        self.count_no_answer = count_no_answer_in_avg_sel
        self.n = 0
        self.em = {"all": 0, "easy": 0, "medium": 0, "hard": 0}
        self.n_band = {"easy": 0, "medium": 0, "hard": 0}
        self.p_sum = self.r_sum = self.f_sum = 0.0
        self.inter = self.pred_total = self.key_total = 0
        self.hl_sum = 0.0
        self.sel_sum = 0
        self.sel_n = 0
        self.outcomes = {o: 0 for o in OUTCOMES}

    def add(self, predicted_labels: tuple[str, ...], no_answer: bool,
            truncated: bool, key: tuple[str, ...], band: str | None) -> None:
        self.n += 1
        pred = set() if no_answer else set(predicted_labels)
        true = set(key)
        if truncated:
            outcome = "out_of_length"
        elif no_answer:
            outcome = "no_answer"
        elif pred == true:
            outcome = "right_answer"
        else:
            outcome = "wrong_answer"
        self.outcomes[outcome] += 1
        exact = outcome == "right_answer"
        if exact:
            self.em["all"] += 1
        if band in self.n_band:
            self.n_band[band] += 1
            if exact:
                self.em[band] += 1
        inter = len(pred & true)
        p = inter / len(pred) if pred else 0.0
        r = inter / len(true) if true else 0.0
        f = 2 * p * r / (p + r) if (p + r) > 0 else 0.0
        self.p_sum += p
        self.r_sum += r
        self.f_sum += f
        self.inter += inter
        self.pred_total += len(pred)
        self.key_total += len(true)
        mism = len(pred ^ true)
        self.hl_sum += mism / K_OPTIONS
        if self.count_no_answer or not no_answer:
            self.sel_sum += len(pred)
            self.sel_n += 1

    def finalize(self) -> MetricsReport:
        rep = MetricsReport(n=self.n, n_by_band=dict(self.n_band),
                            outcome_counts=dict(self.outcomes))
        if self.n == 0:
            return rep
        rep.em_all = 100.0 * self.em["all"] / self.n
        for band in ("easy", "medium", "hard"):
            nb = self.n_band[band]
            setattr(rep, f"em_{band}", 100.0 * self.em[band] / nb if nb else 0.0)
        if self.averaging == "macro":
            rep.precision = 100.0 * self.p_sum / self.n
            rep.recall = 100.0 * self.r_sum / self.n
            rep.f1 = 100.0 * self.f_sum / self.n
        else:
            p = self.inter / self.pred_total if self.pred_total else 0.0
            r = self.inter / self.key_total if self.key_total else 0.0
            rep.precision = 100.0 * p
            rep.recall = 100.0 * r
            rep.f1 = 100.0 * (2 * p * r / (p + r)) if (p + r) > 0 else 0.0
        rep.hamming_loss = 100.0 * self.hl_sum / self.n
        rep.hamming_accuracy = 100.0 - rep.hamming_loss
        rep.avg_selected = self.sel_sum / self.sel_n if self.sel_n else 0.0
        return rep


def compute_metrics(predictions: list[PredictionRecord], corpus,
                    averaging: str = "macro",
                    count_no_answer_in_avg_sel: bool = False) -> MetricsReport:
    """Aggregate a prediction set against corpus records (by problem id)."""
    by_id = {rec.id: rec for rec in corpus}
    acc = MetricsAccumulator(averaging, count_no_answer_in_avg_sel)
    for pred in predictions:
        rec = by_id.get(pred.problem_id)
        if rec is None:
            raise UnknownProblemId(pred.problem_id)
        acc.add(pred.labels, pred.predicted == NO_ANSWER, pred.truncated,
                tuple(rec.answer_key), rec.difficulty_band)
    return acc.finalize()


def format_table(rows: dict[str, MetricsReport]) -> str:
    """Fixed-width console table (EM by split, P/R/F1, HA, Avg #Sel)."""
    header = (f"{'Model':<24s} {'EMA':>7s} {'EME':>7s} {'EMM':>7s} {'EMH':>7s} "
              f"{'P':>7s} {'R':>7s} {'F1':>7s} {'HA':>7s} {'Avg#Sel':>8s}")
    lines = [header, "-" * len(header)]
    for name, rep in rows.items():
        vals = rep.row()
        lines.append(f"{name:<24s} " + " ".join(f"{v:7.2f}" for v in vals[:8])
                     + f" {vals[8]:8.2f}")
    return "\n".join(lines)
