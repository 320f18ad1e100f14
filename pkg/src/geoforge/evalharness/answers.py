"""Extracting committed answer sets from raw model output."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

NO_ANSWER = "NO_ANSWER"
LABELS = ("A", "B", "C", "D")

OUTCOMES = ("right_answer", "wrong_answer", "no_answer", "out_of_length")

_ANSWER_LINE = re.compile(r"ANSWER\s*[::]\s*([^\n]*)", re.IGNORECASE)
_LABEL_SEQ = r"[A-Da-d]\b(?:\s*(?:[,;/&、]|and|or|和|与)\s*[A-Da-d]\b)*"
_FINAL_PHRASE = re.compile(
    r"(?:final answer|answer is|answers are|correct options? (?:is|are)"
    r"|答案是|答案为|正确选项是)"
    r"\W{0,12}(" + _LABEL_SEQ + ")", re.IGNORECASE)
_BARE_SET_LINE = re.compile(r"^[\s,;/&和、与]*([A-Da-d][A-Da-d\s,;/&和、与]*)$")


@dataclass
class PredictionRecord:
    problem_id: str
    raw_text: str = ""
    predicted: tuple[str, ...] | str | None = None   # labels or NO_ANSWER
    truncated: bool = False
    latency_s: float | None = None
    prompt_tokens: int | None = None
    completion_tokens: int | None = None

    def __post_init__(self):
        if self.predicted is None:
            self.predicted = parse_answer(self.raw_text)
        elif isinstance(self.predicted, (list, tuple)):
            self.predicted = _clean(" ".join(self.predicted))

    @property
    def labels(self) -> tuple[str, ...]:
        return () if self.predicted == NO_ANSWER else tuple(self.predicted)


def _clean(chunk: str) -> tuple[str, ...] | str:
    # only standalone label runs count ("B and D" must not contribute "a"/"d")
    chunk = re.sub(r"[和、与/;&]", ",", chunk)
    labels: set[str] = set()
    for token in re.findall(r"\b[A-Da-d]+\b", chunk):
        labels.update(c.upper() for c in token)
    return tuple(sorted(labels)) if labels else NO_ANSWER


def parse_answer(raw_text: str):
    """Final committed label subset, or NO_ANSWER.

    Layered: the last explicit ``ANSWER: ...`` line wins; then the last
    answer-announcing phrase; then the last line consisting only of labels
    and separators.  Labels are deduplicated and sorted.
    """
    if not raw_text:
        return NO_ANSWER
    hits = _ANSWER_LINE.findall(raw_text)
    if hits:
        return _clean(hits[-1])
    hits = _FINAL_PHRASE.findall(raw_text)
    if hits:
        return _clean(hits[-1])
    for line in reversed(raw_text.splitlines()):
        if not line.strip():
            continue
        m = _BARE_SET_LINE.match(line.strip())
        if m:
            return _clean(m.group(1))
    return NO_ANSWER


def classify_outcome(prediction: PredictionRecord, answer_key) -> str:
    """Exactly one of right_answer / wrong_answer / no_answer / out_of_length."""
    if prediction.truncated:
        return "out_of_length"
    if prediction.predicted == NO_ANSWER:
        return "no_answer"
    if tuple(sorted(prediction.labels)) == tuple(sorted(answer_key)):
        return "right_answer"
    return "wrong_answer"
