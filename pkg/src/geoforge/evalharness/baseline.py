"""Monte-Carlo random baselines under configurable subset laws.

The published random row is internally inconsistent: a uniform draw over
all 16 subsets gives the 6.25 exact match but selects 2.0 options on
average, while a uniform draw over the 15 non-empty subsets matches the
2.13 average but shifts exact match to 1/15.  The law is therefore a
parameter and reports carry both numbers side by side.
"""
from __future__ import annotations

import random
from itertools import combinations

from .answers import LABELS
from .metrics import MetricsAccumulator, MetricsReport

ALL_SUBSETS = tuple(
    tuple(c) for k in range(5) for c in combinations(LABELS, k))
NONEMPTY_SUBSETS = tuple(s for s in ALL_SUBSETS if s)

LAWS = ("uniform16", "uniform_nonempty", "always_empty")


def draw_subset(law: str, rng: random.Random) -> tuple[str, ...]:
    if law == "uniform16":
        return ALL_SUBSETS[rng.randrange(16)]
    if law == "uniform_nonempty":
        return NONEMPTY_SUBSETS[rng.randrange(15)]
    if law == "always_empty":
        return ()
    raise ValueError(f"unknown subset law {law!r}")


def random_baseline(corpus, trials: int, seed: int = 0,
                    law: str = "uniform16") -> MetricsReport:
    """Metrics of `trials` random predictions cycled over the corpus."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    acc = MetricsAccumulator()
    n = len(corpus)
    for t in range(trials):
        rec = corpus[t % n]
        subset = draw_subset(law, rng)
        acc.add(subset, no_answer=False, truncated=False,
                key=tuple(rec.answer_key), band=rec.difficulty_band)
    return acc.finalize()
