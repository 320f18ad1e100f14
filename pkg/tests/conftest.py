import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from geoforge.pipeline import PipelineConfig, run_pipeline
from geoforge.dataset import read_corpus

# Theorem fixtures: (name, premise DSL, expected conclusion, main rule)
KNOWN_THEOREMS = [
    ("midline parallel to base",
     "a b c = triangle; e = midpoint e a b; f = midpoint f a c",
     "para e f b c", "r07"),
    ("midline half-length (to B)",
     "a b c = triangle; e = midpoint e a b; f = midpoint f a c; g = midpoint g b c",
     "cong e f g b", "r08"),
    ("midline half-length (to C)",
     "a b c = triangle; e = midpoint e a b; f = midpoint f a c; g = midpoint g b c",
     "cong e f g c", "r09"),
    ("angle in a semicircle is right",
     "a c = segment; o = midpoint o a c; b = on_circle b o a",
     "perp a b b c", "r23"),
    ("perpendicular bisector equidistance",
     "a b = segment; m = midpoint m a b; o = on_tline o m a b",
     "cong o a o b", "r25"),
    ("equal radii make concyclic points",
     "o a = segment; b = on_circle b o a; c = on_circle c o a; d = on_circle d o a",
     "cyclic a b c d", "r02"),
    ("isosceles base angles",
     "a b c = iso_triangle",
     "eqangle a b b c b c a c", "r16"),
    ("diagonals bisecting each other give parallels",
     "a b c = triangle; m = midpoint m a b; d = mirror d c m",
     "para a c b d", "r28"),
    ("two equidistant points span the perpendicular bisector",
     "a b = segment; p = on_bline p a b; q = on_bline q a b",
     "perp a b p q", "r26"),
    ("median to the hypotenuse",
     "a c = segment; b = on_dia b a c; m = midpoint m a c",
     "cong a m b m", "r22"),
    ("altitude feet from two points give parallels",
     "a b c = triangle; m = mirror m a b; p = foot p a b c; q = foot q m b c",
     "para a p m q", "r01"),
    ("midpoints preserve half ratios",
     "a b c = triangle; m = midpoint m a b; n = midpoint n a c",
     "eqratio m a a b n a a c", "r32"),
]


ACCEPTANCE_CORPUS_CONFIG = {
    "seed": 0,
    "seeds": list(range(70)),
    "max_depth": 8,
    "schedule": [8, 4, 2, 1, 1, 1, 1, 1],
    "max_level": 8,
    "min_solution_length": 6,
    "max_problems": 1000,
    "jobs": 2,
}


@pytest.fixture(scope="session")
def desk_corpus(tmp_path_factory):
    """The shared 1,000-problem depth-8 corpus used by the acceptance gate."""
    out = tmp_path_factory.mktemp("desk_corpus")
    cfg = PipelineConfig.from_dict(dict(ACCEPTANCE_CORPUS_CONFIG, out_dir=str(out)))
    summary = run_pipeline(cfg)
    records = read_corpus(os.path.join(str(out), "corpus.jsonl"))
    return {"dir": str(out), "records": records, "summary": summary}
