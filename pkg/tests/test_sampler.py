import pytest

from geoforge.errors import NoValidExtension
from geoforge.kernel import instantiate, parse_premise
from geoforge.sampler import PoolEntry, SamplerConfig, default_schedule, sample_layer, sample_pool


def test_default_schedule_halves_with_floor():
    assert default_schedule(8) == (8, 4, 2, 1, 1, 1, 1, 1)
    assert default_schedule(3, start=5) == (5, 2, 1)


def test_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(max_depth=0)
    with pytest.raises(ValueError):
        SamplerConfig(max_depth=2, branching_schedule=(1,))
    with pytest.raises(ValueError):
        SamplerConfig(max_depth=2, branching_schedule=(1, 0))


def test_sample_layer_on_triangle():
    partial = parse_premise("a b c = triangle")
    cfg = SamplerConfig(max_depth=2, branching_schedule=(2, 2), seed=0)
    exts = sample_layer(partial, cfg, 0)
    assert 1 <= len(exts) <= 2
    seen = set()
    for ext in exts:
        assert len(ext.constructions) == 2
        assert ext.text() not in seen
        seen.add(ext.text())
        instantiate(ext, seed=0)          # every extension instantiates


def test_degenerate_schedule_single_chain():
    cfg = SamplerConfig(max_depth=3, branching_schedule=(1, 1, 1), seed=1)
    pool = sample_pool(cfg)
    assert len(pool.entries) <= 1


def test_pool_size_bound_and_validity():
    cfg = SamplerConfig(max_depth=2, branching_schedule=(3, 2), seed=0)
    pool = sample_pool(cfg)
    assert len(pool.entries) <= 6
    for entry in pool.entries:
        instantiate(entry.premise, seed=0)


def test_prefix_validity_and_monotone_growth():
    cfg = SamplerConfig(max_depth=4, branching_schedule=(2, 1, 1, 1), seed=5)
    pool = sample_pool(cfg)
    assert pool.entries
    for entry in pool.entries:
        premise = entry.premise
        n_prev = 0
        for k in range(1, len(premise.constructions) + 1):
            prefix = premise.prefix(k)
            reparsed = parse_premise(prefix.text())   # prefix is itself valid
            assert reparsed == prefix
            assert len(prefix.points) > n_prev        # strictly growing
            n_prev = len(prefix.points)
        names = premise.points
        assert len(set(names)) == len(names)          # no redefinition


def test_seed_determinism():
    cfg = SamplerConfig(max_depth=3, branching_schedule=(2, 2, 1), seed=11)
    p1 = sample_pool(cfg)
    p2 = sample_pool(cfg)
    assert [e.premise.text() for e in p1.entries] == \
        [e.premise.text() for e in p2.entries]
    cfg2 = SamplerConfig(max_depth=3, branching_schedule=(2, 2, 1), seed=12)
    p3 = sample_pool(cfg2)
    assert [e.premise.text() for e in p1.entries] != \
        [e.premise.text() for e in p3.entries]


def test_entry_ids_and_flags():
    cfg = SamplerConfig(max_depth=2, branching_schedule=(2, 1), seed=3)
    pool = sample_pool(cfg)
    for entry in pool.entries:
        assert isinstance(entry, PoolEntry)
        assert entry.entry_id.startswith("p0003-")
        if entry.complete:
            assert entry.depth == 2
        else:
            assert entry.depth < 2


def test_invalid_two_point_clause_never_sampled():
    # point-valued templates cannot appear in sampled two-clause constructions
    cfg = SamplerConfig(max_depth=4, branching_schedule=(3, 2, 1, 1), seed=7)
    pool = sample_pool(cfg)
    for entry in pool.entries:
        for con in entry.premise.constructions:
            if len(con.clauses) == 2:
                for clause in con.clauses:
                    assert clause.template.kind in ("line", "circle")
