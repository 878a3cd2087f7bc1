import itertools

import pytest
from hypothesis import given, settings, strategies as st

from huspmine import (MinerConfig, Pattern, make_database, mine,
                      mine_bruteforce, resolve_threshold, small_random_qsdb,
                      swu_prefilter)
from huspmine.bounds import BoundKind
from huspmine.miner import exact_minimum_utility, stats_document

from conftest import A, B, D
from test_qsdb import small_db


def cfg(ratio=None, **kw):
    return MinerConfig(ratio=ratio, **kw)


def test_pattern_encoding_and_shape():
    p = Pattern.of([A, B], [A, D])
    assert p.length == 4
    assert p.size == 2
    assert p.encode() == "1 2 -1 1 4 -2"
    assert p.i_extend(9).itemsets == ((1, 2), (1, 4, 9))
    assert p.s_extend(3).itemsets == ((1, 2), (1, 4), (3,))
    with pytest.raises(ValueError):
        Pattern.of([])


def test_threshold_resolution(db):
    pred = resolve_threshold(cfg("0.2"), db)
    assert pred.min_utility == 10  # smallest integer utility >= 9.4
    assert pred(11) and pred(10) and not pred(9)
    assert resolve_threshold(cfg("0.5"), db).min_utility == 24  # 23.5 rounds up
    assert resolve_threshold(cfg("1"), db).min_utility == 47
    assert resolve_threshold(cfg(min_utility=12), db).min_utility == 12


@pytest.mark.parametrize("ratio", ["0", "1.5", "-0.1"])
def test_threshold_rejects_out_of_range(db, ratio):
    with pytest.raises(ValueError):
        exact_minimum_utility(cfg(ratio), db)


def test_config_requires_exactly_one_threshold(db):
    with pytest.raises(ValueError):
        mine(db, MinerConfig())
    with pytest.raises(ValueError):
        mine(db, MinerConfig(ratio="0.5", min_utility=3))


def test_swu_prefilter_drops_only_weak_items(db):
    pred = resolve_threshold(cfg("0.5"), db)
    filtered = swu_prefilter(db, pred)
    remaining = {i for s in filtered.sequences for e in s.elements for i in e.items()}
    assert remaining == {1, 2, 4, 5, 6}  # item 3 fails 12 >= 23.5
    untouched = swu_prefilter(db, lambda u: True)
    assert untouched.sequences == db.sequences


def test_swu_prefilter_drops_emptied_sequences():
    db = make_database([[[(1, 1)]], [[(2, 5)]]], {1: 1, 2: 2})
    filtered = swu_prefilter(db, lambda u: u >= 5)
    assert len(filtered.sequences) == 1
    assert filtered.total_utility == 10


def test_mine_fixture_at_half(db):
    result = mine(db, cfg("0.5"))
    assert [(p.itemsets, u) for p, u in result.patterns] == [(((A, B), (A, D)), 25)]
    assert result.lines() == ["1 2 -1 1 4 -2 #UTIL: 25"]
    stats = result.stats
    assert stats.husps == 1
    assert stats.candidates >= stats.husps
    assert stats.iip_removed >= 2  # at least e and f inside the <{a}> branch


def test_mine_fixture_at_fifth_matches_bruteforce(db):
    predicate = resolve_threshold(cfg("0.2"), db)
    expected = {(p.itemsets, u) for p, u in mine_bruteforce(db, predicate)}
    got = mine(db, cfg("0.2")).as_set()
    assert got == expected
    assert (((A, D),), 11) in got


def test_mine_empty_database():
    from huspmine import parse_database
    empty = parse_database([], ["1:1"])
    result = mine(empty, cfg(min_utility=1))
    assert result.patterns == []


def test_mine_ratio_one_boundary(db):
    assert mine(db, cfg("1")).patterns == []


def test_results_sorted_and_unique(db):
    result = mine(db, cfg("0.05"))
    keys = [p.itemsets for p, _ in result.patterns]
    assert keys == sorted(keys)
    assert len(keys) == len(set(keys))


ALL_COMBOS = list(itertools.product((BoundKind.TRSU, BoundKind.RSU),
                                    (True, False), (True, False), (True, False)))


@pytest.mark.parametrize("ratio", ["0.1", "0.3", "0.5"])
def test_fixture_equivalence_all_sixteen_configs(db, ratio):
    predicate = resolve_threshold(cfg(ratio), db)
    expected = {(p.itemsets, u) for p, u in mine_bruteforce(db, predicate)}
    for bound, iip, ep, peu in ALL_COMBOS:
        got = mine(db, cfg(ratio, bound=bound, iip=iip, ep=ep,
                           peu_depth_prune=peu)).as_set()
        assert got == expected, (bound, iip, ep, peu)


def test_random_dbs_equivalence_including_peu_off():
    for seed in range(12):
        db = small_random_qsdb(seed)
        everything = mine_bruteforce(db, lambda u: True)
        for ratio in ("0.1", "0.25", "0.4"):
            predicate = resolve_threshold(cfg(ratio), db)
            expected = {(p.itemsets, u) for p, u in everything if predicate(u)}
            for bound, iip, ep, peu in ALL_COMBOS:
                got = mine(db, cfg(ratio, bound=bound, iip=iip, ep=ep,
                                   peu_depth_prune=peu)).as_set()
                assert got == expected, (seed, ratio, bound, iip, ep, peu)


def test_walkthrough_pruning_inside_first_branch(db):
    # At threshold 0.5 (floor 24), growing <{a}>: irrelevant-item pruning
    # removes e and f, early pruning keeps I-candidates b and d plus
    # S-candidate d, and discards <{a}},{a}> whose bound is 21.
    from huspmine import extend_projection, project_root
    from huspmine.miner import _Search
    from huspmine.seqstore import S_EXTENSION
    from conftest import E, F

    search = _Search(24, MinerConfig(ratio="0.5"))
    root = project_root(db)
    pa = [p for p in (extend_projection(q, A, S_EXTENSION) for q in root) if p]
    scans = [search._scan_projection(p) for p in pa]
    search.apply_iip(pa, scans)
    assert all(p.removed == frozenset({E, F}) for p in pa)
    assert search.stats.iip_removed == 2
    ilist, slist = search.scan_extensions(pa, scans)
    assert [item for item, _ in ilist] == [B, D]
    assert [item for item, _ in slist] == [D]
    assert search.stats.ep_discarded == 1


def test_prefilter_off_same_result(db):
    for ratio in ("0.1", "0.4"):
        assert (mine(db, cfg(ratio, swu_prefilter=False)).as_set()
                == mine(db, cfg(ratio)).as_set())


def test_candidate_counts_monotone_in_pruning():
    for seed in (3, 7, 21):
        db = small_random_qsdb(seed)
        for ratio in ("0.1", "0.3"):
            by = {}
            for bound, iip in itertools.product((BoundKind.TRSU, BoundKind.RSU),
                                                (True, False)):
                stats = mine(db, cfg(ratio, bound=bound, iip=iip)).stats
                by[(bound, iip)] = stats.candidates
            assert by[(BoundKind.TRSU, True)] <= by[(BoundKind.RSU, True)]
            assert by[(BoundKind.TRSU, False)] <= by[(BoundKind.RSU, False)]
            assert by[(BoundKind.TRSU, True)] <= by[(BoundKind.TRSU, False)]
            assert by[(BoundKind.RSU, True)] <= by[(BoundKind.RSU, False)]


def test_max_pattern_length_cap(db):
    capped = mine(db, cfg("0.05", max_pattern_length=2))
    assert capped.patterns
    assert all(p.length <= 2 for p, _ in capped.patterns)
    full = mine(db, cfg("0.05"))
    expected = {(p.itemsets, u) for p, u in full.patterns if p.length <= 2}
    assert capped.as_set() == expected


def test_deterministic_stats_and_output(db):
    first = mine(db, cfg("0.2"))
    second = mine(db, cfg("0.2"))
    assert first.lines() == second.lines()
    a, b = first.stats.to_dict(), second.stats.to_dict()
    for volatile in ("runtime_ms",):
        a.pop(volatile), b.pop(volatile)
    assert a == b


def test_parallel_mode_equals_sequential():
    for seed in (1, 5, 9):
        db = small_random_qsdb(seed)
        solo = mine(db, cfg("0.1"))
        multi = mine(db, cfg("0.1", threads=3))
        assert solo.lines() == multi.lines()
        a, b = solo.stats.to_dict(), multi.stats.to_dict()
        a.pop("runtime_ms"), b.pop("runtime_ms")
        assert a == b


def test_parallel_mode_on_fixture(db):
    assert mine(db, cfg("0.5", threads=4)).lines() == ["1 2 -1 1 4 -2 #UTIL: 25"]


def test_stats_document_is_stable_keyed(db):
    result = mine(db, cfg("0.5"))
    doc = stats_document(cfg("0.5"), result.stats, data="x.seq", utils="x.eu")
    import json
    parsed = json.loads(doc)
    assert parsed["husps"] == 1
    assert parsed["bound"] == "trsu"
    assert list(parsed) == sorted(parsed)


@settings(max_examples=30, deadline=None)
@given(small_db(), st.sampled_from(["0.05", "0.15", "0.35"]))
def test_equivalence_property(db, ratio):
    from huspmine import OracleLimits
    limits = OracleLimits(max_sequences=10, max_sequence_length=20,
                          max_pattern_length=20)
    predicate = resolve_threshold(cfg(ratio), db)
    expected = {(p.itemsets, u) for p, u in mine_bruteforce(db, predicate, limits)}
    assert mine(db, cfg(ratio)).as_set() == expected
    assert mine(db, cfg(ratio, bound=BoundKind.RSU, iip=False)).as_set() == expected
