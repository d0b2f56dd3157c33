from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from gatherring.ring import (
    OccupancyPattern,
    RingConfig,
    SegmentKind,
    apply_symmetry,
    canonicalize,
    canonicalize_config,
    enumerate_initial,
    holes,
    islands,
    multiset_assignments,
    symmetries,
)

from conftest import occ
from oracles import assignments, symmetry_classes


def test_holes_two_unit_holes():
    hs = holes(occ(6, 2, 3, 5, 6))
    assert [(h.start, h.length) for h in hs] == [(0, 1), (3, 1)]
    assert all(h.kind is SegmentKind.HOLE for h in hs)


def test_holes_full_ring_is_empty():
    assert holes(occ(6, 1, 2, 3, 4, 5, 6)) == []


def test_holes_sizes_two_and_one():
    assert [(h.start, h.length) for h in holes(occ(6, 1, 2, 5))] == [(2, 2), (5, 1)]


def test_island_sizes():
    assert sorted(i.length for i in islands(occ(6, 2, 3, 5, 6))) == [2, 2]
    assert [i.length for i in islands(occ(6, 1, 2, 3, 4, 5, 6))] == [6]
    assert sorted(i.length for i in islands(occ(6, 1, 2, 3, 5))) == [1, 3]


def test_invalid_patterns_rejected():
    with pytest.raises(ValueError):
        OccupancyPattern((False,) * 5)
    with pytest.raises(ValueError):
        OccupancyPattern((True, False))
    with pytest.raises(ValueError):
        RingConfig(4, (0, 0, 0, 0))
    with pytest.raises(ValueError):
        RingConfig(4, (1, 1, 1))


def test_config_json_round_trip():
    c = RingConfig(5, (1, 0, 2, 2, 0))
    assert c.to_json() == {"n": 5, "counts": [1, 0, 2, 2, 0]}
    assert RingConfig.from_json(json.dumps(c.to_json())) == c
    assert c.label() == "n=5 k=5 [v1, v3x2, v4x2]"


def test_canonical_single_vertex():
    assert canonicalize(occ(5, 2)) == occ(5, 1)


def test_canonical_agrees_across_rotation():
    assert canonicalize(occ(6, 2, 3, 5, 6)) == canonicalize(occ(6, 1, 2, 4, 5))


def test_antipodal_pair_is_reflection_fixed():
    c = canonicalize(occ(4, 1, 3))
    assert any(apply_symmetry(c.bits, -1, s) == c.bits for s in range(4))


def test_enumerate_examples():
    assert [c.counts for c in enumerate_initial(4, 4, distinct=True)] == [(1, 1, 1, 1)]
    assert len(enumerate_initial(5, 3, distinct=True)) == 2
    reps = {c.counts for c in enumerate_initial(5, 5)}
    assert canonicalize_config(RingConfig(5, (1, 0, 2, 2, 0))).counts in reps


def test_enumerate_rejects_bad_input():
    with pytest.raises(ValueError):
        enumerate_initial(4, 5, distinct=True)
    with pytest.raises(ValueError):
        enumerate_initial(2, 1)


@pytest.mark.parametrize("n", range(3, 8))
def test_enumeration_matches_brute_force(n):
    for k in range(1, n + 3):
        for distinct in (False, True):
            if distinct and k > n:
                continue
            reps = enumerate_initial(n, k, distinct)
            classes = symmetry_classes(n, k, distinct)
            assert len(reps) == len(classes), (n, k, distinct)
            # one representative per class
            hit = {next(c for c in classes if r.counts in c) for r in reps}
            assert len(hit) == len(classes)


def test_multiset_assignments_cover_all_orders():
    config = RingConfig(6, (0, 1, 1, 0, 1, 2))
    got = list(multiset_assignments(config))
    assert len(got) == len(set(got)) == 60
    assert set(got) == assignments(config.counts)
    assert got == sorted(got)


patterns = st.integers(3, 12).flatmap(
    lambda n: st.lists(st.booleans(), min_size=n, max_size=n).filter(any).map(lambda b: OccupancyPattern(tuple(b)))
)


@given(patterns)
def test_segments_tile_the_ring(p):
    segs = holes(p) + islands(p)
    covered = sorted(v for s in segs for v in s.vertices(p.n))
    assert covered == list(range(p.n))
    if holes(p):
        assert len(holes(p)) == len(islands(p))


@given(patterns, st.data())
def test_canonical_form_is_a_class_invariant(p, data):
    c = canonicalize(p)
    assert canonicalize(c) == c
    sign, shift = data.draw(st.sampled_from(list(symmetries(p.n))))
    assert canonicalize(OccupancyPattern(apply_symmetry(p.bits, sign, shift))) == c
