from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from gatherring.moves import (
    DecisionSet,
    Direction,
    compute,
    move_m1,
    move_m2,
    move_m3,
    move_m4,
    move_m5,
    move_m6,
    move_m7,
)
from gatherring.ring import OccupancyPattern, apply_symmetry
from gatherring.views import TaskId, classify_task

from conftest import occ, toward

CW, CCW, STAY = Direction.CW, Direction.CCW, Direction.STAY


def ds(*dirs):
    return DecisionSet(tuple(dirs))


def test_decision_set_normalises_and_validates():
    assert ds(CCW, CW).options == (CW, CCW)
    assert ds(CW).mirrored() == ds(CCW)
    with pytest.raises(ValueError):
        ds()
    with pytest.raises(ValueError):
        ds(STAY, CW)
    assert ds(STAY).names() == ["stay"]
    assert Direction.parse("ccw") is CCW


# (move, n, occupied labels, robot label, expected: neighbour labels or "stay" or "both")
EXAMPLES = [
    (move_m1, 6, (2, 3, 5, 6), 6, [1]),
    (move_m1, 6, (1, 2, 3, 5), 3, [2]),
    (move_m1, 6, (1, 2, 3, 5), 5, "stay"),
    (move_m2, 6, (5, 6, 1, 2, 3), 6, [1]),
    (move_m2, 6, (5, 6, 1, 2, 3), 1, "stay"),
    (move_m2, 5, (1, 2, 3, 4, 5), 1, "both"),
    (move_m3, 10, (1, 2, 3, 4), 4, [5]),
    (move_m3, 10, (1, 2, 3, 4), 2, "stay"),
    (move_m3, 9, (1,), 1, "both"),
    (move_m4, 6, (1, 2, 5), 2, [1]),
    (move_m4, 6, (1, 2, 5), 5, "stay"),
    (move_m4, 6, (1, 2, 5), 1, "stay"),
    (move_m5, 6, (1, 5), 1, [6]),
    (move_m5, 4, (1, 3), 1, "both"),
    (move_m5, 6, (1, 5), 5, [6]),
    (move_m6, 6, (5, 6, 1), 5, [6]),
    (move_m6, 6, (5, 6, 1), 6, "stay"),
    (move_m6, 6, (5, 6, 1), 1, [6]),
    (move_m7, 6, (6, 1), 1, [6]),
    (move_m7, 6, (6, 1), 6, [1]),
    (move_m7, 3, (1, 2), 1, [2]),
]


@pytest.mark.parametrize("move, n, labels, pos, expected", EXAMPLES)
def test_move_examples(move, n, labels, pos, expected):
    got = move(occ(n, *labels), pos - 1)
    if expected == "stay":
        assert got == ds(STAY)
    elif expected == "both":
        assert got == ds(CW, CCW)
    else:
        assert got == ds(*(toward(n, pos, t) for t in expected))


def test_single_vertex_on_nine_ring_is_terminal():
    # the multiplicity is invisible: one occupied vertex is the gathered task
    p = occ(9, 1)
    assert classify_task(p) is TaskId.T8
    assert compute(p, 0) == ds(STAY)


def test_compute_dispatch():
    assert compute(occ(6, 1), 0) == ds(STAY)
    assert compute(occ(6, 1, 5), 0) == ds(toward(6, 1, 6))
    # two biggest holes, all islands of size two: nearest empty vertex is v1
    assert compute(occ(6, 2, 3, 5, 6), 1) == ds(toward(6, 2, 1))
    with pytest.raises(ValueError):
        compute(occ(6, 1, 5), 2)


def mirror_about(p: OccupancyPattern, pos: int) -> OccupancyPattern:
    return OccupancyPattern(apply_symmetry(p.bits, -1, 2 * pos))


cases = st.integers(3, 13).flatmap(
    lambda n: st.tuples(
        st.lists(st.booleans(), min_size=n, max_size=n).filter(any),
        st.integers(0, n - 1),
        st.integers(0, n - 1),
    )
)


@given(cases)
def test_rotation_and_reflection_equivariance(case):
    bits, shift, pick = case
    p = OccupancyPattern(tuple(bits))
    pos = p.occupied[pick % len(p.occupied)]
    d = compute(p, pos)
    n = p.n
    rotated = OccupancyPattern(apply_symmetry(p.bits, 1, shift))
    assert compute(rotated, (pos + shift) % n) == d
    reflected = OccupancyPattern(apply_symmetry(p.bits, -1, shift))
    assert compute(reflected, (shift - pos) % n) == d.mirrored()
    if mirror_about(p, pos) == p:
        assert d.is_stay or len(d) == 2


@pytest.mark.parametrize("n", range(4, 15))
def test_pair_separated_by_one_targets_the_unit_gap(n):
    for other in range(2, n - 1):
        p = OccupancyPattern.from_occupied(n, [0, other])
        if classify_task(p) is not TaskId.T5:
            continue
        for pos in p.occupied:
            for d in compute(p, pos):
                nxt = (pos + d) % n
                assert not p.bits[nxt]
                assert p.bits[(nxt + d) % n]


@pytest.mark.parametrize("n", range(3, 10))
def test_gathered_is_absorbing(n):
    for v in range(n):
        assert compute(OccupancyPattern.from_occupied(n, [v]), v) == ds(STAY)
