from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from gatherring.ring import OccupancyPattern, apply_symmetry, symmetries
from gatherring.views import TaskId, basic_vars, classify_task, predicates

from conftest import occ


def runs_of(bits, value):
    """Lengths of maximal cyclic runs equal to ``value``, found by scanning from a boundary."""
    n = len(bits)
    if all(b == value for b in bits):
        return [n]
    start = next(i for i in range(n) if bits[i] != value and bits[(i + 1) % n] == value)
    out, cur = [], 0
    for j in range(1, n + 1):
        if bits[(start + j) % n] == value:
            cur += 1
        elif cur:
            out.append(cur)
            cur = 0
    if cur:
        out.append(cur)
    return out


def reference_task(bits) -> int:
    """Task from the variable definitions, written independently of the package."""
    n = len(bits)
    occupied = [i for i in range(n) if bits[i]]
    hole_lens = runs_of(bits, False) if not all(bits) else []
    m = len(occupied)
    o1 = m == 1
    o2 = m == 2 and (occupied[1] - occupied[0]) in (1, n - 1)
    o3 = m == 3 and runs_of(bits, True) == [3]
    p = m == 2 and ((occupied[1] - occupied[0]) == 2 or (occupied[0] + n - occupied[1]) == 2)
    h = len(hole_lens) == 2 and min(hole_lens) == 1 and max(hole_lens) > 1
    b4 = len(hole_lens) == 1 and hole_lens[0] <= 4
    b5 = len(hole_lens) == 1 and hole_lens[0] >= 5
    f = not hole_lens
    pre = [True, b4 or f, b5, h, p, o3, o2, o1]
    return max(i + 1 for i, x in enumerate(pre) if x)


def test_basic_vars_single_unit_hole():
    bv = basic_vars(occ(6, 5, 6, 1, 2, 3))
    assert bv.b4
    assert not any([bv.b5, bv.f, bv.h, bv.o1, bv.o2, bv.o3, bv.p])


def test_pair_with_unit_separation_sets_p_and_h():
    bv = basic_vars(occ(6, 1, 5))
    assert bv.p and bv.h


def test_full_ring_sets_only_f():
    bv = basic_vars(occ(4, 1, 2, 3, 4))
    assert bv.f
    assert not any([bv.b4, bv.b5, bv.h, bv.o1, bv.o2, bv.o3, bv.p])


@pytest.mark.parametrize(
    "n, labels, task",
    [
        (6, (1, 2, 5), TaskId.T4),
        (6, (1, 5), TaskId.T5),
        (7, (1,), TaskId.T8),
        (6, (2, 3, 5, 6), TaskId.T1),
        (6, (1, 2, 3, 5, 6), TaskId.T2),
        (10, (1, 2, 3, 4), TaskId.T3),
        (6, (5, 6, 1), TaskId.T6),
        (6, (6, 1), TaskId.T7),
    ],
)
def test_task_examples(n, labels, task):
    assert classify_task(occ(n, *labels)) is task


def test_task_names():
    assert str(TaskId.T3) == "T3"
    assert TaskId.parse("T7") is TaskId.T7


@pytest.mark.parametrize("n", range(3, 13))
def test_exactly_one_predicate_and_matches_reference(n):
    for bits in itertools.product((False, True), repeat=n):
        if not any(bits):
            continue
        p = OccupancyPattern(bits)
        preds = predicates(p)
        assert sum(preds) == 1
        assert preds.index(True) + 1 == int(classify_task(p)) == reference_task(bits)
        assert (classify_task(p) is TaskId.T8) == (sum(bits) == 1)


@given(st.integers(3, 14).flatmap(lambda n: st.tuples(
    st.lists(st.booleans(), min_size=n, max_size=n).filter(any), st.integers(0, n - 1), st.sampled_from((1, -1)))))
def test_task_invariant_under_symmetry(case):
    bits, shift, sign = case
    p = OccupancyPattern(tuple(bits))
    q = OccupancyPattern(apply_symmetry(p.bits, sign, shift))
    assert classify_task(p) is classify_task(q)
    assert len(list(symmetries(p.n))) == 2 * p.n
