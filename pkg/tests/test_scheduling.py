from __future__ import annotations

import pytest

from gatherring.moves import DecisionSet, Direction
from gatherring.scheduling import (
    BranchAll,
    FirstOption,
    RRSchedule,
    ScriptExhausted,
    Scripted,
    Seeded,
    default_assignment,
    policy_from_json,
    resolve,
    seq_adaptive_adversary,
)

CW, CCW, STAY = Direction.CW, Direction.CCW, Direction.STAY
BOTH = DecisionSet((CW, CCW))


def test_round_robin_pointer():
    s = RRSchedule((0, 1, 2, 3, 4))
    assert s.next_activation() == 0 and s.pointer == 1
    s = RRSchedule((0, 1, 2, 3, 4), pointer=4)
    assert s.next_activation() == 4 and s.pointer == 0
    s = RRSchedule((3,))
    assert [s.next_activation() for _ in range(3)] == [0, 0, 0]


def test_every_rank_once_per_epoch():
    s = RRSchedule((0, 0, 1, 2))
    for _ in range(3):
        assert sorted(s.next_activation() for _ in range(s.k)) == [0, 1, 2, 3]


def test_schedule_validation():
    with pytest.raises(ValueError):
        RRSchedule(())
    with pytest.raises(ValueError):
        RRSchedule((0, 1), pointer=2)
    assert RRSchedule((1, 2, 2)).matches((0, 1, 2))
    assert not RRSchedule((1, 1, 2)).matches((0, 1, 2))


def test_default_assignment_keeps_multiplicities_together():
    assert default_assignment((0, 1, 1, 0, 1, 2)) == (1, 2, 4, 5, 5)


def test_resolve():
    assert resolve(BOTH, Scripted((1,)), 1) is CCW
    for policy in (FirstOption(), Seeded(3), Scripted(())):
        assert resolve(DecisionSet((STAY,)), policy, 1) is STAY
    assert resolve(BOTH, FirstOption(), 1) is CW
    picks = {resolve(BOTH, Seeded(7), 3) for _ in range(20)}
    assert len(picks) == 1


def test_scripted_errors():
    with pytest.raises(ScriptExhausted):
        resolve(BOTH, Scripted(()), 5)
    with pytest.raises(ValueError):
        resolve(BOTH, Scripted((2,)), 5)
    with pytest.raises(ValueError):
        resolve(BOTH, BranchAll(), 1)


def test_scripted_consumes_only_on_ties():
    policy = Scripted((1, 0))
    resolve(DecisionSet((CW,)), policy, 1)
    assert policy.cursor == 0
    assert resolve(BOTH, policy, 2) is CCW
    assert resolve(BOTH, policy, 3) is CW


def test_policy_json():
    for policy in (FirstOption(), Seeded(11), Scripted((0, 1))):
        assert policy_from_json(policy.to_json()) == policy
    assert policy_from_json(None) == FirstOption()
    with pytest.raises(ValueError):
        policy_from_json({"kind": "oracle"})


def test_seq_adversary_follows_the_multiplicity():
    n = 5
    # r1, r2 on v1, r3 on v2
    assert seq_adaptive_adversary((0, 0, 1), (0, 0, 0), n) == 0
    # r1 moved onto v2
    assert seq_adaptive_adversary((1, 0, 1), (0, 1, 1), n) == 2
    # r3 moved onto v1
    assert seq_adaptive_adversary((1, 0, 0), (1, 2, 0), n) == 1


def test_seq_adversary_fairness_and_precondition():
    assert seq_adaptive_adversary((0, 0, 1), (0, 0, 5), 5) == 2
    with pytest.raises(ValueError):
        seq_adaptive_adversary((0, 0, 2), (0, 0, 0), 5)
