from __future__ import annotations

import pytest

from gatherring.moves import Direction
from gatherring.ring import OccupancyPattern


def occ(n: int, *labels: int) -> OccupancyPattern:
    """Pattern from 1-based vertex labels, as in v1..vn."""
    return OccupancyPattern.from_occupied(n, [x - 1 for x in labels])


def toward(n: int, pos: int, target: int) -> Direction:
    """Direction from label ``pos`` to the adjacent label ``target``."""
    d = (target - pos) % n
    if d == 1:
        return Direction.CW
    if d == n - 1:
        return Direction.CCW
    raise AssertionError(f"v{target} is not adjacent to v{pos}")


@pytest.fixture
def report_line(capsys):
    """Print a line past pytest's capture so it lands in the terminal/log."""

    def emit(text: str) -> None:
        with capsys.disabled():
            print(text)

    return emit
