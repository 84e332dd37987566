from __future__ import annotations

import pytest

from pdakit.core import PdaArray

# The 4x4 worked example: stars on the checkerboard, colors 1..4.
EXAMPLE1_ROWS = [
    [None, 1, None, 3],
    [1, None, 3, None],
    [None, 2, None, 4],
    [2, None, 4, None],
]

# The 2x4 strip whose self-combination reproduces the 4x4 example.
STRIP_ROWS = [
    [None, 1, None, 2],
    [1, None, 2, None],
]


@pytest.fixture
def example1() -> PdaArray:
    return PdaArray.from_rows(EXAMPLE1_ROWS)


@pytest.fixture
def strip() -> PdaArray:
    return PdaArray.from_rows(STRIP_ROWS)
