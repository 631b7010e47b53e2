import pytest

from ramsq.core import InputState, MediumSpec

# Identity-suite grid: every closed-form check runs over all 120 points.
THICKNESS_GRID = (2.0, 5.0, 10.0, 20.0)
GAIN_GRID = (0.0, 0.5, 1.0, 2.0, 2.5, 3.0)
SQUEEZE_GRID = (0.0, 0.5, 1.0, 1.5, 2.0)


@pytest.fixture(scope="session")
def grid_points():
    return [
        (th, g, r)
        for th in THICKNESS_GRID
        for g in GAIN_GRID
        for r in SQUEEZE_GRID
    ]


@pytest.fixture(scope="session")
def reference_spec():
    return MediumSpec(thickness_ratio=10.0, gain_ratio=2.5)


@pytest.fixture(scope="session")
def reference_state():
    return InputState(squeeze_r=1.0)
