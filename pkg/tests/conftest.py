import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from planefix.geometry import PolyCurve  # noqa: E402


def star_curve(rng: np.random.Generator, n: int = 12, center=(0.0, 0.0), rmin: float = 0.3,
               rmax: float = 1.0) -> PolyCurve:
    """Random star-shaped (hence simple) counter-clockwise polygon."""
    ang = np.sort(rng.uniform(0, 2 * np.pi, n))
    ang += np.linspace(0, 1e-3, n)  # keep angles distinct
    r = rng.uniform(rmin, rmax, n)
    v = np.stack([center[0] + r * np.cos(ang), center[1] + r * np.sin(ang)], axis=1)
    return PolyCurve(v, closed=True)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    from criteria import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
