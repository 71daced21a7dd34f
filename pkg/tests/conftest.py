import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hetseq import Dataset  # noqa: E402

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def toy8():
    """Eight units whose fold contrast is hand-computable.

    Cells: (top, treated) y={2,4}; (top, control) y={1,1};
    (bottom, treated) y={1,3}; (bottom, control) y={2,2}.
    """
    y = np.array([2.0, 4.0, 1.0, 1.0, 1.0, 3.0, 2.0, 2.0])
    d = np.array([1, 1, 0, 0, 1, 1, 0, 0])
    groups = np.array([1, 1, 1, 1, 0, 0, 0, 0])
    z = np.arange(8.0)[:, None]
    return Dataset(z, d, y), groups
