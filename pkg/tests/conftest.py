import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from dephasing_sps.params import SystemParams  # noqa: E402

ACCEPTANCE_LINES = []


@st.composite
def system_params(draw, g=(0.0, 300.0), kappa=(1.0, 500.0), gamma=(0.01, 100.0), gamma_star=(0.0, 2000.0), delta=(-3000.0, 3000.0)):
    f = lambda lo_hi: draw(st.floats(*lo_hi, allow_nan=False, allow_infinity=False))  # noqa: E731
    return SystemParams.from_detuning(f(g), f(kappa), f(gamma), f(gamma_star), f(delta))


def random_params(rng, n, g=(0.0, 300.0), kappa=(1.0, 500.0), gamma=(0.01, 100.0), gamma_star=(0.0, 2000.0), delta=(-3000.0, 3000.0)):
    """Seeded uniform draws, for the large-count checks."""
    cols = [rng.uniform(*r, size=n) for r in (g, kappa, gamma, gamma_star, delta)]
    return [SystemParams.from_detuning(*map(float, row)) for row in zip(*cols)]


@pytest.fixture
def rng():
    return np.random.default_rng(20080923)


@pytest.fixture
def report():
    def record(criterion: str, ok: bool, detail: str = ""):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
