import math

import numpy as np
import pytest
from hypothesis import settings

from ghzrate.state import HamiltonianParams

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def H2():
    return HamiltonianParams(2.0, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hamiltonian(rng, r_max=5.0):
    gy = rng.choice([-1.0, 1.0]) * rng.uniform(0.2, 2.0)
    return HamiltonianParams.from_ratio(rng.uniform(-r_max, r_max), gy)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


QUARTER = math.pi / 4
