import random

import numpy as np
import pytest


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_unimodular(rng, n, steps=None):
    """Product of elementary integer row operations and sign flips."""
    u = np.identity(n, dtype=object)
    for _ in range(steps or 3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            u[i] = u[i] + rng.choice([-2, -1, 1, 2]) * u[j]
        if rng.random() < 0.1:
            u[i] = -u[i]
    return u


ACCEPTANCE: dict[int, str] = {}


def record(n: int, ok: bool, detail: str):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE[n] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
