import numpy as np
import pytest

ACCEPTANCE_RESULTS = []


def piecewise_smooth_scene(n=512):
    """Deterministic test scene: gradients plus a few flat shapes, values within [15, 200]."""
    y, x = np.mgrid[0:n, 0:n] / n
    img = 60 + 80 * x + 30 * np.sin(3 * np.pi * y)
    img[(x > 0.2) & (x < 0.45) & (y > 0.25) & (y < 0.6)] = 170
    img[(x - 0.68) ** 2 + (y - 0.62) ** 2 < 0.02] = 40
    img[(y > 0.75) & (x > 0.15) & (x < 0.85)] -= 25
    return img


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def record_criterion():
    def record(number, title, passed, detail=""):
        ACCEPTANCE_RESULTS.append((number, title, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}: {detail}")
