import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from choicelab.frame import FiniteFrame  # noqa: E402

FIX3_JSON = {
    "models": ["m1", "m2", "m3"],
    "formulas": ["p", "q"],
    "satisfaction": [[1, 1], [1, 0], [0, 1]],
}


@pytest.fixture
def fix3() -> FiniteFrame:
    return FiniteFrame(("m1", "m2", "m3"), ("p", "q"), ((1, 1), (1, 0), (0, 1)))


def random_frame(rng, n_models, n_formulas):
    models = tuple(f"m{i}" for i in range(n_models))
    formulas = tuple(f"a{j}" for j in range(n_formulas))
    sat = tuple(tuple(rng.random() < 0.5 for _ in formulas) for _ in models)
    return FiniteFrame(models, formulas, sat)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report_line():
    """Print a criterion verdict and repeat it in the terminal summary."""

    def emit(line: str) -> None:
        print(line)
        ACCEPTANCE_LINES.append(line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
