import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sepmotion.constitutive import MaterialModel, QuadraticShear  # noqa: E402
from sepmotion.eigensolver import eigenvalue_solve  # noqa: E402

CASES = [(-1.0, 100.0), (-2.0, 200.0), (6.0, 1000.0), (9.0, 2000.0)]
_cache = {}


def quadratic(h, B, M=1.0):
    return MaterialModel(h, QuadraticShear(B), M)


def solved(h, B):
    """Eigen solution at n = 2048, computed once per session."""
    key = (h, B)
    if key not in _cache:
        model = quadratic(h, B)
        _cache[key] = (model, eigenvalue_solve(model))
    return _cache[key]


@pytest.fixture(params=CASES, ids=lambda c: f"h{c[0]:g}_B{c[1]:g}")
def solved_case(request):
    return solved(*request.param)


@pytest.fixture
def expansion_case():
    return solved(-1.0, 100.0)


@pytest.fixture
def collapse_case():
    return solved(6.0, 1000.0)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
