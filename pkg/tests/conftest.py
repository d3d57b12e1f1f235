import pytest

from qedirac.grid import make_grid
from qedirac.models import screened_model

REFERENCE_PARAMS = dict(eps=1, t=0.5, lam=1.0, h=0.2, mu=1.2)

# one line per acceptance criterion, echoed after the test summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def default_grid():
    """The grid the CLI uses when nothing overrides it."""
    return make_grid(1e-6, 40.0, 4000, "geometric")


@pytest.fixture(scope="session")
def reference_model(default_grid):
    """Screened model at the standard parameter point, kappa = 1."""
    return screened_model(
        REFERENCE_PARAMS["eps"],
        REFERENCE_PARAMS["t"],
        REFERENCE_PARAMS["lam"],
        REFERENCE_PARAMS["h"],
        REFERENCE_PARAMS["mu"],
        1.0,
        default_grid,
    )


@pytest.fixture(scope="session")
def uniform_grid():
    """Uniform grid whose node 150 sits exactly at r = 2.0."""
    return make_grid(0.5, 8.0, 751, "uniform")
