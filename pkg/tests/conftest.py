import re

import numpy as np
import pytest

from wctet import kernels
from wctet.cube import cube_pipeline
from wctet.subdivision import subdivide_49_well_centered

# Criterion outcomes collected by pytest_runtest_logreport; one summary
# line per criterion is printed at the end of the run.
_ACCEPTANCE = {}
_DETAILS = {}


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    kernels.warmup()


@pytest.fixture(scope="session")
def wc49():
    """Well-centered 49-tet subdivision; expensive, shared across tests."""
    return subdivide_49_well_centered()


@pytest.fixture(scope="session")
def cube_result():
    """Default cube pipeline run; expensive, shared across tests."""
    return cube_pipeline()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_tets(rng, n, min_vol6=1e-3):
    """n random tets with vertices uniform in the unit cube, rejecting
    near-degenerate ones."""
    out = []
    while len(out) < n:
        cand = rng.uniform(size=(2 * (n - len(out)) + 16, 4, 3))
        e = cand[:, 1:] - cand[:, :1]
        vol6 = np.abs(np.linalg.det(e))
        out.extend(cand[vol6 >= min_vol6])
    return np.array(out[:n])


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    _ACCEPTANCE[n] = report.outcome
    for key, val in report.user_properties:
        if key == "detail":
            _DETAILS[n] = val


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        word = {"passed": "PASS", "failed": "FAIL"}.get(_ACCEPTANCE[n],
                                                        _ACCEPTANCE[n].upper())
        detail = _DETAILS.get(n, "")
        terminalreporter.write_line(
            "criterion %2d: %s%s" % (n, word, "  (%s)" % detail if detail else ""))
