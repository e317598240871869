import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coriolis_states import kernels  # noqa: E402
from coriolis_states.units import CODATA2018, make_frame_params  # noqa: E402

SUITE_BUDGET_S = 120.0
_KERNEL_NAMES = ("sturm_count", "bisect_eigenvalue", "shifted_solve", "compose_rodrigues", "rk4_cross")


@pytest.fixture
def electron_frame():
    return make_frame_params(CODATA2018.electron_mass, 1e11)


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request, monkeypatch):
    """Run a test once per available kernel backend."""
    impl = kernels.BACKENDS[request.param]
    for name in _KERNEL_NAMES:
        monkeypatch.setattr(kernels, name, getattr(impl, name))
    return request.param


def pytest_sessionstart(session):
    session.config._suite_start = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - session.config._suite_start
    session.config._suite_elapsed = elapsed
    if elapsed > SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        RESULTS = []
    elapsed = getattr(config, "_suite_elapsed", float("nan"))
    if not RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for line in RESULTS:
        tr.write_line(line)
    status = "PASS" if elapsed < SUITE_BUDGET_S else "FAIL"
    tr.write_line(f"[{status}] 10b full suite runtime {elapsed:.1f} s (< {SUITE_BUDGET_S:.0f} s)")
    tr.write_line(f"kernel backend: {kernels.BACKEND}")
