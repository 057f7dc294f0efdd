import numpy as np
import pytest

from holobeam import _accel


@pytest.fixture(params=["numpy", "numba"])
def backend(request):
    """Run the test once per kernel backend."""
    if request.param == "numba" and not _accel.HAS_NUMBA:
        pytest.skip("numba not installed")
    previous = _accel.set_backend(request.param)
    yield request.param
    _accel.set_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line and assert it: ``criterion(label, passed, detail)``."""
    log = request.config.stash[_ACCEPTANCE_KEY]

    def check(label, passed, detail):
        passed = bool(passed)
        line = f"{'PASS' if passed else 'FAIL'}  {label}: {detail}"
        log.append(line)
        print(line)
        assert passed, line

    return check


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE_KEY, [])
    if log:
        terminalreporter.section("acceptance criteria")
        for line in log:
            terminalreporter.write_line(line)
