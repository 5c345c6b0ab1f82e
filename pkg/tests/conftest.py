import pytest

from dronedock import ModuleSpec, calibrate, default_calibration_target, default_module_spec

_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[_ACCEPTANCE]


@pytest.fixture
def ideal():
    """Lossless module: no droop and no idle draw at unit link efficiency."""
    return ModuleSpec(r_droop=0.0, eta_link=1.0, p_idle=0.0)


@pytest.fixture(scope="session")
def calibrated():
    return calibrate(default_calibration_target(), default_module_spec())
