import pytest

from veech.catalog import hex_torus, l_surface, mcmullen_genus2, square_torus
from veech.membership import SurfaceData

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def L():
    return l_surface()


@pytest.fixture(scope="session")
def L_data(L):
    return SurfaceData(L)


@pytest.fixture(scope="session")
def torus_data():
    return SurfaceData(square_torus())


@pytest.fixture(scope="session")
def hex_data():
    return SurfaceData(hex_torus())


@pytest.fixture(scope="session")
def mcm():
    return mcmullen_genus2("1+sqrt3")


@pytest.fixture(scope="session")
def mcm_data(mcm):
    return SurfaceData(mcm)


@pytest.fixture
def record():
    """Record an acceptance verdict; the terminal summary prints one line each."""
    def _record(number, ok, detail=""):
        ACCEPTANCE[number] = (bool(ok), detail)
        print("criterion %d: %s %s" % (number, "PASS" if ok else "FAIL", detail))
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line("criterion %d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))
