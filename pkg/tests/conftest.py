import pytest

from matroid_lrc import catalog
from matroid_lrc.codes import LinearCode
from matroid_lrc.matroid import from_matrix
from matroid_lrc.zlattice import cyclic_flats


@pytest.fixture(scope="session")
def dss_code():
    return LinearCode(catalog.dss_matrix())


@pytest.fixture(scope="session")
def dss_matroid(dss_code):
    return from_matrix(dss_code.generator)


@pytest.fixture(scope="session")
def dss_lattice(dss_matroid):
    return cyclic_flats(dss_matroid)


@pytest.fixture(scope="session")
def singleton_lattice():
    return catalog.singleton_optimal_lattice()


@pytest.fixture(scope="session")
def construction_z():
    return catalog.construction_z()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].lstrip("#"))):
            terminalreporter.write_line(line)
