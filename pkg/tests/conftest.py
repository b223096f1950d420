import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.REPORT):
        terminalreporter.write_line(mod.summary_line(k))


import pytest

from siltloc.textfmt import load_bundled


@pytest.fixture(scope="session")
def ka2():
    return load_bundled("kA2")


@pytest.fixture(scope="session")
def ka3():
    return load_bundled("kA3")


@pytest.fixture(scope="session")
def kron():
    return load_bundled("kronecker")


@pytest.fixture(scope="session")
def dual():
    return load_bundled("dual")
