import random

import pytest

from ordlist.curve import default_context
from ordlist.intcom import TEST_MODULUS_BITS, ic_setup
from ordlist.zkl import test_profile_setup


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture(scope="session")
def ctx():
    return default_context()


@pytest.fixture(scope="session")
def ic():
    """Small insecure integer-commitment parameters with their trapdoor."""
    return ic_setup(TEST_MODULUS_BITS, random.Random(7), insecure=True)


@pytest.fixture(scope="session")
def zkl_pk():
    return test_profile_setup(random.Random(11))


def elements(n, width=6, prefix="e"):
    return [f"{prefix}{i:0{width}d}".encode() for i in range(n)]


_CRITERIA_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(number, passed, detail)``."""
    lines = request.config.stash.setdefault(_CRITERIA_KEY, [])

    def record(number, passed, detail):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_CRITERIA_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
