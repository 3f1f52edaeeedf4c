import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from gdh.core import TheorySignature  # noqa: E402
from gdh.perm_group import enumerate_subgroups  # noqa: E402


@pytest.fixture(scope="session")
def s3():
    return TheorySignature.symmetric(3)


@pytest.fixture(scope="session")
def t21():
    return TheorySignature.two_to_one()


@pytest.fixture(scope="session")
def triv3():
    return TheorySignature.trivial(3)


@pytest.fixture(scope="session")
def z3():
    return TheorySignature.from_generators(3, [(1, 2, 0)])


@pytest.fixture(scope="session")
def r3_theories():
    return [TheorySignature(3, g) for g in enumerate_subgroups(3)]


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion; the line is printed at the end."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def record(number, ok, detail):
        lines.append((number, f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"))
        print(lines[-1][1])
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
