import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vgroups.grp import cyclic, klein
from vgroups.quantale import builtin
from vgroups.vgrp import codiscrete_vgroup, discrete_vgroup


@pytest.fixture(scope="session")
def two():
    return builtin("two")


@pytest.fixture(scope="session")
def trunc3():
    return builtin("chain_trunc_sum", 3)


@pytest.fixture(scope="session")
def z2():
    return cyclic(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic(3)


@pytest.fixture(scope="session")
def v4():
    return klein()


@pytest.fixture(scope="session")
def z3_disc(two, z3):
    return discrete_vgroup(z3, two)


@pytest.fixture(scope="session")
def z3_codisc(two, z3):
    return codiscrete_vgroup(z3, two)


@pytest.fixture(scope="session")
def z2_disc(two, z2):
    return discrete_vgroup(z2, two)


@pytest.fixture(scope="session")
def z2_codisc(two, z2):
    return codiscrete_vgroup(z2, two)


# one summary line per acceptance criterion, filled in by test_acceptance
CRITERIA = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n} {'PASS' if ok else 'FAIL'}: {title} {detail}")
