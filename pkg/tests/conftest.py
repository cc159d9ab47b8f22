import pytest

from nbhd_lab.pstack import Carrier, upward_closure
from nbhd_lab.space import NbdStructure


def stack(carrier, *sets):
    """``stack(C, "ab", "ac")`` is the stack generated by {a,b} and {a,c}."""
    return upward_closure(carrier, [list(s) for s in sets])


def structure(carrier, **gens):
    """Stacks default to principal; ``structure(C, a=("ab",))`` overrides one point."""
    return NbdStructure(
        carrier,
        [stack(carrier, *gens[x]) if x in gens else stack(carrier, x) for x in carrier],
    )


@pytest.fixture
def ab():
    return Carrier("ab")


@pytest.fixture
def abc():
    return Carrier("abc")


@pytest.fixture
def uv():
    return Carrier("uv")


ACCEPTANCE = []


def record(n, ok, detail):
    ACCEPTANCE.append(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    print(ACCEPTANCE[-1])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
