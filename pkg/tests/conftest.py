import pathlib

import pytest

from weldalex import ColoredTangle, parse_circuit, parse_diagram

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def load_tangle(name: str, mu: int = 0) -> ColoredTangle:
    d = parse_diagram((FIXTURES / f"{name}.tangle").read_text())
    d.require_valid()
    return ColoredTangle.of(d, mu)


def load_circuit(name: str):
    c = parse_circuit((FIXTURES / f"{name}.circuit").read_text())
    c.require_valid()
    return c


@pytest.fixture
def sigma():
    return load_tangle("sigma")


@pytest.fixture
def tau():
    return load_tangle("tau")


@pytest.fixture
def ex22():
    return load_tangle("ex22")


@pytest.fixture
def beta():
    return load_tangle("beta")


@pytest.fixture
def circuit_p():
    return load_circuit("P")


@pytest.fixture
def circuit_q():
    return load_circuit("Q")


@pytest.fixture
def cap0():
    return load_circuit("cap0")
