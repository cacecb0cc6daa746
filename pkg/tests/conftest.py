import sys

import pytest

from monoidtopos.config import load_config
from monoidtopos.functors import Section
from monoidtopos.monoid import MonoidMorphism, parse_presentation
from monoidtopos.mset import product, regular, restrict_scalars


@pytest.fixture(scope="session")
def M():
    return parse_presentation("monoid M = < e, x | e e = e, x e = x >")


@pytest.fixture(scope="session")
def N():
    return parse_presentation("monoid N = < a | >")


@pytest.fixture(scope="session")
def phi(M, N):
    return MonoidMorphism("phi", M, N, {"e": (), "x": ("a",)})


@pytest.fixture(scope="session")
def sigma(phi):
    return Section("sigma", phi, ("e",))


@pytest.fixture(scope="session")
def MM(M):
    return regular(M)


@pytest.fixture(scope="session")
def NN(N, phi):
    return restrict_scalars(regular(N), phi, "NN")


@pytest.fixture(scope="session")
def P(MM, NN):
    return product(MM, NN, "P")


@pytest.fixture(scope="session")
def counterexample_cfg():
    return load_config("paper.cfg")


@pytest.fixture(scope="session")
def identity_cfg():
    return load_config("identity.cfg")


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None:
        return
    terminalreporter.section("acceptance criteria")
    for n in acceptance.CRITERIA:
        line = acceptance.RESULTS.get(n, f"FAIL criterion {n}: not run or crashed before a verdict")
        terminalreporter.write_line(line)
