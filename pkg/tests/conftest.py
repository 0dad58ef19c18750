from functools import lru_cache

import pytest
from hypothesis import settings

from hlgalleries import AffineWeyl, HeckeAlgebra, ParamSpec, RootDatum

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SMALL_TYPES = [("A1", "adjoint"), ("A1", "simply_connected"), ("A2", "adjoint"),
               ("A2", "simply_connected"), ("C2", "adjoint"), ("C2", "simply_connected"),
               ("G2", "adjoint")]
RANK3_TYPES = [("A3", "adjoint"), ("A3", "simply_connected"), ("B3", "adjoint"),
               ("B3", "simply_connected"), ("C3", "simply_connected")]


@lru_cache(maxsize=None)
def datum(t, lattice="adjoint"):
    return RootDatum(t, lattice)


@lru_cache(maxsize=None)
def aff(t, lattice="adjoint"):
    return AffineWeyl(datum(t, lattice))


@lru_cache(maxsize=None)
def hecke(t, lattice="adjoint", d=None):
    a = aff(t, lattice)
    return HeckeAlgebra(ParamSpec(a, dict(d) if d else None))


@pytest.fixture(scope="session")
def A1():
    return aff("A1")


@pytest.fixture(scope="session")
def A2():
    return aff("A2")


# acceptance criteria report: filled by tests/test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {text}")
