import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from omlat import glue, glue_n, powerset, two  # noqa: E402
from omlat.lattice import benzene, chain, diamond, hexagon, pentagon  # noqa: E402


@pytest.fixture
def mo2():
    return glue(powerset(2), powerset(2))


def lattice_corpus():
    """Named lattices used by the exhaustive law tests."""
    out = {
        "chain2": chain(2),
        "chain3": chain(3),
        "diamond": diamond(),
        "n5": pentagon(),
        "hexagon": hexagon(),
        "two": two().lattice.lattice,
    }
    for k in (1, 2, 3, 4):
        out[f"2^{k}"] = powerset(k).lattice.lattice
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            out[f"glue{a}{b}"] = glue(powerset(a), powerset(b)).carrier.lattice
    out["mo3"] = glue_n([powerset(2)] * 3).carrier.lattice
    return out


def ortho_corpus():
    out = {"o6": benzene()}
    for k in (1, 2, 3):
        out[f"2^{k}"] = powerset(k).lattice
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            out[f"glue{a}{b}"] = glue(powerset(a), powerset(b)).carrier
    return out


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # lets fixtures see whether the test body passed
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)
