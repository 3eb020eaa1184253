import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import cycle3_selfinjective

from relhomalg.rep import cokernel, projective, socle, simple
from relhomalg.relative import SubbifunctorF, SummandDecl


@pytest.fixture(scope="session")
def L7():
    """The 3-cycle algebra with all length-3 paths zero (dim 9)."""
    return cycle3_selfinjective()


def quotient_by_socle(algebra, i):
    p = projective(algebra, i)
    _, incl = socle(p)
    return cokernel(incl)[0]


@pytest.fixture(scope="session")
def L7_modules(L7):
    mods = {}
    for i in (1, 2, 3):
        mods[f"P{i}"] = projective(L7, i)
        mods[f"S{i}"] = simple(L7, i)
        mods[f"M{i}"] = quotient_by_socle(L7, i)
    return mods


@pytest.fixture(scope="session")
def F7(L7, L7_modules):
    """The section-7 subbifunctor: P(F) = {P1, P2, P3, S2, S3, M2}."""
    names = ["P1", "P2", "P3", "S2", "S3", "M2"]
    return SubbifunctorF(L7, [SummandDecl(n, L7_modules[n]) for n in names])


@pytest.fixture(scope="session")
def F7_ordinary(L7, L7_modules):
    """G = Λ: the ordinary exact structure."""
    return SubbifunctorF(L7, [SummandDecl(f"P{i}", L7_modules[f"P{i}"]) for i in (1, 2, 3)])


@pytest.fixture(scope="session")
def corpus7(L7_modules):
    names = ["P1", "P2", "P3", "M1", "M2", "M3", "S1", "S2", "S3"]
    return [(n, L7_modules[n]) for n in names]
