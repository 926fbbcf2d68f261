import pytest

from polyih.builtins import builtin_polytope
from polyih.resolution import ResolutionConfig
from polyih.uniform import resolution_forms

SIMPLE_BUILTINS = ["cube(3)", "simplex(3)", "simplex(4)", "prism", "simplex(2)", "cube(2)"]
NONSIMPLE_BUILTINS = ["pyr-square", "octahedron", "pyr(pyr-square)"]


@pytest.fixture(scope="session")
def pyr():
    return builtin_polytope("pyr-square")


@pytest.fixture(scope="session")
def octa():
    return builtin_polytope("octahedron")


@pytest.fixture(scope="session")
def pyr_family(pyr):
    F = resolution_forms(pyr, ResolutionConfig(), holdout=24)
    F.calibrate(["N", "E", "B"])
    return F


@pytest.fixture(scope="session")
def octa_family(octa):
    return resolution_forms(octa, ResolutionConfig(sample_count=512), holdout=24)


@pytest.fixture(scope="session")
def pyr4_family():
    return resolution_forms(builtin_polytope("pyr(pyr-square)"), ResolutionConfig(sample_count=64), holdout=8)
