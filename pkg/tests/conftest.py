"""Global fixtures for the rt_surfaces tests."""
# Fixtures that are defined in conftest.py are available across all tests. You can also
# define fixtures within a particular test file to scope them locally.
#
# Random expression trees and sample points come from the hypothesis strategies in
# tests/common.py; the fixtures below hold the fixed generator pairs the hand-computed
# values refer to.
#
# See here for more info: https://docs.pytest.org/en/latest/fixture.html
import math

import pytest

from rt_surfaces.const import REFERENCE_PAIRS
from rt_surfaces.expression import parse
from rt_surfaces.models import GeneratorPair, GridSpec

from tests.common import pair


@pytest.fixture(name="unit_sphere")
def unit_sphere_fixture() -> GeneratorPair:
    """Return f = 0, g = z, the unit sphere."""
    return pair("0", "z")


@pytest.fixture(name="identity_pair")
def identity_pair_fixture() -> GeneratorPair:
    """Return f = z, g = z."""
    return pair("z", "z")


@pytest.fixture(name="square_f_pair")
def square_f_pair_fixture() -> GeneratorPair:
    """Return f = z^2, g = z."""
    return pair("z^2", "z")


@pytest.fixture(name="square_g_pair")
def square_g_pair_fixture() -> GeneratorPair:
    """Return f = z, g = z^2."""
    return pair("z", "z^2")


@pytest.fixture(name="reference_pairs")
def reference_pairs_fixture() -> list[GeneratorPair]:
    """Return the three generator pairs used as references."""
    return [GeneratorPair(parse(f), parse(g)) for f, g in REFERENCE_PAIRS]


@pytest.fixture(name="sphere_of_radius")
def sphere_of_radius_fixture():
    """Return a factory for f = ln r, g = z."""

    def factory(radius: float) -> GeneratorPair:
        return pair(repr(math.log(radius)), "z")

    return factory


@pytest.fixture(name="reference_grid")
def reference_grid_fixture() -> GridSpec:
    """Return the 33 x 33 grid on [-0.4, 0.4]^2."""
    return GridSpec(-0.4, 0.4, -0.4, 0.4, 33, 33)


@pytest.fixture(name="oracle_grid")
def oracle_grid_fixture() -> GridSpec:
    """Return the 9 x 9 grid on [-0.4, 0.4]^2 used for oracle comparisons."""
    return GridSpec(-0.4, 0.4, -0.4, 0.4, 9, 9)
