"""Test fixtures containing common seeds, triangulations and laminations."""
import pytest

from clusterx.lamination import Lamination
from clusterx.polygon import Triangulation, fan_triangulation
from clusterx.seed import Seed, a_n_seed, dynkin_seed, torus_seed


@pytest.fixture
def a2_seed():
    return make_a2_seed()
def make_a2_seed():
    return a_n_seed(2)


@pytest.fixture
def a3_seed():
    return make_a3_seed()
def make_a3_seed():
    return a_n_seed(3)


@pytest.fixture
def b2_seed():
    return make_b2_seed()
def make_b2_seed():
    s = dynkin_seed('B', 2)
    assert s.d != (1, 1)
    return s


@pytest.fixture
def kronecker_seed():
    return make_kronecker_seed()
def make_kronecker_seed():
    # affine A_1^(1): infinite exchange graph
    return Seed.from_epsilon([[0, 2], [-2, 0]])


@pytest.fixture
def punctured_torus_seed():
    return torus_seed()


@pytest.fixture
def hexagon_fan():
    return make_hexagon_fan()
def make_hexagon_fan():
    return fan_triangulation(6)


@pytest.fixture
def hexagon_zigzag():
    return make_hexagon_zigzag()
def make_hexagon_zigzag():
    return Triangulation(6, frozenset([(2, 6), (3, 6), (3, 5)]))


@pytest.fixture
def pentagon_lamination():
    return make_pentagon_lamination()
def make_pentagon_lamination():
    # coordinates (-1, 0) on the caterpillar tree of the pentagon
    return Lamination(5, {(1, 4): 1, (1, 2): -1, (2, 3): 1, (3, 4): -1})


@pytest.fixture
def pentagon_chord_lamination():
    return make_pentagon_chord_lamination()
def make_pentagon_chord_lamination():
    # diagonal (1, 3) closed up by the sides (3, 4), (4, 5), (5, 1)
    return Lamination(5, {(1, 3): 1, (3, 4): -1, (4, 5): 1, (5, 1): -1})
