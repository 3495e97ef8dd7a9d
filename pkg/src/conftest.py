import pytest

from clusterx.test.seeds import (a2_seed, a3_seed, b2_seed,  # noqa: F401
                                 hexagon_fan, hexagon_zigzag,
                                 kronecker_seed, pentagon_chord_lamination,
                                 pentagon_lamination,
                                 punctured_torus_seed)
from clusterx.test.util import tmpfile  # noqa: F401


def generate_fixture(kind, rank):
    @pytest.fixture()
    def fixture():
        from clusterx.seed import dynkin_seed
        return dynkin_seed(kind, rank)
    globals()['seed_%s%i' % (kind.lower(), rank)] = fixture


for kind, rank in [('A', 1), ('A', 4), ('B', 3), ('C', 2), ('D', 4),
                   ('G', 2)]:
    generate_fixture(kind, rank)
del generate_fixture


@pytest.fixture(params=[4, 5, 6])
def polygon_size(request):
    return request.param


@pytest.fixture(autouse=True)
def clusterx_threads(monkeypatch):
    monkeypatch.delenv('CLUSTERX_THREADS', raising=False)


def pytest_configure(config):
    markexpr = config.getoption("markexpr", 'False')
    if 'not slow' not in markexpr:
        print("""\033[93mRunning the full test suite. To skip slow tests, please run 'pytest -m "not slow"' \033[0m""")  # noqa: E501

    config.addinivalue_line(
        "markers", "slow: marks tests as slow (deselect with -m 'not slow')"
    )
