import numpy as np
import pytest

from clusterx.errors import InputError, SeedError, TruncationError
from clusterx.laurent import LaurentPoly, PosRational
from clusterx.seed import (Seed, SeedIso, a_n_seed, cartan_matrix,
                           check_involution, compose_maps, dynkin_seed,
                           explore_exchange_graph, find_isomorphism,
                           identity_map, mutate_seed, mutate_x, random_seed,
                           subseed, symmetrizer)
from clusterx.test.util import seeded_rng


def test01_construct(a2_seed):
    assert a2_seed.n == 2
    assert a2_seed.epsilon == ((0, -1), (1, 0))
    assert a2_seed.labels == ('X0', 'X1')
    assert a2_seed.to_json()['epsilon'] == [[0, -1], [1, 0]]

    with pytest.raises(SeedError):
        Seed.from_epsilon([[0, 1], [1, 0]])
    with pytest.raises(SeedError):
        Seed.from_epsilon([[0, 1], [-1, 0]], labels=['a', 'a'])


def test02_symmetrizer(b2_seed):
    assert b2_seed.epsilon == ((0, -1), (2, 0))
    assert b2_seed.d == (2, 1)
    assert symmetrizer([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]) == (1, 1, 1)
    with pytest.raises(SeedError):
        symmetrizer([[0, 1], [1, 0]])


def test03_cartan_errors():
    with pytest.raises(InputError):
        cartan_matrix('D', 3)
    with pytest.raises(InputError):
        cartan_matrix('G', 3)
    with pytest.raises(InputError):
        dynkin_seed('E', 6)


def test04_mutate(a2_seed):
    s = mutate_seed(a2_seed, 0)
    assert s.epsilon == ((0, 1), (-1, 0))
    images = mutate_x(a2_seed, 0)
    assert images['X0'] == PosRational.from_text('1/X0')
    assert images['X1'] == PosRational.from_text('X0*X1/(1 + X0)')

    with pytest.raises(InputError):
        mutate_seed(a2_seed, 2)


@seeded_rng(3)
def test05_involution(rng):
    for _ in range(50):
        s = random_seed(rng, int(rng.integers(1, 5)))
        eps = np.array(s.epsilon)
        assert np.abs(eps).max(initial=0) <= 3
        assert check_involution(s, int(rng.integers(0, s.n)))


def test06_pentagon(a2_seed):
    current, composite = a2_seed, identity_map(a2_seed.labels)
    for k in (0, 1, 0, 1, 0):
        composite = compose_maps(mutate_x(current, k), composite, True)
        current = mutate_seed(current, k)
    x0 = LaurentPoly.variable('X0', ('X0', 'X1'))
    x1 = LaurentPoly.variable('X1', ('X0', 'X1'))
    assert composite['X0'] == x1
    assert composite['X1'] == x0


def test07_isomorphism(a3_seed):
    flipped = Seed.from_epsilon([[-x for x in r] for r in a3_seed.epsilon])
    iso = find_isomorphism(a3_seed, flipped, use_frame=False)
    assert iso == SeedIso((2, 1, 0))
    # the tropical frames tell the two apart
    assert find_isomorphism(a3_seed, flipped) is None

    p = SeedIso((1, 2, 0))
    assert p.then(p.inverse()).is_identity()
    assert p.apply_to_coords(('a', 'b', 'c')) == ('c', 'a', 'b')


def test08_subseed(a3_seed):
    s = subseed(a3_seed, [0, 2])
    assert s.epsilon == ((0, 0), (0, 0))
    assert s.labels == ('X0', 'X2')
    with pytest.raises(InputError):
        subseed(a3_seed, [])
    with pytest.raises(InputError):
        subseed(a3_seed, [3])


@pytest.mark.parametrize('kind, rank, count', [
    ('A', 1, 2), ('A', 2, 5), ('A', 3, 14), ('B', 2, 6), ('C', 2, 6),
    ('G', 2, 8)])
def test09_finite_type_counts(kind, rank, count):
    g = explore_exchange_graph(dynkin_seed(kind, rank))
    assert len(g) == count
    assert not g.truncated
    assert len(g.edges) == count * rank


@pytest.mark.slow
@pytest.mark.parametrize('kind, rank, count', [
    ('A', 4, 42), ('A', 5, 132), ('B', 3, 20), ('D', 4, 50)])
def test10_finite_type_counts_large(kind, rank, count):
    assert len(explore_exchange_graph(dynkin_seed(kind, rank))) == count


def test11_truncation(kronecker_seed):
    g = explore_exchange_graph(kronecker_seed, max_nodes=20)
    assert g.truncated
    assert len(g) == 20
    with pytest.raises(TruncationError):
        g.require_finite()
    with pytest.raises(InputError):
        explore_exchange_graph(kronecker_seed, max_nodes=0)


def test12_transitions_close(a3_seed):
    g = explore_exchange_graph(a3_seed)
    assert g.check_cycles() == []
    assert g.transition(g.order[-1]) is g.transition(g.order[-1])


def test13_export(a2_seed):
    g = explore_exchange_graph(a2_seed)
    G = g.to_networkx()
    assert G.number_of_nodes() == 5
    assert G.number_of_edges() == 10
    doc = g.to_json(transitions=True)
    assert doc['node_count'] == 5
    assert len(doc['edges']) == 10
    assert doc['nodes'][0]['transition'] == {'X0': '1*X0', 'X1': '1*X1'}


def test14_parallel_exploration(a3_seed):
    g1 = explore_exchange_graph(a3_seed)
    g2 = explore_exchange_graph(a3_seed, workers=3)
    assert g1.to_json() == g2.to_json()


def test15_path_from_root(a2_seed):
    g = explore_exchange_graph(a2_seed)
    for node in g.order[1:]:
        s = a2_seed
        for _, k in g.path_from_root(node):
            s = mutate_seed(s, k)
        assert find_isomorphism(s, g.seed(node)) is not None
    with pytest.raises(InputError):
        g.seed('99')


def test16_transition_normalization(a3_seed):
    g = explore_exchange_graph(a3_seed)
    for node in g.order:
        lazy, reduced = g.transition(node), g.transition(node, True)
        assert lazy is g.transition(node, normalize=False)
        assert lazy is not reduced
        assert set(lazy) == set(reduced)
        for v in lazy:
            assert lazy[v] == reduced[v]


def test17_torus_mutation(punctured_torus_seed):
    s = punctured_torus_seed
    assert s.epsilon == ((0, 2, -2), (-2, 0, 2), (2, -2, 0))
    assert mutate_seed(s, 0).epsilon == ((0, -2, 2), (2, 0, -2), (-2, 2, 0))

    x0 = LaurentPoly.variable('X0', s.labels)
    x1 = LaurentPoly.variable('X1', s.labels)
    one = LaurentPoly.constant(1, s.labels)
    images = mutate_x(s, 1)
    # eps_01 = 2: X0 -> X0 (1 + X1^-1)^-2
    assert images['X0'] == PosRational(x0 * x1 ** 2, (one + x1) ** 2)
    assert images['X1'] == PosRational(one, x1)


@pytest.mark.parametrize('k', [0, 1, 2])
def test18_torus_involution(punctured_torus_seed, k):
    assert check_involution(punctured_torus_seed, k)


def test19_torus_truncation(punctured_torus_seed):
    g = explore_exchange_graph(punctured_torus_seed, max_nodes=50)
    assert g.truncated
    assert len(g) == 50
    with pytest.raises(TruncationError):
        g.require_finite()
