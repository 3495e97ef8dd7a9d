"""
Property checks run by ``clusterx verify``.

Every check is a generator that yields one ``(ok, description)`` pair per
case. ``PropertyCheck`` runs it, collects messages and counts cases; the
suites below group the checks by module.
"""

import logging
import time
import zlib
from itertools import combinations
from math import log as ln

import numpy as np

from clusterx.completion import match_associahedron, strata_poset
from clusterx.errors import InputError
from clusterx.laurent import (LaurentPoly, PosRational, is_laurent,
                              numeric_limit_check, tropicalize)
from clusterx.lamination import (canonical_in_chart, canonical_value,
                                 check_positivity, delta_in_chart,
                                 enumerate_laminations, enumerate_trees,
                                 evaluation_rank, laminations_from_coords,
                                 numeric_section, random_positive_point,
                                 tree_coords, vector_section)
from clusterx.math import catalan
from clusterx.polygon import (Configuration, all_diagonals,
                              alternating_partition, apply_mobius,
                              associahedron_faces, chart_coords, chart_point,
                              enumerate_triangulations, is_cyclic_interval,
                              polygon_exchange_graph, random_configuration,
                              random_mobius, stasheff_divisor_member,
                              verify_flip_mutation)
from clusterx.seed import (a_n_seed, check_involution, compose_maps,
                           explore_exchange_graph, identity_map, mutate_seed,
                           mutate_x, random_seed)
from clusterx.torus import (BASE_TRIANGLE, PLWord, act_s, act_t, apply_pl,
                            flip_z, group_elements, interior_sides_ok,
                            orbit_patch)
from clusterx.tropical import (SpecialCone, TropicalPoint, pl_mutate,
                               pl_mutate_coords)

log = logging.getLogger(__name__)

# coordinate bound of the lamination checks
DEFAULT_BOUND = 3


class PropertyCheck:
    """
    Runs one property over its cases.

    Parameter ``name`` (str):
        Name reported in the verification report.

    Parameter ``cases`` (function):
        Generator function taking a ``VerifyContext`` and yielding
        ``(ok, description)`` pairs.

    Notes:

    messages: string
        Failures and the final summary, one per line.

    cases: int
        Number of cases seen by ``run()``.
    """

    def __init__(self, name, cases):
        self.name = name
        self.func = cases
        self.messages = ''
        self.fail = False
        self.cases = 0

    def run(self, ctx, max_messages=20):
        """
        Run every case. An exception ends the check and counts as a failure.

        Returns → bool:
            ``True`` when no case failed.
        """
        failed = 0
        start = time.perf_counter()
        try:
            for ok, what in self.func(ctx):
                self.cases += 1
                if not ok:
                    failed += 1
                    self.fail = True
                    if failed <= max_messages:
                        self._log('Failure: %s' % what)
        except Exception as e:
            self.fail = True
            self._log('Failure: %s raised %s: %s'
                      % (self.name, type(e).__name__, e))
        if failed > max_messages:
            self._log('(%i further failures omitted)'
                      % (failed - max_messages))
        self._log('%s: %i case(s), %i failure(s)'
                  % (self.name, self.cases, failed))
        log.info('%s: %i cases in %.2f s%s', self.name, self.cases,
                 time.perf_counter() - start, ' (FAILED)' if self.fail else '')
        return not self.fail

    def to_json(self):
        return {'name': self.name, 'passed': not self.fail,
                'cases': self.cases,
                'messages': self.messages.splitlines()}

    def _log(self, msg):
        self.messages += msg + '\n'


class VerifyContext:
    """Caps shared by the checks; every check draws from its own RNG."""

    def __init__(self, rng_seed=0, size_cap=6, samples=20, workers=1,
                 bound=DEFAULT_BOUND):
        self.rng_seed = rng_seed
        self.size_cap = size_cap
        self.bound = bound
        self.samples = samples
        self.workers = workers

    def rng(self, name):
        return np.random.default_rng([self.rng_seed,
                                      zlib.crc32(name.encode())])


# ---------------------------------------------------------------------- #
#  laurent
# ---------------------------------------------------------------------- #

def _random_positive_poly(rng, vars, terms=3, spread=2):
    return LaurentPoly({tuple(int(e) for e in rng.integers(-spread,
                                                           spread + 1,
                                                           len(vars))):
                        int(rng.integers(1, 6)) for _ in range(terms)}, vars)


def check_exact_division(ctx):
    rng = ctx.rng('exact_division')
    vars = ('X0', 'X1', 'X2')
    for _ in range(ctx.samples):
        p = _random_positive_poly(rng, vars)
        q = _random_positive_poly(rng, vars, terms=2)
        h = is_laurent(PosRational(p * q, q))
        yield (h is not None and h * q == p * q,
               'is_laurent((%s) * (%s) / (%s))' % (p, q, q))
        one = LaurentPoly.constant(1, vars)
        yield (is_laurent(PosRational(p, p * p + one)) is None,
               '%s / (%s) taken for a Laurent polynomial' % (p, p * p + one))
    g = explore_exchange_graph(a_n_seed(2))
    for node in g.order:
        for v, f in g.transition(node, True).items():
            h = is_laurent(f)
            yield (h is None or h * f.denominator == f.numerator,
                   'chart %s: quotient of %s' % (node, v))


def check_tropical_limit(ctx):
    rng = ctx.rng('tropical_limit')
    vars = ('X0', 'X1', 'X2')
    C = 60
    for _ in range(ctx.samples):
        f = PosRational(_random_positive_poly(rng, vars),
                        _random_positive_poly(rng, vars, terms=2))
        x = [int(v) for v in rng.integers(-3, 4, 3)]
        trop = tropicalize(f)(dict(zip(vars, x)))
        approx, = numeric_limit_check(f, x, [C])
        bound = max(ln(len(f.numerator) * f.numerator.max_coefficient()),
                    ln(len(f.denominator) * f.denominator.max_coefficient()))
        yield (abs(approx - float(trop)) <= bound / C + 1e-9,
               '%s at %s: %.6f against %s' % (f, x, approx, trop))


# ---------------------------------------------------------------------- #
#  seed
# ---------------------------------------------------------------------- #

def check_involution_random(ctx):
    rng = ctx.rng('involution')
    for _ in range(ctx.samples):
        s = random_seed(rng, int(rng.integers(1, 5)))
        k = int(rng.integers(0, s.n))
        yield check_involution(s, k), 'mutation twice at %i of %s' % (k, s)


def check_pentagon(ctx):
    s = a_n_seed(2)
    current, composite = s, identity_map(s.labels)
    for k in (0, 1, 0, 1, 0):
        composite = compose_maps(mutate_x(current, k), composite, True)
        current = mutate_seed(current, k)
    X0, X1 = s.labels
    yield (composite[X0] == PosRational(LaurentPoly.variable(X1, s.labels))
           and composite[X1] == PosRational(LaurentPoly.variable(X0,
                                                                 s.labels)),
           'five mutations of A2 do not swap the coordinates')
    yield (current.epsilon == tuple(tuple(-x for x in r) for r in s.epsilon),
           'five mutations of A2 do not transpose the exchange matrix')


def check_catalan_counts(ctx):
    for n in range(1, min(ctx.size_cap - 3, 5) + 1):
        g = explore_exchange_graph(a_n_seed(n), workers=ctx.workers)
        triangulations = len(enumerate_triangulations(n + 3))
        yield (len(g) == catalan(n + 1) == triangulations,
               'A%i: %i nodes, %i triangulations, Catalan %i'
               % (n, len(g), triangulations, catalan(n + 1)))


def check_cycles_close(ctx):
    for n in range(1, min(ctx.size_cap - 3, 3) + 1):
        bad = explore_exchange_graph(a_n_seed(n)).check_cycles()
        yield not bad, 'A%i: edges %s do not close' % (n, bad)


# ---------------------------------------------------------------------- #
#  tropical
# ---------------------------------------------------------------------- #

def check_pl_tropicalization(ctx):
    rng = ctx.rng('pl_tropicalization')
    for _ in range(ctx.samples):
        s = random_seed(rng, int(rng.integers(1, 5)))
        k = int(rng.integers(0, s.n))
        images = mutate_x(s, k)
        x = tuple(int(v) for v in rng.integers(-5, 6, s.n))
        point = dict(zip(s.labels, x))
        expected = tuple(tropicalize(images[v])(point) for v in s.labels)
        got = pl_mutate_coords(s, x, k)
        yield got == expected, '%s at %i of %s: %s against %s' % (
            x, k, s, got, expected)


def check_frozen_coordinate(ctx):
    rng = ctx.rng('frozen_coordinate')
    g = polygon_exchange_graph(min(ctx.size_cap, 6))
    for _ in range(ctx.samples):
        chart = g.order[int(rng.integers(0, len(g)))]
        k = int(rng.integers(0, g.rank))
        coords = [int(v) for v in rng.integers(0, 4, g.rank)]
        coords[k] = 0
        x = TropicalPoint(chart, tuple(coords))
        y = pl_mutate(x, k, g)
        _, iso = g.edges[(chart, k)]
        zero = frozenset(i for i, c in enumerate(coords) if c == 0)
        moved = SpecialCone(y.chart, frozenset(iso.perm[i] for i in zero),
                            g.rank)
        yield (moved.contains(y.coords)
               and sorted(y.coords) == sorted(coords),
               'chart %s point %s at %i gives %s' % (chart, coords, k,
                                                     y.coords))


# ---------------------------------------------------------------------- #
#  polygon
# ---------------------------------------------------------------------- #

def check_flip_mutation(ctx):
    rng = ctx.rng('flip_mutation')
    for size in range(4, min(ctx.size_cap, 7) + 1):
        for T in enumerate_triangulations(size):
            for E in T.ordered:
                yield (verify_flip_mutation(T, E, ctx.samples, rng),
                       'flip %s in %s' % (E, T))


def check_stasheff(ctx):
    for size in range(4, min(ctx.size_cap, 8) + 1):
        vertices = range(1, size + 1)
        for k in range(2, size - 1):
            for I in combinations(vertices, k):
                if 1 not in I:
                    continue
                J = [v for v in vertices if v not in I]
                expected = is_cyclic_interval(I, size) and \
                    is_cyclic_interval(J, size)
                yield (stasheff_divisor_member(I, J, size) == expected,
                       'partition %s | %s' % (list(I), J))
        if size % 2 == 0:
            I, J = alternating_partition(size)
            yield (not stasheff_divisor_member(I, J, size),
                   'alternating partition of the %i-gon accepted' % size)


def check_mobius_invariance(ctx):
    rng = ctx.rng('mobius')
    for size in range(4, min(ctx.size_cap, 7) + 1):
        Ts = enumerate_triangulations(size)
        for _ in range(ctx.samples):
            T = Ts[int(rng.integers(0, len(Ts)))]
            c = random_configuration(size, rng)
            m = random_mobius(rng)
            moved = Configuration(tuple(apply_mobius(m, x)
                                        for x in c.points))
            yield (chart_coords(T, c) == chart_coords(T, moved),
                   'cross ratios of %s change under %s' % (T, m))


# ---------------------------------------------------------------------- #
#  lamination
# ---------------------------------------------------------------------- #

def check_tree_roundtrip(ctx):
    rng = ctx.rng('tree_roundtrip')
    for size in range(4, min(ctx.size_cap, 7) + 1):
        for t in enumerate_trees(size):
            for _ in range(ctx.samples):
                draws = rng.integers(-ctx.bound, ctx.bound + 1, size - 3)
                coords = tuple(int(v) for v in draws)
                l = laminations_from_coords(coords, t)
                yield (tuple(tree_coords(l, t).values()) == coords,
                       'coordinates %s on the tree %s'
                       % (coords, list(t.ordered)))


def check_canonical_positivity(ctx):
    for size in range(4, min(ctx.size_cap, 7) + 1):
        for l in enumerate_laminations(size, ctx.bound):
            bad = check_positivity(l)
            yield not bad, '%r in charts %s' % (l, [str(T) for T in bad])


def check_canonical_numeric(ctx):
    rng = ctx.rng('canonical_numeric')
    for size in range(4, min(ctx.size_cap, 6) + 1):
        Ts = enumerate_triangulations(size)
        for l in enumerate_laminations(size, 1):
            for _ in range(max(1, ctx.samples // 4)):
                T = Ts[int(rng.integers(0, len(Ts)))]
                c = random_configuration(size, rng)
                f = canonical_in_chart(l, T)
                direct = canonical_value(l, c)
                yield (f.evaluate(chart_point(T, c)) == direct
                       == canonical_value(l, c, rng)
                       == canonical_value(l.shifted(1), c.shifted(1)),
                       '%r in chart %s at %s' % (l, T, c.to_json()['points']))


def check_red_section(ctx):
    rng = ctx.rng('red_section')
    for size in range(4, min(ctx.size_cap, 6) + 1):
        for T in enumerate_triangulations(size):
            c = random_configuration(size, rng)
            point = chart_point(T, c)
            numeric = numeric_section(T, c)
            vectors = vector_section(T, point)
            for F in all_diagonals(size):
                value = delta_in_chart(F, T).evaluate(point)
                u, v = vectors[F.i], vectors[F.j]
                yield (value == numeric(F) == u[0] * v[1] - u[1] * v[0],
                       'Delta%s in chart %s' % (F, T))


def check_basis_rank(ctx):
    rng = ctx.rng('basis_rank')
    for size in range(4, min(ctx.size_cap, 6) + 1):
        laminations = enumerate_laminations(size, 1)
        T = enumerate_triangulations(size)[0]
        points = [random_positive_point(T.labels(), rng)
                  for _ in range(len(laminations) + 5)]
        rank = evaluation_rank(laminations, T, points)
        yield (rank == len(laminations),
               'rank %i for %i laminations of the %i-gon'
               % (rank, len(laminations), size))


# ---------------------------------------------------------------------- #
#  completion
# ---------------------------------------------------------------------- #

def check_strata_counts(ctx):
    for n in range(1, min(ctx.size_cap - 3, 4) + 1):
        g = explore_exchange_graph(a_n_seed(n), workers=ctx.workers)
        counts = strata_poset(g).counts_by_codim()
        faces = [len(associahedron_faces(n + 3, k)) for k in range(n + 1)]
        yield counts == faces, 'A%i: strata %s, faces %s' % (n, counts, faces)
        yield match_associahedron(g, n + 3), 'A%i poset order' % n


def check_strata_transitivity(ctx):
    n = max(1, min(ctx.size_cap - 3, 3))
    poset = strata_poset(explore_exchange_graph(a_n_seed(n)))
    for s in poset.strata:
        if not s.zero_set:
            continue
        inner = strata_poset(explore_exchange_graph(s.seed),
                             with_geometry=False)
        closure = [0] * (len(s.zero_set) + 1)
        for t in poset.closure_of(s.id):
            closure[poset.strata[t].codim - s.codim] += 1
        yield (closure == inner.counts_by_codim(),
               'stratum %i: closure %s, subseed strata %s'
               % (s.id, closure, inner.counts_by_codim()))


# ---------------------------------------------------------------------- #
#  torus
# ---------------------------------------------------------------------- #

def check_torus_relations(ctx):
    rng = ctx.rng('torus_relations')
    yield flip_z((1, 1, -1)) == (-1, 1, 1), 'flip_z(1, 1, -1)'
    for _ in range(ctx.samples * 500):
        p = tuple(int(v) for v in rng.integers(-20, 21, 3))
        q = p
        for _ in range(3):
            q = act_s(act_t(q))
        yield (act_s(act_s(p)) == p and q == p
               and apply_pl('T', p) == act_t(p),
               'relations at %s' % (p,))
        w = PLWord.parse(''.join(rng.choice(list('STt'),
                                            int(rng.integers(1, 9)))))
        image = apply_pl(w, p)
        yield (sum(image) == sum(p) and apply_pl(w.inverse(), image) == p,
               '%s at %s gives %s' % (w, p, image))


def check_torus_patch(ctx):
    max_len = 6
    patch = orbit_patch(max_len)
    yield interior_sides_ok(patch, max_len), 'sides of the orbit patch'
    keys = [tri.key() for _, tri in patch]
    yield len(keys) == len(set(keys)), 'repeated triangles in the patch'
    base = frozenset(BASE_TRIANGLE)
    rotations = {PLWord(['R']), PLWord(['RR'])}
    for w in group_elements(max_len):
        if w.is_identity():
            continue
        moved = [apply_pl(w, v) for v in BASE_TRIANGLE]
        yield ((frozenset(moved) == base) == (w in rotations),
               'stabilizer of the base triangle at %s' % w)
        yield all(sum(v) == 1 for v in moved), '%s leaves the plane' % w


SUITES = {
    'laurent': [('exact_division', check_exact_division),
                ('tropical_limit', check_tropical_limit)],
    'seed': [('involution', check_involution_random),
             ('pentagon', check_pentagon),
             ('catalan_counts', check_catalan_counts),
             ('cycles_close', check_cycles_close)],
    'tropical': [('pl_tropicalization', check_pl_tropicalization),
                 ('frozen_coordinate', check_frozen_coordinate)],
    'polygon': [('flip_mutation', check_flip_mutation),
                ('stasheff', check_stasheff),
                ('mobius_invariance', check_mobius_invariance)],
    'lamination': [('tree_roundtrip', check_tree_roundtrip),
                   ('canonical_positivity', check_canonical_positivity),
                   ('canonical_numeric', check_canonical_numeric),
                   ('red_section', check_red_section),
                   ('basis_rank', check_basis_rank)],
    'completion': [('strata_counts', check_strata_counts),
                   ('strata_transitivity', check_strata_transitivity)],
    'torus': [('torus_relations', check_torus_relations),
              ('torus_patch', check_torus_patch)],
}


def run_suite(suite='all', rng_seed=0, size_cap=6, samples=20, workers=1,
              bound=DEFAULT_BOUND):
    """
    Run the checks of ``suite`` (or of every suite) and return the report.
    """
    if suite != 'all' and suite not in SUITES:
        raise InputError("unknown suite %r" % suite)
    names = list(SUITES) if suite == 'all' else [suite]
    ctx = VerifyContext(rng_seed, size_cap, samples, workers, bound)
    results, failures = [], []
    for name in names:
        for check_name, func in SUITES[name]:
            check = PropertyCheck(check_name, func)
            if not check.run(ctx):
                failures.append(check_name)
                log.warning(check.messages.rstrip())
            results.append(check.to_json())
    return {'rng_seed': rng_seed, 'suite': suite, 'size_cap': size_cap,
            'bound': bound,
            'results': results, 'failures': failures}
