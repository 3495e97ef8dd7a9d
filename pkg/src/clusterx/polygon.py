"""
Convex polygon combinatorics: chords, triangulations and flips, the
adjacency exchange matrix, cross-ratio charts on exact point
configurations, associahedron faces and Stasheff divisor membership.

Vertices are labeled ``1..size`` in clockwise order.
"""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

import networkx as nx

from clusterx.errors import InputError, PolygonError
from clusterx.math import as_fraction
from clusterx.seed import (ExchangeGraph, Seed, SeedIso, find_isomorphism,
                           mutate_seed, mutate_x)

log = logging.getLogger(__name__)


class Chord(NamedTuple):
    i: int
    j: int

    @classmethod
    def of(cls, a, b):
        a, b = int(a), int(b)
        if a == b:
            raise PolygonError("degenerate chord (%i, %i)" % (a, b))
        return cls(min(a, b), max(a, b))

    def is_side(self, size):
        return self.j == self.i + 1 or (self.i == 1 and self.j == size)

    def kind(self, size):
        return 'side' if self.is_side(size) else 'diagonal'

    def label(self):
        return 'X%i_%i' % (self.i, self.j)

    def __str__(self):
        return '(%i,%i)' % (self.i, self.j)


def sides(size):
    return [Chord(i, i + 1) for i in range(1, size)] + [Chord(1, size)]


def all_diagonals(size):
    return [Chord(i, j) for i in range(1, size + 1)
            for j in range(i + 2, size + 1) if not (i == 1 and j == size)]


def crosses(a, b):
    'Strict interior intersection of two chords in convex position'
    (p, q), (r, s) = sorted(a), sorted(b)
    return p < r < q < s or r < p < s < q


def crosses_by_betweenness(a, b):
    """
    Second formulation of the crossing predicate: chords without a common
    endpoint cross iff exactly one endpoint of ``b`` lies strictly between
    the endpoints of ``a``.
    """
    p, q = sorted(a)
    r, s = b
    if len({p, q, r, s}) < 4:
        return False
    return (p < r < q) != (p < s < q)


def _check_chord(c, size):
    if not (1 <= c.i < c.j <= size):
        raise PolygonError("chord %s is not a chord of the %i-gon"
                           % (c, size))


@dataclass(frozen=True)
class Triangulation:
    """
    Triangulation of the ``size``-gon by ``size - 3`` pairwise non-crossing
    diagonals. Diagonals are indexed in sorted order.
    """
    size: int
    diagonals: frozenset

    def __post_init__(self):
        if self.size < 3:
            raise PolygonError("polygons need at least 3 vertices")
        diags = frozenset(Chord.of(*c) for c in self.diagonals)
        object.__setattr__(self, 'diagonals', diags)
        for c in diags:
            _check_chord(c, self.size)
            if c.is_side(self.size):
                raise PolygonError("%s is a side, not a diagonal" % (c,))
        if len(diags) != self.size - 3:
            raise PolygonError("a triangulation of the %i-gon has %i "
                               "diagonals, got %i"
                               % (self.size, self.size - 3, len(diags)))
        for a, b in combinations(diags, 2):
            if crosses(a, b):
                raise PolygonError("diagonals %s and %s cross" % (a, b))

    @property
    def n(self):
        return self.size - 3

    @property
    def ordered(self):
        return tuple(sorted(self.diagonals))

    def index(self, chord):
        chord = Chord.of(*chord)
        try:
            return self.ordered.index(chord)
        except ValueError:
            raise PolygonError("%s is not a diagonal of %s" % (chord, self))

    def edges(self):
        return set(sides(self.size)) | set(self.diagonals)

    def labels(self):
        return tuple(c.label() for c in self.ordered)

    def to_json(self):
        return {'size': self.size,
                'diagonals': [list(c) for c in self.ordered]}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(int(obj['size']),
                       frozenset(Chord.of(*c) for c in obj['diagonals']))
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, PolygonError):
                raise InputError(str(e))
            raise InputError("invalid triangulation JSON (%s)" % e)

    def __str__(self):
        return '{%s}' % ', '.join(str(c) for c in self.ordered)


def triangles(T):
    'The ``size - 2`` triangles of ``T`` as sorted vertex triples'
    edges = T.edges()
    return sorted(t for t in combinations(range(1, T.size + 1), 3)
                  if Chord(t[0], t[1]) in edges and Chord(t[1], t[2]) in edges
                  and Chord(t[0], t[2]) in edges)


def quadrilateral(T, E):
    """
    The rectangle of ``T`` with diagonal ``E = (a, c)``, listed in cyclic order
    starting at ``a``: ``(a, b, c, d)`` with ``a < b < c``.
    """
    E = Chord.of(*E)
    if E not in T.diagonals:
        raise PolygonError("%s is not a diagonal of %s" % (E, T))
    a, c = E
    edges = T.edges()
    b = d = None
    for v in range(1, T.size + 1):
        if v in (a, c):
            continue
        if Chord.of(a, v) in edges and Chord.of(v, c) in edges:
            if a < v < c:
                b = v
            else:
                d = v
    if b is None or d is None:
        raise PolygonError("no rectangle around %s in %s" % (E, T))
    return a, b, c, d


def flip(T, E):
    'Replace ``E`` by the other diagonal of its rectangle'
    a, b, c, d = quadrilateral(T, E)
    new = (T.diagonals - {Chord.of(a, c)}) | {Chord.of(b, d)}
    return Triangulation(T.size, frozenset(new))


def adjacency_epsilon(T):
    """
    Exchange matrix indexed by the sorted diagonals of ``T``. Diagonals
    ``E`` and ``F`` that are sides of a common triangle with shared vertex
    ``v`` get ``eps_EF = +1`` when the far endpoint of ``E`` comes later than
    the far endpoint of ``F`` going clockwise from ``v``, and ``-1``
    otherwise. All other entries vanish.
    """
    diags = T.ordered
    index = {c: i for i, c in enumerate(diags)}
    n = len(diags)
    eps = [[0] * n for _ in range(n)]
    for t in triangles(T):
        for u, v, w in ((t[0], t[1], t[2]), (t[1], t[0], t[2]),
                        (t[2], t[0], t[1])):
            # u is the shared vertex of the sides (u, v) and (u, w)
            E, F = Chord.of(u, v), Chord.of(u, w)
            if E not in index or F not in index:
                continue
            pv, pw = (v - u) % T.size, (w - u) % T.size
            s = 1 if pv > pw else -1
            eps[index[E]][index[F]] = s
            eps[index[F]][index[E]] = -s
    return eps


def triangulation_seed(T):
    return Seed.from_epsilon(adjacency_epsilon(T), labels=T.labels())


def fan_triangulation(size, apex=1):
    others = [(apex - 1 + k) % size + 1 for k in range(2, size - 1)]
    return Triangulation(size, frozenset(Chord.of(apex, v) for v in others))


def zigzag_triangulation(size):
    """
    Triangulation whose triangles follow the vertex sequence
    ``1, 2, size, 3, size - 1, ...``.
    """
    seq, lo, hi = [1, 2], 3, size
    while lo <= hi:
        seq.append(hi)
        hi -= 1
        if lo <= hi:
            seq.append(lo)
            lo += 1
    diags = {Chord.of(seq[i + 1], seq[i + 2]) for i in range(size - 3)}
    return Triangulation(size, frozenset(diags))


@lru_cache(maxsize=None)
def _triangulate(vertices):
    if len(vertices) < 3:
        return (frozenset(),)
    first, last = vertices[0], vertices[-1]
    out = []
    for m in range(1, len(vertices) - 1):
        apex = vertices[m]
        extra = set()
        if m > 1:
            extra.add(Chord.of(first, apex))
        if m < len(vertices) - 2:
            extra.add(Chord.of(apex, last))
        for left in _triangulate(vertices[:m + 1]):
            for right in _triangulate(vertices[m:]):
                out.append(left | right | extra)
    return tuple(out)


def enumerate_triangulations(size):
    'All triangulations of the ``size``-gon by ear decomposition'
    if size < 3:
        raise InputError("enumerate_triangulations: size must be >= 3")
    found = _triangulate(tuple(range(1, size + 1)))
    return sorted((Triangulation(size, d) for d in found),
                  key=lambda T: T.ordered)


def flip_graph(size):
    """Triangulations joined by flips, as a ``networkx.Graph``."""
    G = nx.Graph()
    for T in enumerate_triangulations(size):
        G.add_node(T)
        for E in T.ordered:
            G.add_edge(T, flip(T, E), flipped=E)
    return G


def associahedron_faces(size, k):
    """
    Codimension ``k`` faces of the associahedron: all ``k``-sets of pairwise
    non-crossing diagonals, in lexicographic order.
    """
    if not 0 <= k <= size - 3:
        raise InputError("associahedron_faces: codimension %i out of range "
                         "for size %i" % (k, size))
    out = []

    def extend(start, chosen, diags):
        if len(chosen) == k:
            out.append(frozenset(chosen))
            return
        for idx in range(start, len(diags)):
            c = diags[idx]
            if all(not crosses(c, o) for o in chosen):
                chosen.append(c)
                extend(idx + 1, chosen, diags)
                chosen.pop()

    extend(0, [], all_diagonals(size))
    return out


# ---------------------------------------------------------------------- #
#  Stasheff divisor
# ---------------------------------------------------------------------- #

def _check_partition(I, J, size):
    I, J = set(I), set(J)
    if I & J or I | J != set(range(1, size + 1)):
        raise InputError("stasheff_divisor_member: {%s} and {%s} do not "
                         "partition 1..%i" % (sorted(I), sorted(J), size))
    if len(I) < 2 or len(J) < 2:
        raise InputError("stasheff_divisor_member: both parts need at least "
                         "two vertices")
    return I, J


def stasheff_divisor_member(I, J, size=None):
    """
    Whether the boundary divisor of the partition ``I | J`` belongs to the
    Stasheff divisor: no chord inside ``I`` crosses a chord inside ``J``.
    """
    if size is None:
        size = len(set(I) | set(J))
    I, J = _check_partition(I, J, size)
    chords_i = [Chord.of(a, b) for a, b in combinations(sorted(I), 2)]
    chords_j = [Chord.of(a, b) for a, b in combinations(sorted(J), 2)]
    return not any(crosses(a, b) for a in chords_i for b in chords_j)


def is_cyclic_interval(S, size):
    S = set(S)
    if not S or len(S) == size:
        return True
    starts = [v for v in S if (v - 2) % size + 1 not in S]
    return len(starts) == 1


def alternating_partition(size):
    if size % 2:
        raise InputError("alternating_partition: size must be even")
    return (set(range(1, size + 1, 2)), set(range(2, size + 1, 2)))


# ---------------------------------------------------------------------- #
#  Configurations and cross-ratio charts
# ---------------------------------------------------------------------- #

class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'INF'

    def __str__(self):
        return 'inf'

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def _diff(a, b):
    if a is INF and b is INF:
        raise PolygonError("coincident points at infinity")
    if a is INF:
        return 1
    if b is INF:
        return -1
    return a - b


def cross_ratio(y1, y2, y3, y4):
    """
    ``r+(y1, y2, y3, y4) = (y1 - y2)(y3 - y4) / ((y2 - y3)(y1 - y4))``, with
    the two factors containing infinity replaced by their limiting signs.
    """
    pts = [INF if y is INF else as_fraction(y) for y in (y1, y2, y3, y4)]
    for a, b in combinations(pts, 2):
        if a is not INF and b is not INF and a == b:
            raise PolygonError("cross_ratio: coincident points %s" % a)
    y1, y2, y3, y4 = pts
    num = Fraction(_diff(y1, y2)) * _diff(y3, y4)
    den = Fraction(_diff(y2, y3)) * _diff(y1, y4)
    return num / den


@dataclass(frozen=True)
class Configuration:
    """Pairwise distinct points of the projective line (rationals or INF)."""
    points: tuple

    def __post_init__(self):
        pts = tuple(INF if p is INF else as_fraction(p) for p in self.points)
        object.__setattr__(self, 'points', pts)
        finite = [p for p in pts if p is not INF]
        if len(set(finite)) != len(finite) or len(pts) - len(finite) > 1:
            raise PolygonError("configuration points must be pairwise "
                               "distinct")

    @property
    def size(self):
        return len(self.points)

    def __getitem__(self, vertex):
        'Point at 1-based vertex'
        return self.points[vertex - 1]

    def shifted(self, by=1):
        'Relabel vertices cyclically: new vertex ``v`` is old ``v + by``'
        k = by % self.size
        return Configuration(self.points[k:] + self.points[:k])

    def to_json(self):
        return {'points': ['inf' if p is INF else str(p)
                           for p in self.points]}

    @classmethod
    def from_json(cls, obj):
        try:
            pts = [INF if str(p).strip().lower() in ('inf', 'infinity')
                   else Fraction(str(p)) for p in obj['points']]
            return cls(tuple(pts))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            if isinstance(e, PolygonError):
                raise InputError(str(e))
            raise InputError("invalid configuration JSON (%s)" % e)


def chart_coords(T, c):
    """
    Cross-ratio coordinates ``X_E = r+(x_a, x_b, x_c, x_d)`` of the diagonals
    of ``T``, the rectangle being read from the lower endpoint of ``E``.
    """
    if c.size != T.size:
        raise InputError("chart_coords: configuration of %i points for a "
                         "%i-gon" % (c.size, T.size))
    out = {}
    for E in T.ordered:
        a, b, cc, d = quadrilateral(T, E)
        value = cross_ratio(c[a], c[b], c[cc], c[d])
        if value == 0:
            raise PolygonError("degenerate cross-ratio on %s" % (E,))
        out[E] = value
    return out


def chart_point(T, c):
    'Chart coordinates keyed by variable label'
    return {E.label(): v for E, v in chart_coords(T, c).items()}


def random_configuration(size, rng, positive=False, with_infinity=False,
                         spread=50):
    """
    Random exact configuration. ``positive`` yields points increasing along
    the polygon, i.e. a point of the positive part.
    """
    values = set()
    while len(values) < size:
        num = int(rng.integers(-spread, spread + 1))
        den = int(rng.integers(1, 8))
        values.add(Fraction(num, den))
    values = sorted(values)
    if not positive:
        values = [values[i] for i in rng.permutation(size)]
    if with_infinity:
        # infinity sits between the largest and the smallest value, so the
        # cyclic order survives when it takes the first slot
        values[0] = INF
    return Configuration(tuple(values))


def random_mobius(rng, spread=9):
    while True:
        a, b, c, d = (int(x) for x in rng.integers(-spread, spread + 1, 4))
        if a * d - b * c != 0:
            return a, b, c, d


def apply_mobius(m, x):
    a, b, c, d = m
    if x is INF:
        return INF if c == 0 else Fraction(a, c)
    den = c * x + d
    if den == 0:
        return INF
    return (a * x + b) / den


# ---------------------------------------------------------------------- #
#  Flips versus mutations
# ---------------------------------------------------------------------- #

def flip_permutation(T, E):
    """
    Index permutation from the order of ``T`` with ``E`` replaced in place by
    its flip to the sorted order of ``flip(T, E)``.
    """
    T2 = flip(T, E)
    k = T.index(E)
    a, b, c, d = quadrilateral(T, E)
    order = list(T.ordered)
    order[k] = Chord.of(b, d)
    target = T2.ordered
    return T2, SeedIso(tuple(target.index(x) for x in order))


def verify_flip_mutation(T, E, samples=20, rng=None):
    """
    Check that flipping ``E`` acts as mutation at the index of ``E``, for the
    exchange matrix and for the chart values of ``samples`` random exact
    configurations.
    """
    import numpy as np
    rng = rng if rng is not None else np.random.default_rng(0)
    E = Chord.of(*E)
    k = T.index(E)
    seed = triangulation_seed(T)
    T2, iso = flip_permutation(T, E)
    mutated = mutate_seed(seed, k).epsilon
    eps2 = adjacency_epsilon(T2)
    n = T.n
    for i in range(n):
        for j in range(n):
            if mutated[i][j] != eps2[iso.perm[i]][iso.perm[j]]:
                log.warning("flip %s in %s: exchange entry (%i, %i) differs",
                            E, T, i, j)
                return False
    images = mutate_x(seed, k)
    order = T.ordered
    for _ in range(samples):
        c = random_configuration(T.size, rng,
                                 with_infinity=bool(rng.integers(0, 2)))
        before = chart_point(T, c)
        after = chart_coords(T2, c)
        for i, label in enumerate(seed.labels):
            expected = after[T2.ordered[iso.perm[i]]]
            if images[label].evaluate(before) != expected:
                log.warning("flip %s in %s: coordinate of %s differs at %s",
                            E, T, order[i], c.to_json()['points'])
                return False
    return True


def polygon_exchange_graph(size, root=None):
    """
    Exchange graph whose nodes are the triangulations of the polygon, with
    flips as edges. ``payload`` maps every node to its triangulation.
    """
    root = root if root is not None else fan_triangulation(size)
    g = ExchangeGraph(triangulation_seed(root))
    g.payload['0'] = root
    node_of = {root: '0'}
    queue = deque([root])
    while queue:
        T = queue.popleft()
        u = node_of[T]
        for k, E in enumerate(T.ordered):
            T2, iso = flip_permutation(T, E)
            if T2 not in node_of:
                node_of[T2] = g.add_node(triangulation_seed(T2), parent=(u, k),
                                         payload=T2)
                queue.append(T2)
            g.edges[(u, k)] = (node_of[T2], iso)
    log.info("polygon exchange graph of the %i-gon: %i nodes", size, len(g))
    return g


def triangulation_for_seed(seed):
    """
    A triangulation whose adjacency matrix is isomorphic to the exchange
    matrix of ``seed``, with the isomorphism from seed indices to sorted
    diagonals; ``None`` when the seed is not of type A.
    """
    n = seed.n
    if any(x != 1 for x in seed.d):
        return None
    eps = seed.epsilon
    if any(abs(x) > 1 for row in eps for x in row):
        return None
    for T in enumerate_triangulations(n + 3):
        iso = find_isomorphism(seed, triangulation_seed(T), use_frame=False)
        if iso is not None:
            return T, iso
    return None
