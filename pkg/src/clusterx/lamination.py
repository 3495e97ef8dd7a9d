"""
Integral A-laminations of a convex polygon, their coordinates on plane
trivalent trees, and the canonical functions ``I(l) = prod Delta_c^w(c)``
expanded in the cross-ratio charts of triangulations.
"""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

import sympy

from clusterx.errors import HalfIntegralError, InputError, LaminationError
from clusterx.laurent import LaurentPoly
from clusterx.polygon import (INF, Chord, Triangulation, all_diagonals,
                              crosses, enumerate_triangulations, flip,
                              quadrilateral, triangles)
from clusterx.tropical import valuation_of

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------- #
#  Laminations
# ---------------------------------------------------------------------- #

class Lamination:
    """
    Integer weights on the sides and on non-crossing diagonals of the
    ``size``-gon.

    Parameter ``weights`` (mapping):
        Chord to integer weight. Zero weights are dropped. Diagonal weights
        must be positive and the weights at every vertex must sum to zero.

    Parameter ``strict`` (bool):
        When ``False`` the vertex-sum condition is not checked; the other
        conditions always are.
    """

    def __init__(self, size, weights=None, strict=True):
        if size < 3:
            raise LaminationError("laminations live on polygons with at "
                                  "least 3 vertices")
        self.size = int(size)
        items = {}
        for c, w in (weights or {}).items():
            c = Chord.of(*c)
            if not 1 <= c.i < c.j <= self.size:
                raise LaminationError("chord %s outside the %i-gon"
                                      % (c, self.size))
            if int(w) != w:
                raise LaminationError("weight %s of %s is not an integer"
                                      % (w, c))
            if int(w):
                items[c] = items.get(c, 0) + int(w)
        self.weights = {c: items[c] for c in sorted(items) if items[c]}
        diags = [c for c in self.weights if not c.is_side(self.size)]
        for c in diags:
            if self.weights[c] < 0:
                raise LaminationError("diagonal %s has negative weight %i"
                                      % (c, self.weights[c]))
        for a, b in combinations(diags, 2):
            if crosses(a, b):
                raise LaminationError("weighted diagonals %s and %s cross"
                                      % (a, b))
        if strict:
            for v, total in enumerate(self.vertex_sums(), 1):
                if total:
                    raise LaminationError("weights at vertex %i sum to %i"
                                          % (v, total))

    @classmethod
    def zero(cls, size):
        return cls(size)

    def vertex_sums(self):
        sums = [0] * self.size
        for c, w in self.weights.items():
            sums[c.i - 1] += w
            sums[c.j - 1] += w
        return sums

    def weight(self, chord):
        return self.weights.get(Chord.of(*chord), 0)

    def is_zero(self):
        return not self.weights

    def shifted(self, by=1):
        'Relabel vertices cyclically: vertex ``v`` becomes ``v - by``'
        def move(v):
            return (v - 1 - by) % self.size + 1
        return Lamination(self.size, {Chord.of(move(c.i), move(c.j)): w
                                      for c, w in self.weights.items()})

    def __eq__(self, other):
        if not isinstance(other, Lamination):
            return NotImplemented
        return self.size == other.size and self.weights == other.weights

    def __hash__(self):
        return hash((self.size, tuple(self.weights.items())))

    def __repr__(self):
        body = ', '.join('%s: %i' % (c, w) for c, w in self.weights.items())
        return 'Lamination(%i, {%s})' % (self.size, body)

    def to_json(self):
        return {'size': self.size,
                'weights': [{'chord': list(c), 'w': w}
                            for c, w in self.weights.items()]}

    @classmethod
    def from_json(cls, obj):
        try:
            size = int(obj['size'])
            weights = {}
            for entry in obj['weights']:
                c = Chord.of(*entry['chord'])
                weights[c] = weights.get(c, 0) + int(entry['w'])
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, LaminationError):
                raise InputError(str(e))
            raise InputError("invalid lamination JSON (%s)" % e)
        try:
            return cls(size, weights)
        except LaminationError as e:
            raise InputError(str(e))


# ---------------------------------------------------------------------- #
#  Plane trees
# ---------------------------------------------------------------------- #

@dataclass(frozen=True)
class PlaneTree:
    """
    Plane trivalent tree with its ``size`` external vertices at the polygon
    vertices, stored by the splits of its internal edges. A split is the
    interval ``(p, q)`` of leaves on the side of the edge away from vertex 1,
    with ``2 <= p < q <= size``; internal edges are indexed in sorted order.
    """
    size: int
    splits: frozenset

    def __post_init__(self):
        splits = frozenset((int(p), int(q)) for p, q in self.splits)
        object.__setattr__(self, 'splits', splits)
        for p, q in splits:
            if not (2 <= p < q <= self.size and q - p + 1 <= self.size - 2):
                raise LaminationError("(%i, %i) is not an internal split of "
                                      "the %i-gon" % (p, q, self.size))
        if len(splits) != self.size - 3:
            raise LaminationError("a plane trivalent tree with %i leaves has "
                                  "%i internal edges, got %i"
                                  % (self.size, self.size - 3, len(splits)))
        for (a, b), (c, d) in combinations(splits, 2):
            nested = (a <= c and d <= b) or (c <= a and b <= d)
            if not nested and not (b < c or d < a):
                raise LaminationError("splits (%i, %i) and (%i, %i) are not "
                                      "compatible" % (a, b, c, d))

    @property
    def ordered(self):
        return tuple(sorted(self.splits))

    @classmethod
    def from_triangulation(cls, T):
        'Tree dual to ``T`` on the polygon whose vertices sit on the sides'
        return cls(T.size, frozenset((c.i + 1, c.j) for c in T.diagonals))

    def triangulation(self):
        return Triangulation(self.size, frozenset(Chord(p - 1, q)
                                                  for p, q in self.splits))

    @classmethod
    def caterpillar(cls, size):
        return cls(size, frozenset((2, q) for q in range(3, size)))

    def flip(self, split):
        'Tree of the triangulation flipped at the diagonal dual to ``split``'
        p, q = split
        if (p, q) not in self.splits:
            raise LaminationError("(%i, %i) is not a split of %s"
                                  % (p, q, list(self.ordered)))
        return PlaneTree.from_triangulation(
            flip(self.triangulation(), Chord(p - 1, q)))

    def to_json(self):
        return {'size': self.size, 'splits': [list(s) for s in self.ordered]}


def enumerate_trees(size):
    return [PlaneTree.from_triangulation(T)
            for T in enumerate_triangulations(size)]


def tree_coords(l, t=None):
    """
    Coordinate of ``l`` on every internal edge of ``t``: half the total
    weight of the chords whose endpoints lie on different sides of the edge.

    Returns a dict keyed by split, in edge order.
    """
    t = t if t is not None else PlaneTree.caterpillar(l.size)
    if t.size != l.size:
        raise InputError("tree_coords: tree of size %i for a lamination of "
                         "size %i" % (t.size, l.size))
    out = {}
    for p, q in t.ordered:
        inside = set(range(p, q + 1))
        total = sum(w for c, w in l.weights.items()
                    if (c.i in inside) != (c.j in inside))
        if total % 2:
            raise HalfIntegralError("half-integral coordinate %i/2 on edge "
                                    "(%i, %i); the vertex sums of %r do not "
                                    "vanish" % (total, p, q, l))
        out[(p, q)] = total // 2
    return out


def _split_values(coords, t):
    if hasattr(coords, 'items'):
        values = {tuple(k): int(v) for k, v in coords.items()}
        if set(values) != set(t.splits):
            raise InputError("coordinates %s do not match the splits of the "
                             "tree %s" % (sorted(values), list(t.ordered)))
        return values
    coords = [int(v) for v in coords]
    if len(coords) != len(t.splits):
        raise InputError("%i coordinates for a tree with %i internal edges"
                         % (len(coords), len(t.splits)))
    return dict(zip(t.ordered, coords))


def laminations_from_coords(coords, t):
    """
    The lamination with tree coordinates ``coords`` on ``t``.

    The coordinates give the total weight inside every split of ``t``; the
    weight inside the remaining cyclic intervals follows from the tropical
    exchange relation across flips, and chord weights are read off by
    inclusion-exclusion.
    """
    size = t.size
    # inside[c]: total weight of chords with both ends in (c.i, c.j]
    inside = {Chord(p - 1, q): -a for (p, q), a in
              _split_values(coords, t).items()}

    def g(x, y):
        x, y = (x - 1) % size + 1, (y - 1) % size + 1
        c = Chord(min(x, y), max(x, y)) if x != y else None
        if c is None or c.is_side(size):
            return 0
        return inside[c]

    wanted = len(all_diagonals(size))
    start = t.triangulation()
    seen, queue = {start}, deque([start])
    while queue and len(inside) < wanted:
        T = queue.popleft()
        for E in T.ordered:
            a, b, c, d = quadrilateral(T, E)
            other = Chord.of(b, d)
            if other not in inside:
                inside[other] = min(g(a, b) + g(c, d),
                                    g(b, c) + g(d, a)) - g(a, c)
            T2 = flip(T, E)
            if T2 not in seen:
                seen.add(T2)
                queue.append(T2)
    weights = {}
    for i in range(1, size + 1):
        for j in range(i + 1, size + 1):
            w = g(i - 1, j) - g(i, j) - g(i - 1, j - 1) + g(i, j - 1)
            if w:
                weights[Chord(i, j)] = w
    return Lamination(size, weights)


def enumerate_laminations(size, weight_bound, t=None):
    """
    All laminations whose coordinates on ``t`` (the caterpillar tree by
    default) lie in ``[-weight_bound, weight_bound]``.
    """
    if weight_bound < 0:
        raise InputError("enumerate_laminations: bound must be >= 0")
    t = t if t is not None else PlaneTree.caterpillar(size)
    span = range(-weight_bound, weight_bound + 1)
    return [laminations_from_coords(coords, t)
            for coords in product(span, repeat=size - 3)]


# ---------------------------------------------------------------------- #
#  Canonical functions
# ---------------------------------------------------------------------- #

def _lift(x):
    return (Fraction(1), Fraction(0)) if x is INF \
        else (Fraction(x), Fraction(1))


def _det(u, v):
    return u[0] * v[1] - u[1] * v[0]


class DeltaProduct:
    """
    Formal product ``prod Delta_c^e(c)`` of determinants of the vectors
    lifting the polygon vertices, with ``Delta_c`` taken in the order
    (lower, higher) of the endpoints of ``c``.
    """

    def __init__(self, size, exponents):
        self.size = size
        self.exponents = {Chord.of(*c): int(e)
                          for c, e in sorted(exponents.items()) if e}

    def degree_at(self, v):
        return sum(e for c, e in self.exponents.items() if v in c)

    def is_h_invariant(self):
        'Invariance under rescaling each vector separately'
        return all(self.degree_at(v) == 0 for v in range(1, self.size + 1))

    def evaluate(self, config, scales=None):
        """
        Value on the lift ``(x, 1)`` of a configuration (``(1, 0)`` for
        infinity), each vector optionally multiplied by ``scales[v - 1]``.
        """
        vectors = [_lift(x) for x in config.points]
        if scales is not None:
            vectors = [(s * a, s * b) for s, (a, b) in zip(scales, vectors)]
        value = Fraction(1)
        for c, e in self.exponents.items():
            D = _det(vectors[c.i - 1], vectors[c.j - 1])
            if D == 0:
                raise LaminationError("coincident points %i and %i"
                                      % (c.i, c.j))
            value *= D ** e
        return value

    def to_text(self):
        if not self.exponents:
            return '1'
        return ' * '.join('D%i_%i' % c if e == 1 else 'D%i_%i^%i' % (c + (e,))
                          for c, e in self.exponents.items())

    __str__ = to_text

    def to_json(self):
        return {'size': self.size,
                'factors': [{'chord': list(c), 'exp': e}
                            for c, e in self.exponents.items()]}


def canonical_function(l):
    """Formal H-invariant product attached to ``l``."""
    return DeltaProduct(l.size, l.weights)


def canonical_value(l, config, rng=None):
    """
    Value of the canonical function of ``l`` at ``config``. With ``rng`` the
    lift is rescaled by random nonzero rationals first.
    """
    scales = None
    if rng is not None:
        scales = [Fraction(int(rng.choice([-1, 1])) * int(rng.integers(1, 9)),
                           int(rng.integers(1, 9))) for _ in config.points]
    return canonical_function(l).evaluate(config, scales)


def red_coloring(T, prefer='min'):
    """
    Red edges of ``T`` and the order in which the dual tree is traversed.

    The root is the lexicographically smallest triangle (it contains vertex
    1) and gets three red edges. Every other triangle, entered through a
    diagonal, colors red the one of its two remaining edges with the
    smallest (``prefer='min'``) or largest (``prefer='max'``) endpoint pair.

    Returns ``(root, red, steps)`` with ``steps`` the list of
    ``(diagonal, triangle)`` pairs in traversal order.
    """
    if prefer not in ('min', 'max'):
        raise InputError("red_coloring: prefer must be 'min' or 'max'")
    tris = triangles(T)
    by_edge = {}
    for t in tris:
        for a, b in combinations(t, 2):
            by_edge.setdefault(Chord(a, b), []).append(t)
    root = tris[0]
    red = {Chord(a, b) for a, b in combinations(root, 2)}
    steps, seen, queue = [], {root}, deque([root])
    while queue:
        t = queue.popleft()
        for a, b in combinations(t, 2):
            E = Chord(a, b)
            for t2 in by_edge[E]:
                if t2 in seen:
                    continue
                seen.add(t2)
                outside = sorted(Chord(x, y) for x, y in combinations(t2, 2)
                                 if Chord(x, y) != E)
                red.add(outside[0] if prefer == 'min' else outside[-1])
                steps.append((E, t2))
                queue.append(t2)
    return root, frozenset(red), steps


class RedSection:
    """
    Expansion of the determinants ``Delta_F`` in the chart of ``T`` under
    the section normalizing the red edges to 1. Edges of ``T`` are Laurent
    monomials; other chords are expanded by the three-term Plücker relation
    and memoized on the instance.
    """

    def __init__(self, T, prefer='min'):
        self.T = T
        self.prefer = prefer
        self.labels = T.labels()
        self.root, self.red, self.steps = red_coloring(T, prefer)
        self.exponents = self._propagate()
        self._at_vertex = {}
        for t in triangles(T):
            for v in t:
                self._at_vertex.setdefault(v, []).append(t)
        self._cache = {c: LaurentPoly.monomial(e, 1, self.labels)
                       for c, e in self.exponents.items()}

    def _propagate(self):
        n = self.T.n
        index = {c: i for i, c in enumerate(self.T.ordered)}
        ell = {c: (0,) * n for c in self.red}
        for E, t2 in self.steps:
            a, b, c, d = quadrilateral(self.T, E)
            coeff = {Chord.of(a, b): 1, Chord.of(c, d): 1,
                     Chord.of(b, c): -1, Chord.of(a, d): -1}
            unknown = [x for x in coeff if x not in ell]
            if len(unknown) != 1:
                raise LaminationError("red section of %s is not determined "
                                      "at %s" % (self.T, E))
            u, = unknown
            rest = [0] * n
            for x, s in coeff.items():
                if x != u:
                    rest = [r + s * y for r, y in zip(rest, ell[x])]
            unit = [1 if i == index[E] else 0 for i in range(n)]
            ell[u] = tuple(coeff[u] * (e - r) for e, r in zip(unit, rest))
        return ell

    def delta(self, F):
        F = Chord.of(*F)
        found = self._cache.get(F)
        if found is not None:
            return found
        a, c = F
        for t in self._at_vertex[a]:
            b, d = (v for v in t if v != a)
            if crosses(Chord.of(b, d), F):
                break
        else:
            raise LaminationError("no triangle of %s at %i crosses %s"
                                  % (self.T, a, F))
        p, q, r, s = sorted((a, b, c, d))
        num = self.delta((p, q)) * self.delta((r, s)) \
            + self.delta((p, s)) * self.delta((q, r))
        result = num.divide_monomial(self.delta((b, d)))
        assert result is not None and result.is_positive(), \
            "expansion of Delta%s in chart %s is not positive" % (F, self.T)
        self._cache[F] = result
        return result


@lru_cache(maxsize=512)
def chart_section(T, prefer='min'):
    return RedSection(T, prefer)


def delta_in_chart(F, T, prefer='min'):
    'Laurent expansion of ``Delta_F`` in the chart of ``T``'
    F = Chord.of(*F)
    if not F.j <= T.size:
        raise InputError("delta_in_chart: %s is not a chord of the %i-gon"
                         % (F, T.size))
    return chart_section(T, prefer).delta(F)


def canonical_in_chart(l, T, prefer='min'):
    """
    The canonical function of ``l`` as a Laurent polynomial in the cross
    ratio coordinates of ``T``.
    """
    if l.size != T.size:
        raise InputError("canonical_in_chart: lamination of size %i in a "
                         "chart of size %i" % (l.size, T.size))
    section = chart_section(T, prefer)
    result = LaurentPoly.constant(1, section.labels)
    for c, w in l.weights.items():
        result = result * section.delta(c) ** w
    return result


def check_positivity(l, charts=None):
    """
    Charts (all triangulations by default) in which the expansion of ``l``
    has a negative coefficient or depends on the red-edge coloring.
    """
    charts = charts if charts is not None else \
        enumerate_triangulations(l.size)
    bad = []
    for T in charts:
        f = canonical_in_chart(l, T)
        if not f.is_nonnegative() or f != canonical_in_chart(l, T, 'max'):
            log.warning("canonical function of %r fails in chart %s", l, T)
            bad.append(T)
    return bad


def vector_section(T, point, prefer='min'):
    """
    Vectors realizing the red section at chart values ``point``: the root
    triangle gets ``(1, 0), (0, 1), (-1, 1)`` and every further vertex is
    solved from the two determinants with the edge it is attached across.
    """
    section = chart_section(T, prefer)
    values = {c: section.delta(c).evaluate(point) for c in section.exponents}

    def oriented(i, j):
        return values[Chord.of(i, j)] if i < j else -values[Chord.of(i, j)]

    p, q, r = section.root
    vectors = {p: (Fraction(1), Fraction(0)), q: (Fraction(0), Fraction(1)),
               r: (Fraction(-1), Fraction(1))}
    for E, t2 in section.steps:
        u, w = E
        m, = (v for v in t2 if v not in E)
        beta = oriented(u, m) / oriented(u, w)
        alpha = oriented(w, m) / oriented(w, u)
        vectors[m] = (alpha * vectors[u][0] + beta * vectors[w][0],
                      alpha * vectors[u][1] + beta * vectors[w][1])
    return vectors


def numeric_section(T, config, prefer='min'):
    """
    Determinants of the chords of ``T`` on the lift of ``config`` rescaled
    (one factor per vector and one overall factor) so that red edges get 1.
    Returns a function of a chord.
    """
    section = chart_section(T, prefer)
    vectors = [_lift(x) for x in config.points]

    def D(i, j):
        i, j = min(i, j), max(i, j)
        return _det(vectors[i - 1], vectors[j - 1])

    p, q, r = section.root
    delta = D(q, r) / (D(p, q) * D(p, r))
    scale = {p: Fraction(1), q: 1 / (D(p, q) * delta),
             r: 1 / (D(p, r) * delta)}
    for E, t2 in section.steps:
        m, = (v for v in t2 if v not in E)
        u, = (v for v in E if Chord.of(v, m) in section.red)
        scale[m] = 1 / (delta * scale[u] * D(u, m))

    def value(F):
        i, j = Chord.of(*F)
        return delta * scale[i] * scale[j] * D(i, j)

    return value


def evaluation_rank(laminations, T, points):
    """Rank of the matrix of canonical function values at ``points``."""
    rows = []
    for l in laminations:
        f = canonical_in_chart(l, T)
        rows.append([sympy.Rational(v.numerator, v.denominator)
                     for v in (f.evaluate(x) for x in points)])
    if not rows:
        return 0
    return sympy.Matrix(rows).rank()


def random_positive_point(labels, rng, spread=9):
    return {v: Fraction(int(rng.integers(1, spread + 1)),
                        int(rng.integers(1, spread + 1))) for v in labels}


def pairing(l, T, x):
    """
    ``-I(l)^t(x)`` for a tropical point ``x`` in the chart of ``T``: the
    strict valuation of the canonical function.
    """
    return valuation_of(canonical_in_chart(l, T), x, labels=T.labels())
