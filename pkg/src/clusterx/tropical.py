"""
Tropical points of a cluster X-variety, their PL mutation, strict
valuations, special cones and convex subsets of tropical spaces.
"""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from clusterx.errors import InputError, TruncationError
from clusterx.laurent import LaurentPoly, PosRational, tropicalize
from clusterx.math import lcm_list
from clusterx.seed import pl_step

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TropicalPoint:
    """
    Point of the tropical space in chart ``chart``. Integral points carry
    ``int`` coordinates; rational points carry ``Fraction`` coordinates and
    ``rational=True``.
    """
    chart: str
    coords: tuple
    rational: bool = False

    @classmethod
    def make(cls, chart, coords):
        values = tuple(Fraction(c) for c in coords)
        if all(v.denominator == 1 for v in values):
            return cls(str(chart), tuple(int(v) for v in values), False)
        return cls(str(chart), values, True)

    @classmethod
    def from_rational(cls, chart, coords):
        'Integral point with denominators cleared, and the scale used'
        return cls.make(chart, coords).cleared()

    def cleared(self):
        """
        Integral point obtained by clearing denominators, and the positive
        scale used.
        """
        if not self.rational:
            return self, 1
        L = lcm_list([Fraction(c).denominator for c in self.coords])
        return TropicalPoint(self.chart,
                             tuple(int(c * L) for c in self.coords)), L

    def scaled(self, factor):
        return TropicalPoint.make(self.chart, [Fraction(factor) * c
                                               for c in self.coords])

    def is_nonnegative(self):
        return all(c >= 0 for c in self.coords)

    def to_json(self):
        return {'chart': self.chart, 'coords': [
            c if isinstance(c, int) else str(c) for c in self.coords]}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls.make(obj['chart'], [Fraction(str(c))
                                           for c in obj['coords']])
        except (KeyError, TypeError, ValueError) as e:
            raise InputError("invalid tropical point JSON (%s)" % e)


@dataclass(frozen=True)
class SpecialCone:
    """
    Cone ``{x_i >= 0 for all i, x_c = 0 for c in zero_set}`` of chart
    ``chart`` of a rank ``n`` tropical space.
    """
    chart: str
    zero_set: frozenset
    n: int

    def __post_init__(self):
        if any(not 0 <= c < self.n for c in self.zero_set):
            raise InputError("SpecialCone: zero set %s out of range for rank "
                             "%i" % (sorted(self.zero_set), self.n))

    @property
    def dimension(self):
        return self.n - len(self.zero_set)

    def contains(self, coords):
        return all(c >= 0 for c in coords) and \
            all(coords[i] == 0 for i in self.zero_set)

    def inequalities(self):
        return ['x%i = 0' % i if i in self.zero_set else 'x%i >= 0' % i
                for i in range(self.n)]

    def to_json(self):
        return {'chart': self.chart, 'zero_set': sorted(self.zero_set),
                'inequalities': self.inequalities()}


def pl_mutate_coords(seed, coords, k):
    'PL mutation of raw coordinates of ``seed`` at direction ``k``'
    if not 0 <= k < seed.n:
        raise InputError("pl_mutate: direction %i out of range for rank %i"
                         % (k, seed.n))
    if len(coords) != seed.n:
        raise InputError("pl_mutate: point of length %i for rank %i"
                         % (len(coords), seed.n))
    return pl_step(seed.epsilon, tuple(coords), k)


def pl_mutate(x, k, graph):
    """
    Mutate ``x`` at ``k`` and express the result in the neighbouring chart of
    ``graph`` (applying the recorded index permutation).
    """
    seed = graph.seed(x.chart)
    y = pl_mutate_coords(seed, x.coords, k)
    try:
        target, iso = graph.edges[(x.chart, k)]
    except KeyError:
        raise TruncationError("chart %s has no edge in direction %i"
                              % (x.chart, k))
    return TropicalPoint(target, iso.apply_to_coords(y), x.rational)


def transport(graph, x, chart):
    """Carry ``x`` to ``chart`` along a shortest mutation path."""
    chart = str(chart)
    if chart == x.chart:
        return x
    G = graph.to_networkx()
    try:
        path = nx.shortest_path(G, x.chart, chart)
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        raise TruncationError("no mutation path from chart %s to chart %s"
                              % (x.chart, chart))
    for u, v in zip(path[:-1], path[1:]):
        x = pl_mutate(x, G.edges[u, v]['direction'], graph)
    return x


def all_charts(graph, x):
    'Coordinates of ``x`` in every chart reachable from its own'
    out = {x.chart: x}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for k, (v, _) in graph.neighbors(y.chart):
            if v not in out:
                out[v] = pl_mutate(y, k, graph)
                queue.append(out[v])
    return out


def in_special_cone(x, cone, graph=None):
    """
    Membership of ``x`` in ``cone``; ``x`` is transported to the cone's chart
    first when needed.
    """
    if x.chart != cone.chart:
        if graph is None:
            raise InputError("in_special_cone: point and cone live in "
                             "different charts")
        x = transport(graph, x, cone.chart)
    return cone.contains(x.coords)


def positive_part_cover(graph, x):
    """
    All charts where ``x`` has nonnegative coordinates, each with the special
    cone of its zero coordinates.
    """
    graph.require_finite()
    out = []
    for chart, y in sorted(all_charts(graph, x).items(),
                           key=lambda e: int(e[0]) if e[0].isdigit()
                           else e[0]):
        if y.is_nonnegative():
            zero = frozenset(i for i, c in enumerate(y.coords) if c == 0)
            out.append((chart, SpecialCone(chart, zero, len(y.coords))))
    return out


def valuation_of(f, x, labels=None):
    """
    Strict valuation ``v_x(f) = -f^t(x)``.

    Parameter ``labels`` (sequence of str):
        Names of the coordinates of ``x``'s chart; defaults to the
        variables of ``f``.
    """
    if isinstance(f, (int, LaurentPoly)):
        f = PosRational(f)
    labels = tuple(labels) if labels is not None else f.vars
    if len(labels) != len(x.coords):
        raise InputError("valuation_of: %i labels for a point of length %i"
                         % (len(labels), len(x.coords)))
    value = -tropicalize(f)(dict(zip(labels, x.coords)))
    return int(value) if value.denominator == 1 else value


def spherical_representative(x):
    """
    Representative of ``x`` modulo positive rescaling with
    ``max |x_i| = 1``; the origin represents itself.
    """
    m = max((abs(Fraction(c)) for c in x.coords), default=0)
    if m == 0:
        return x
    return TropicalPoint(x.chart, tuple(Fraction(c) / m for c in x.coords),
                         True)


class ConvexSubset:
    """
    Convex subset ``{x | F^t(x) <= c_F}`` of a tropical space, given by a
    finite list of constraints. A bound of ``None`` stands for infinity and
    drops the constraint.

    Parameter ``constraints`` (list):
        Pairs ``(F, c)`` with ``F`` a subtraction-free PosRational,
        LaurentPoly or TropExpr and ``c`` a rational bound or ``None``.
    """

    def __init__(self, constraints=()):
        items = []
        for F, c in constraints:
            func = PosRational(F) if isinstance(F, (int, LaurentPoly)) else F
            trop = tropicalize(func) if isinstance(func, PosRational) else func
            items.append((func, trop, None if c is None else Fraction(c)))
        self.constraints = tuple(items)

    @classmethod
    def spherical(cls, *functions):
        return cls([(F, 0) for F in functions])

    def is_spherical(self):
        return all(c == 0 for _, _, c in self.constraints)

    def contains(self, point):
        'Membership of a point given as a mapping from variable to value'
        return all(c is None or trop(point) <= c
                   for _, trop, c in self.constraints)

    def intersect(self, other):
        out = ConvexSubset()
        out.constraints = self.constraints + other.constraints
        return out

    def minkowski(self, other):
        """
        Sum of two subsets. For spherical subsets the defining functions are
        multiplied pairwise; otherwise both subsets must use the same
        function list and the bounds are added.
        """
        if self.is_spherical() and other.is_spherical():
            items = []
            for f, tf, _ in self.constraints:
                for g, tg, _ in other.constraints:
                    if isinstance(f, PosRational) and \
                            isinstance(g, PosRational):
                        prod = f * g
                        items.append((prod, tropicalize(prod), Fraction(0)))
                    else:
                        items.append((None, tf + tg, Fraction(0)))
            out = ConvexSubset()
            out.constraints = tuple(items)
            return out
        if len(self.constraints) != len(other.constraints):
            raise InputError("minkowski: constraint lists of different "
                             "lengths (%i and %i)"
                             % (len(self.constraints), len(other.constraints)))
        items = []
        for (f, tf, a), (g, tg, b) in zip(self.constraints,
                                          other.constraints):
            same = (f == g) if isinstance(f, PosRational) and \
                isinstance(g, PosRational) else str(tf) == str(tg)
            if not same:
                raise InputError("minkowski: constraint functions %s and %s "
                                 "differ" % (tf, tg))
            items.append((f, tf, None if a is None or b is None else a + b))
        out = ConvexSubset()
        out.constraints = tuple(items)
        return out

    def __len__(self):
        return len(self.constraints)

    def __str__(self):
        return ' and '.join('%s <= %s' % (t, 'inf' if c is None else c)
                            for _, t, c in self.constraints) or 'everything'


def convex_ops(a, b, op):
    """``intersect`` or ``minkowski`` of two convex subsets."""
    if op == 'intersect':
        return a.intersect(b)
    if op == 'minkowski':
        return a.minkowski(b)
    raise ValueError("convex_ops: unknown operation %r" % op)
