"""
Strata of the special completion.

A stratum is the class of a pair ``(chart, Z)`` under mutations in
directions of ``Z``; ``Z`` is the zero set of the special cone
``{x_i >= 0, x_c = 0 for c in Z}`` and the stratum is the cluster variety of
the subseed on ``Z``. The stratum has codimension ``n - |Z|`` and lies in the
closure of the strata of ``(chart, Z')`` for every ``Z' \\supset Z``.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from clusterx.errors import InputError, PolygonError
from clusterx.polygon import (Chord, Triangulation, associahedron_faces,
                              crosses, flip, triangulation_for_seed)
from clusterx.seed import subseed

log = logging.getLogger(__name__)


@dataclass
class Stratum:
    id: int
    chart: str
    zero_set: frozenset
    rank: int
    members: list = field(default_factory=list)
    seed: object = None
    cuts: frozenset = None
    parts: list = None

    @property
    def codim(self):
        return self.rank - len(self.zero_set)

    @property
    def cone_codim(self):
        return len(self.zero_set)

    @property
    def dimension(self):
        return len(self.zero_set)

    def to_json(self):
        out = {'id': self.id, 'chart': self.chart, 'codim': self.codim,
               'zero_set': sorted(self.zero_set),
               'members': len(self.members)}
        if self.cuts is not None:
            out['cuts'] = [list(c) for c in sorted(self.cuts)]
            out['parts'] = self.parts
        return out


class StrataPoset:
    """
    Strata with their covering relations. ``covers`` holds pairs
    ``(lower, upper)`` of stratum ids where ``lower`` is a codimension one
    stratum of the closure of ``upper``.
    """

    def __init__(self, graph, strata, index, covers):
        self.graph = graph
        self.strata = strata
        self.index = index
        self.covers = covers

    def __len__(self):
        return len(self.strata)

    def stratum_of(self, chart, zero_set):
        return self.strata[self.index[(chart, frozenset(zero_set))]]

    def counts_by_codim(self):
        counts = [0] * (self.graph.rank + 1)
        for s in self.strata:
            counts[s.codim] += 1
        return counts

    def positive_cells(self):
        'Number of cells of each dimension of the positive completion'
        cells = {}
        for s in self.strata:
            cells[s.dimension] = cells.get(s.dimension, 0) + 1
        return dict(sorted(cells.items()))

    def to_networkx(self):
        G = nx.DiGraph()
        G.add_nodes_from(s.id for s in self.strata)
        G.add_edges_from(self.covers)
        return G

    def closure_of(self, sid):
        'Ids of the strata in the closure of stratum ``sid`` (itself included)'
        G = self.to_networkx()
        return {sid} | nx.ancestors(G, sid)

    def in_closure(self, lower, upper):
        return lower in self.closure_of(upper)

    def to_json(self):
        return {'rank': self.graph.rank,
                'counts_by_codim': self.counts_by_codim(),
                'strata': [s.to_json() for s in self.strata],
                'covers': [list(c) for c in sorted(self.covers)]}


def _subsets(n):
    for k in range(n + 1):
        for Z in combinations(range(n), k):
            yield frozenset(Z)


def strata_poset(g, with_geometry=None):
    """
    Strata of the special completion of the cluster variety of the finite
    exchange graph ``g``.

    Parameter ``with_geometry`` (bool):
        Attach cut diagonals and sub-polygons to every stratum. ``None``
        attaches them whenever the root seed is of type A.
    """
    g.require_finite()
    n = g.rank
    G = nx.Graph()
    for u in g.order:
        for Z in _subsets(n):
            G.add_node((u, Z))
            for k in Z:
                if (u, k) not in g.edges:
                    continue
                v, iso = g.edges[(u, k)]
                G.add_edge((u, Z), (v, frozenset(iso.perm[i] for i in Z)))
    position = {u: i for i, u in enumerate(g.order)}

    def rank_key(member):
        u, Z = member
        return (position[u], sorted(Z))

    classes = sorted((sorted(c, key=rank_key) for c in
                      nx.connected_components(G)),
                     key=lambda c: (n - len(c[0][1]), rank_key(c[0])))
    strata, index = [], {}
    for sid, members in enumerate(classes):
        chart, Z = members[0]
        induced = subseed(g.seeds[chart], Z) if Z else None
        s = Stratum(sid, chart, Z, n, members, induced)
        strata.append(s)
        for m in members:
            index[m] = sid
    covers = set()
    for (u, Z), sid in index.items():
        for i in range(n):
            if i not in Z:
                covers.add((sid, index[(u, Z | {i})]))
    poset = StrataPoset(g, strata, index, covers)
    if with_geometry is None:
        with_geometry = triangulation_for_seed(g.seeds[g.root]) is not None
    if with_geometry:
        _attach_geometry(poset)
    log.info("strata poset: %i strata, counts by codimension %s",
             len(strata), poset.counts_by_codim())
    return poset


def diagonal_labels(g):
    """
    For an exchange graph of type A: every node mapped to the diagonals of
    its triangulation, listed by seed index.
    """
    found = triangulation_for_seed(g.seeds[g.root])
    if found is None:
        raise InputError("exchange graph root is not of type A")
    T, iso = found
    out = {g.root: tuple(T.ordered[iso.perm[i]] for i in range(g.rank))}
    queue = deque([g.root])
    while queue:
        u = queue.popleft()
        for k, (v, iso) in g.neighbors(u):
            if v in out:
                continue
            chords = list(out[u])
            T = Triangulation(g.rank + 3, frozenset(chords))
            T2 = flip(T, chords[k])
            chords[k], = T2.diagonals - set(chords)
            labels = [None] * g.rank
            for i, c in enumerate(chords):
                labels[iso.perm[i]] = c
            out[v] = tuple(labels)
            queue.append(v)
    return out


def cut_polygon(cuts, size):
    'Vertex lists of the sub-polygons obtained by cutting along ``cuts``'
    cuts = [Chord.of(*c) for c in cuts]
    for a, b in combinations(cuts, 2):
        if crosses(a, b):
            raise PolygonError("cut diagonals %s and %s cross" % (a, b))
    parts = [list(range(1, size + 1))]
    for c in sorted(cuts):
        for idx, part in enumerate(parts):
            if c.i in part and c.j in part:
                p, q = sorted((part.index(c.i), part.index(c.j)))
                parts[idx:idx + 1] = [part[p:q + 1], part[q:] + part[:p + 1]]
                break
    return sorted(sorted(p) for p in parts)


def an_stratum_geometry(s, size):
    """
    Sub-polygons of a type A stratum, each with the type of its factor
    (``A_m`` for an ``(m + 3)``-gon, ``trivial`` for a triangle).
    """
    if s.cuts is None:
        raise InputError("stratum %i carries no cut diagonals" % s.id)
    out = []
    for part in cut_polygon(s.cuts, size):
        m = len(part) - 3
        out.append({'vertices': part, 'size': len(part),
                    'type': 'A%i' % m if m > 0 else 'trivial'})
    if sum(p['size'] - 2 for p in out) != size - 2:
        raise PolygonError("cutting along %s does not partition the "
                           "triangles" % sorted(s.cuts))
    return out


def _attach_geometry(poset):
    labels = diagonal_labels(poset.graph)
    size = poset.graph.rank + 3
    for s in poset.strata:
        chords = labels[s.chart]
        s.cuts = frozenset(c for i, c in enumerate(chords)
                           if i not in s.zero_set)
        s.parts = an_stratum_geometry(s, size)


def match_associahedron(g, size):
    """
    Check that the strata of a type A graph correspond to sets of pairwise
    non-crossing diagonals (codimension ``k`` to ``k``-sets) with closure
    order reversing inclusion.
    """
    poset = strata_poset(g, with_geometry=True)
    if size != g.rank + 3:
        log.warning("rank %i graph compared with the %i-gon", g.rank, size)
        return False
    ok = True
    faces = {}
    for k in range(g.rank + 1):
        faces[k] = set(associahedron_faces(size, k))
        found = {s.cuts for s in poset.strata if s.codim == k}
        if found != faces[k] or \
                len(found) != poset.counts_by_codim()[k]:
            log.warning("codimension %i: %i strata against %i faces", k,
                        poset.counts_by_codim()[k], len(faces[k]))
            ok = False
    expected = {(F, F - {d}) for k in faces for F in faces[k] for d in F}
    got = {(poset.strata[lo].cuts, poset.strata[up].cuts)
           for lo, up in poset.covers}
    if got != expected:
        log.warning("covering relations differ from face inclusions "
                    "(%i against %i)", len(got), len(expected))
        ok = False
    return ok
