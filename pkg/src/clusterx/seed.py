"""
Seeds, seed and coordinate mutation, seed isomorphism and exchange graph
exploration.

A seed stores its lattice basis expressed in the initial basis together with
the bilinear form of the initial basis, so exchange matrices are always
recomputed from the form. Each seed also carries a *tropical frame*: the
images, under the PL mutations applied since the exploration root, of the
tropical points ``-e_j`` of the root chart. Seeds are identified in the
exchange graph by isomorphism of exchange matrix, multipliers and frame.
"""

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import count

import networkx as nx
import numpy as np

from clusterx.errors import InputError, SeedError, TruncationError
from clusterx.laurent import LaurentPoly, PosRational
from clusterx.math import lcm_list

log = logging.getLogger(__name__)


def default_labels(n):
    return tuple('X%i' % i for i in range(n))


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _root_frame(n):
    return tuple(tuple(-1 if i == j else 0 for j in range(n))
                 for i in range(n))


def _sgn(a):
    return (a > 0) - (a < 0)


def pl_step(eps, coords, k):
    """
    Tropical mutation at ``k`` of a coordinate tuple for exchange matrix
    ``eps``: ``x'_k = -x_k`` and
    ``x'_i = x_i - eps_ik max(0, -sgn(eps_ik) x_k)``.
    """
    xk = coords[k]
    out = []
    for i, x in enumerate(coords):
        if i == k:
            out.append(-xk)
        else:
            e = eps[i][k]
            out.append(x - e * max(0, -_sgn(e) * xk))
    return tuple(out)


@dataclass(frozen=True)
class Seed:
    """
    Seed of rank ``n``.

    Parameter ``basis`` (tuple of tuples):
        Basis vectors as rows, in coordinates of the initial basis.

    Parameter ``form`` (tuple of tuples):
        Integer matrix ``(e_a, e_b)`` of the bilinear form on the initial
        basis.

    Parameter ``d`` (tuple of int):
        Positive multipliers.

    Parameter ``labels`` (tuple of str):
        Names of the chart coordinates.

    Parameter ``frame`` (tuple of tuples):
        Tropical frame, one row per tracked point.
    """
    basis: tuple
    form: tuple
    d: tuple
    labels: tuple
    frame: tuple = field(default=None)

    def __post_init__(self):
        n = len(self.basis)
        if self.frame is None:
            object.__setattr__(self, 'frame', _root_frame(n))
        if len(self.form) != n or any(len(r) != n for r in self.form) \
                or any(len(r) != n for r in self.basis):
            raise SeedError("Seed: basis and form must be %ix%i" % (n, n))
        if len(self.d) != n or any(int(x) <= 0 for x in self.d):
            raise SeedError("Seed: multipliers must be %i positive integers"
                            % n)
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise SeedError("Seed: %i distinct labels required" % n)
        if len(self.frame) != n or any(len(r) != n for r in self.frame):
            raise SeedError("Seed: frame must be %ix%i" % (n, n))
        eps = self.epsilon
        for i in range(n):
            for j in range(n):
                if eps[i][j] * self.d[i] != -eps[j][i] * self.d[j]:
                    raise SeedError(
                        "Seed: exchange matrix is not skew-symmetrizable "
                        "by d=%s at (%i, %i)" % (list(self.d), i, j))

    @classmethod
    def from_epsilon(cls, eps, d=None, labels=None):
        eps = tuple(tuple(int(x) for x in row) for row in eps)
        n = len(eps)
        d = tuple(int(x) for x in d) if d is not None else (1,) * n
        labels = tuple(labels) if labels is not None else default_labels(n)
        return cls(_identity(n), eps, d, labels)

    @property
    def n(self):
        return len(self.basis)

    @cached_property
    def epsilon(self):
        'Exchange matrix ``eps_ij = (e_i, e_j)`` of the current basis'
        n = self.n
        if n == 0:
            return ()
        L = lcm_list(self.d)
        omega = np.array([[self.form[a][b] * (L // self.d[b])
                           for b in range(n)] for a in range(n)], dtype=object)
        B = np.array(self.basis, dtype=object)
        E = B.dot(omega).dot(B.T)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                v = self.d[j] * E[i, j]
                if v % L:
                    raise SeedError("Seed: non-integral exchange entry at "
                                    "(%i, %i)" % (i, j))
                row.append(int(v // L))
            rows.append(tuple(row))
        return tuple(rows)

    def column(self, i):
        'Frame column ``i`` (coordinate ``i`` of every tracked point)'
        return tuple(row[i] for row in self.frame)

    def signature(self, i):
        eps = self.epsilon
        return (self.d[i], tuple(sorted(eps[i])),
                tuple(sorted(row[i] for row in eps)), self.column(i))

    def invariant_key(self):
        'Isomorphism invariant used to bucket candidate seeds'
        return tuple(sorted(self.signature(i) for i in range(self.n)))

    def with_labels(self, labels):
        return Seed(self.basis, self.form, self.d, tuple(labels), self.frame)

    def to_json(self):
        return {'n': self.n, 'epsilon': [list(r) for r in self.epsilon],
                'd': list(self.d), 'labels': list(self.labels)}

    def __str__(self):
        return 'Seed[n=%i, epsilon=%s, d=%s]' % (
            self.n, [list(r) for r in self.epsilon], list(self.d))


@dataclass(frozen=True)
class SeedIso:
    """
    Index permutation ``perm``: index ``i`` of the source seed corresponds to
    index ``perm[i]`` of the target seed.
    """
    perm: tuple

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    def inverse(self):
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return SeedIso(tuple(inv))

    def then(self, other):
        'Apply ``self`` first, then ``other``'
        return SeedIso(tuple(other.perm[p] for p in self.perm))

    def apply_to_coords(self, coords):
        'Carry source-indexed coordinates to target indexing'
        out = [None] * len(self.perm)
        for i, p in enumerate(self.perm):
            out[p] = coords[i]
        return tuple(out)

    def is_identity(self):
        return all(i == p for i, p in enumerate(self.perm))


def find_isomorphism(s, t, use_frame=True):
    """
    Search for an index permutation carrying seed ``s`` onto ``t`` (exchange
    matrix, multipliers and, when ``use_frame`` is set, tropical frame).
    Returns a ``SeedIso`` or ``None``.
    """
    n = s.n
    if t.n != n:
        return None
    es, et = s.epsilon, t.epsilon

    def sig(seed, i):
        x = seed.signature(i)
        return x if use_frame else x[:3]

    candidates = []
    for i in range(n):
        si = sig(s, i)
        c = [j for j in range(n) if sig(t, j) == si]
        if not c:
            return None
        candidates.append(c)
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    perm = [None] * n
    used = set()

    def extend(pos):
        if pos == n:
            return True
        i = order[pos]
        for j in candidates[i]:
            if j in used:
                continue
            ok = True
            for q in order[:pos]:
                pj = perm[q]
                if et[j][pj] != es[i][q] or et[pj][j] != es[q][i]:
                    ok = False
                    break
            if ok and es[i][i] == et[j][j]:
                perm[i] = j
                used.add(j)
                if extend(pos + 1):
                    return True
                used.discard(j)
                perm[i] = None
        return False

    if extend(0):
        return SeedIso(tuple(perm))
    return None


def mutate_seed(s, k):
    """
    Mutation in direction ``k``: ``e'_i = e_i + max((e_i, e_k), 0) e_k`` for
    ``i != k`` and ``e'_k = -e_k``. Form and multipliers are unchanged; the
    frame is pushed through the PL mutation.
    """
    if not 0 <= k < s.n:
        raise InputError("mutate_seed: direction %i out of range for rank %i"
                         % (k, s.n))
    eps = s.epsilon
    bk = s.basis[k]
    basis = []
    for i, bi in enumerate(s.basis):
        if i == k:
            basis.append(tuple(-x for x in bk))
        else:
            c = max(eps[i][k], 0)
            basis.append(tuple(x + c * y for x, y in zip(bi, bk)))
    frame = tuple(pl_step(eps, row, k) for row in s.frame)
    return Seed(tuple(basis), s.form, s.d, s.labels, frame)


def mutate_x(s, k):
    """
    Pullback of the chart coordinates under mutation at ``k``: a map from
    each label to a subtraction-free expression in the old coordinates.
    """
    if not 0 <= k < s.n:
        raise InputError("mutate_x: direction %i out of range for rank %i"
                         % (k, s.n))
    vars = s.labels
    eps = s.epsilon
    xk = LaurentPoly.variable(vars[k], vars)
    one = LaurentPoly.constant(1, vars)
    out = {vars[k]: PosRational(one, xk)}
    for i in range(s.n):
        if i == k:
            continue
        xi = LaurentPoly.variable(vars[i], vars)
        e = eps[i][k]
        if e == 0:
            out[vars[i]] = PosRational(xi)
        elif e < 0:
            out[vars[i]] = PosRational(xi * (one + xk) ** -e)
        else:
            out[vars[i]] = PosRational(xi * xk ** e, (one + xk) ** e)
    return out


def identity_map(labels):
    return {v: PosRational(LaurentPoly.variable(v, labels)) for v in labels}


def compose_maps(outer, inner, normalize=False):
    """
    Substitute ``inner`` into every image of ``outer``. With ``normalize``
    the images are reduced by a full gcd.
    """
    out = {}
    for v, img in outer.items():
        r = img.substitute(inner)
        out[v] = r.cancel() if normalize else r
    return out


def check_involution(s, k):
    """
    Mutate twice at ``k`` and check that the exchange matrix returns and the
    composite coordinate substitution is the identity as rational functions.
    """
    s1 = mutate_seed(s, k)
    s2 = mutate_seed(s1, k)
    if s2.epsilon != s.epsilon:
        log.warning("check_involution: exchange matrix did not return "
                    "(direction %i)", k)
        return False
    composed = compose_maps(mutate_x(s1, k), mutate_x(s, k))
    ident = identity_map(s.labels)
    for v in s.labels:
        if not composed[v] == ident[v]:
            log.warning("check_involution: %s -> %s", v, composed[v])
            return False
    return True


def subseed(s, keep):
    """
    Seed on the basis vectors listed in ``keep`` with the induced form and
    multipliers. The subseed starts a fresh tropical frame.
    """
    keep = sorted(set(keep))
    if not keep:
        raise InputError("subseed: empty index set")
    if keep[0] < 0 or keep[-1] >= s.n:
        raise InputError("subseed: index out of range for rank %i" % s.n)
    eps = s.epsilon
    return Seed.from_epsilon([[eps[i][j] for j in keep] for i in keep],
                             [s.d[i] for i in keep],
                             [s.labels[i] for i in keep])


# ---------------------------------------------------------------------- #
#  Standard seeds
# ---------------------------------------------------------------------- #

def cartan_matrix(kind, rank):
    """Cartan matrix of finite type A, B, C, D or G (0-based chain order)."""
    kind = kind.upper()
    if rank < 1:
        raise InputError("cartan_matrix: rank must be positive")
    C = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    if kind == 'G':
        if rank != 2:
            raise InputError("cartan_matrix: G exists in rank 2 only")
        return [[2, -1], [-3, 2]]
    if kind == 'D':
        if rank < 4:
            raise InputError("cartan_matrix: D needs rank >= 4")
        for i in range(rank - 2):
            C[i][i + 1] = C[i + 1][i] = -1
        C[rank - 3][rank - 1] = C[rank - 1][rank - 3] = -1
        return C
    for i in range(rank - 1):
        C[i][i + 1] = C[i + 1][i] = -1
    if kind == 'A':
        return C
    if rank < 2:
        raise InputError("cartan_matrix: %s needs rank >= 2" % kind)
    if kind == 'B':
        C[rank - 1][rank - 2] = -2
    elif kind == 'C':
        C[rank - 2][rank - 1] = -2
    else:
        raise InputError("cartan_matrix: unknown type %r" % kind)
    return C


def symmetrizer(eps):
    """
    Positive integers ``d`` with ``eps_ij d_i = -eps_ji d_j``, found by
    propagation along the exchange graph of each connected component.
    """
    n = len(eps)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if eps[i][j] == 0:
                    continue
                if eps[j][i] == 0 or (eps[i][j] > 0) == (eps[j][i] > 0):
                    raise SeedError("symmetrizer: matrix is not "
                                    "skew-symmetrizable at (%i, %i)" % (i, j))
                value = d[i] * Fraction(eps[i][j], -eps[j][i])
                if d[j] is None:
                    d[j] = value
                    queue.append(j)
                elif d[j] != value:
                    raise SeedError("symmetrizer: inconsistent cycle at %i"
                                    % j)
    L = lcm_list([x.denominator for x in d])
    ints = [int(x * L) for x in d]
    g = int(np.gcd.reduce(ints))
    return tuple(x // g for x in ints)


def dynkin_seed(kind, rank):
    """
    Seed of a finite-type Cartan matrix: the diagonal is dropped and the
    signs below the diagonal are changed.
    """
    C = cartan_matrix(kind, rank)
    eps = [[0 if i == j else (C[i][j] if i < j else -C[i][j])
            for j in range(rank)] for i in range(rank)]
    return Seed.from_epsilon(eps, symmetrizer(eps))


def a_n_seed(n):
    return dynkin_seed('A', n)


def torus_seed():
    'Seed of an ideal triangulation of the punctured torus'
    return Seed.from_epsilon([[0, 2, -2], [-2, 0, 2], [2, -2, 0]])


def random_seed(rng, n, bound=3, multipliers=(1, 2)):
    """
    Random skew-symmetrizable seed of rank ``n`` with entries bounded by
    ``bound`` in absolute value.
    """
    d = [int(rng.choice(multipliers)) for _ in range(n)]
    eps = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            g = int(np.gcd(d[i], d[j]))
            # eps_ij d_i = -eps_ji d_j
            a = int(rng.integers(-bound, bound + 1))
            while abs(a) * max(d[i], d[j]) // g > bound:
                a -= _sgn(a)
            eps[i][j] = a * d[j] // g
            eps[j][i] = -a * d[i] // g
    return Seed.from_epsilon(eps, d)


# ---------------------------------------------------------------------- #
#  Exchange graph
# ---------------------------------------------------------------------- #

class ExchangeGraph:
    """
    Seeds up to isomorphism joined by mutations.

    ``edges[(u, k)] = (v, iso)`` means that mutating node ``u`` at ``k``
    gives a seed isomorphic to node ``v`` through ``iso`` (mutated index ``i``
    is index ``iso.perm[i]`` of ``v``). ``parent`` records the BFS tree used
    to compose chart transitions from the root.
    """

    def __init__(self, root_seed):
        self.root = '0'
        self.seeds = {'0': root_seed}
        self.order = ['0']
        self.edges = {}
        self.parent = {}
        self.truncated = False
        self.payload = {}
        self._transitions = {}

    @property
    def rank(self):
        return self.seeds[self.root].n

    def __len__(self):
        return len(self.order)

    def __contains__(self, node):
        return node in self.seeds

    def seed(self, node):
        try:
            return self.seeds[node]
        except KeyError:
            raise InputError("unknown chart %r" % node)

    def add_node(self, seed, parent=None, payload=None):
        node = str(len(self.order))
        self.seeds[node] = seed
        self.order.append(node)
        if parent is not None:
            self.parent[node] = parent
        if payload is not None:
            self.payload[node] = payload
        return node

    def neighbors(self, node):
        return [(k, self.edges[(node, k)]) for k in range(self.rank)
                if (node, k) in self.edges]

    def require_finite(self):
        if self.truncated:
            raise TruncationError("exchange graph was truncated at %i nodes"
                                  % len(self))

    def path_from_root(self, node):
        'Directions ``[(parent, k), ...]`` of the BFS tree path to ``node``'
        steps = []
        while node != self.root:
            p, k = self.parent[node]
            steps.append((p, k))
            node = p
        return steps[::-1]

    def transition(self, node, normalize=False):
        """
        Chart transition from the root: a map from the labels of ``node`` to
        expressions in the root coordinates. Computed on demand and cached.
        Images are left unreduced unless ``normalize`` is set.
        """
        key = (node, normalize)
        if key in self._transitions:
            return self._transitions[key]
        if node == self.root:
            result = identity_map(self.seeds[node].labels)
        else:
            p, k = self.parent[node]
            _, iso = self.edges[(p, k)]
            sp, sv = self.seeds[p], self.seeds[node]
            mutated = compose_maps(mutate_x(sp, k),
                                   self.transition(p, normalize), normalize)
            result = {sv.labels[iso.perm[i]]: mutated[label]
                      for i, label in enumerate(sp.labels)}
        self._transitions[key] = result
        return result

    def check_cycles(self):
        """
        Verify every edge outside the BFS tree: the chart of the target must
        agree with the mutated chart of the source after the recorded index
        permutation. Returns the list of offending edges.
        """
        bad = []
        for (u, k), (v, iso) in sorted(self.edges.items()):
            if self.parent.get(v) == (u, k):
                continue
            su, sv = self.seeds[u], self.seeds[v]
            mutated = compose_maps(mutate_x(su, k), self.transition(u, True),
                                   True)
            target = self.transition(v, True)
            for i, label in enumerate(su.labels):
                if not mutated[label] == target[sv.labels[iso.perm[i]]]:
                    bad.append((u, k))
                    break
        return bad

    def to_networkx(self):
        G = nx.DiGraph()
        G.add_nodes_from(self.order)
        for (u, k), (v, iso) in self.edges.items():
            G.add_edge(u, v, direction=k, perm=iso.perm)
        return G

    def to_json(self, transitions=False):
        nodes = []
        for node in self.order:
            s = self.seeds[node]
            entry = {'id': node, 'epsilon': [list(r) for r in s.epsilon],
                     'd': list(s.d), 'frame': [list(r) for r in s.frame]}
            if node in self.payload:
                p = self.payload[node]
                entry['payload'] = p.to_json() if hasattr(p, 'to_json') \
                    else p
            if transitions:
                entry['transition'] = {v: f.to_text() for v, f in
                                       self.transition(node, True).items()}
            nodes.append(entry)
        edges = [{'source': u, 'direction': k, 'target': v,
                  'permutation': list(iso.perm)}
                 for (u, k), (v, iso) in sorted(
                     self.edges.items(),
                     key=lambda e: (int(e[0][0]), e[0][1]))]
        return {'root': self.root,
                'labels': list(self.seeds[self.root].labels),
                'nodes': nodes, 'edges': edges, 'truncated': self.truncated,
                'node_count': len(self.order)}


def _expand(seed):
    return [mutate_seed(seed, k) for k in range(seed.n)]


def explore_exchange_graph(s, max_nodes=1000, workers=1):
    """
    Breadth-first exploration of all seeds reachable from ``s``.

    Parameter ``max_nodes`` (int):
        Node bound. When it is reached, no further nodes are created and the
        graph is flagged as truncated.

    Parameter ``workers`` (int):
        Number of threads mutating the seeds of one BFS level. Merging into
        the graph happens on the calling thread.
    """
    if max_nodes < 1:
        raise InputError("explore_exchange_graph: max_nodes must be >= 1")
    g = ExchangeGraph(s)
    buckets = {s.invariant_key(): ['0']}
    frontier = ['0']
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    level = count()
    try:
        while frontier:
            seeds = [g.seeds[u] for u in frontier]
            expanded = list(pool.map(_expand, seeds)) if pool \
                else [_expand(x) for x in seeds]
            following = []
            for u, mutated in zip(frontier, expanded):
                for k, t in enumerate(mutated):
                    found = None
                    for v in buckets.get(t.invariant_key(), ()):
                        iso = find_isomorphism(t, g.seeds[v])
                        if iso is not None:
                            found = (v, iso)
                            break
                    if found is None:
                        if len(g) >= max_nodes:
                            if not g.truncated:
                                log.warning("exchange graph truncated at %i "
                                            "nodes", len(g))
                            g.truncated = True
                            continue
                        v = g.add_node(t, parent=(u, k))
                        buckets.setdefault(t.invariant_key(), []).append(v)
                        following.append(v)
                        found = (v, SeedIso.identity(t.n))
                    g.edges[(u, k)] = found
            log.debug("level %i: %i new nodes (%i total)", next(level),
                      len(following), len(g))
            frontier = following
    finally:
        if pool is not None:
            pool.shutdown()
    log.info("exchange graph: %i nodes, %i edges%s", len(g), len(g.edges),
             " (truncated)" if g.truncated else "")
    return g
