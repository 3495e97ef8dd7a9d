"""
Tropical boundary of the punctured-torus cluster variety: the
piecewise-linear action of ``PSL_2(Z)`` on integer triples and the orbit of
the triangle ``{x, y, z >= 0, x + y + z = 1}``.

The generators act by

* ``S(x, y, z) = (y + 2 max(0, z), x - 2 max(0, -z), -z)``,
* ``R = ST``: ``(x, y, z) -> (y, z, x)``,
* ``T = S R``,

so that ``S^2 = (ST)^3 = e``. ``S`` is the coordinate swap of ``x`` and ``y``
composed with the flip ``flip_z``.
"""

import json
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from clusterx.errors import InputError
from clusterx.svg import WriteSVG

log = logging.getLogger(__name__)


def _m(v):
    return max(0, v)


def flip_z(p):
    x, y, z = p
    return (x - 2 * _m(-z), y + 2 * _m(z), -z)


def flip_z_inverse(p):
    x, y, z = p
    return (x + 2 * _m(z), y - 2 * _m(-z), -z)


def act_s(p):
    x, y, z = p
    return (y + 2 * _m(z), x - 2 * _m(-z), -z)


def act_r(p):
    x, y, z = p
    return (y, z, x)


def act_t(p):
    return act_s(act_r(p))


_GENERATORS = {'S': act_s, 'R': act_r}


class PLWord:
    """
    Element of ``PSL_2(Z) = <S> * <R>`` in normal form: an alternating
    sequence of syllables ``S`` and ``R`` or ``RR``.

    Words are read as compositions, the rightmost letter acting first.
    """

    __slots__ = ('syllables',)

    def __init__(self, syllables=()):
        self.syllables = self._reduce(syllables)

    @staticmethod
    def _reduce(items):
        out = []
        for item in items:
            if item == 'S':
                if out and out[-1] == 'S':
                    out.pop()
                else:
                    out.append('S')
            elif item in ('R', 'RR'):
                k = len(item)
                if out and out[-1] in ('R', 'RR'):
                    k = (k + len(out.pop())) % 3
                if k:
                    out.append('R' * k)
            else:
                raise InputError("PLWord: unknown syllable %r" % item)
        return tuple(out)

    @classmethod
    def parse(cls, text):
        """
        Word in the letters ``S``, ``T`` and ``t`` (the inverse of ``T``).
        Blanks and ``e`` or ``1`` (the identity) are ignored.
        """
        items = []
        for ch in text:
            if ch == 'S':
                items.append('S')
            elif ch == 'T':
                items += ['S', 'R']
            elif ch == 't':
                items += ['RR', 'S']
            elif ch in ' e1':
                continue
            else:
                raise InputError("PLWord: unknown letter %r in %r"
                                 % (ch, text))
        return cls(items)

    def __mul__(self, other):
        return PLWord(self.syllables + other.syllables)

    def inverse(self):
        flipped = {'S': 'S', 'R': 'RR', 'RR': 'R'}
        return PLWord(flipped[s] for s in reversed(self.syllables))

    def is_identity(self):
        return not self.syllables

    def __len__(self):
        return len(self.syllables)

    def __eq__(self, other):
        if not isinstance(other, PLWord):
            return NotImplemented
        return self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def spelling(self):
        'Shortest spelling in the letters S, T, t'
        letters = []
        for s in self.syllables:
            letters += {'S': ['S'], 'R': ['S', 'T'], 'RR': ['t', 'S']}[s]
        out = []
        for ch in letters:
            if out and out[-1] + ch in ('SS', 'Tt', 'tT'):
                out.pop()
            else:
                out.append(ch)
        return ''.join(out) or 'e'

    def __str__(self):
        return self.spelling()

    def __repr__(self):
        return 'PLWord(%r)' % self.spelling()


def apply_pl(w, p):
    """Action of ``w`` on an integer triple."""
    if isinstance(w, str):
        w = PLWord.parse(w)
    p = tuple(p)
    if len(p) != 3:
        raise InputError("apply_pl: expected a triple, got %s" % (p,))
    for s in reversed(w.syllables):
        for g in s:
            p = _GENERATORS[g](p)
    return p


BASE_TRIANGLE = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@dataclass(frozen=True)
class PatchTriangle:
    word: PLWord
    vertices: tuple

    def key(self):
        return frozenset(self.vertices)

    def sides(self):
        a, b, c = self.vertices
        return [frozenset(s) for s in ((a, b), (b, c), (a, c))]


def group_elements(max_len):
    """
    Group elements reached by words of at most ``max_len`` letters in S, T and
    t, with the letter length at which each is first reached.
    """
    if max_len < 0:
        raise InputError("max_len must be >= 0")
    steps = [PLWord.parse(ch) for ch in 'STt']
    seen = {PLWord(): 0}
    queue = deque([PLWord()])
    while queue:
        w = queue.popleft()
        if seen[w] == max_len:
            continue
        for step in steps:
            v = w * step
            if v not in seen:
                seen[v] = seen[w] + 1
                queue.append(v)
    return seen


def orbit_patch(max_len):
    """
    Images of the base triangle under the words of at most ``max_len``
    letters, one entry per triangle. Triangles coincide exactly when the
    words differ by a power of ``R`` on the right.
    """
    out, keys = [], set()
    for w, length in sorted(group_elements(max_len).items(),
                            key=lambda e: (e[1], e[0].spelling())):
        verts = tuple(apply_pl(w, v) for v in BASE_TRIANGLE)
        tri = PatchTriangle(w, verts)
        if tri.key() not in keys:
            keys.add(tri.key())
            out.append((length, tri))
    log.debug("orbit patch of length %i: %i triangles", max_len, len(out))
    return out


def side_multiplicity(patch):
    'How many triangles of ``patch`` border every side'
    count = {}
    for _, tri in patch:
        for s in tri.sides():
            count[s] = count.get(s, 0) + 1
    return count


def interior_sides_ok(patch, max_len):
    """
    Sides of triangles reached within ``max_len - 3`` letters border exactly
    two triangles; no side borders more than two.
    """
    count = side_multiplicity(patch)
    if any(c > 2 for c in count.values()):
        return False
    return all(count[s] == 2 for length, tri in patch
               if length <= max_len - 3 for s in tri.sides())


# ---------------------------------------------------------------------- #
#  Rendering
# ---------------------------------------------------------------------- #

def project(p):
    'Planar coordinates of a point of the plane ``x + y + z = 1``'
    x, y, z = (Fraction(c) for c in p)
    return (float(x + z / 2), float(z) * sqrt(3) / 2)


def ray_direction(p):
    cx, cy = project((Fraction(1, 3),) * 3)
    px, py = project(p)
    dx, dy = px - cx, py - cy
    norm = sqrt(dx * dx + dy * dy)
    return (dx / norm, dy / norm) if norm else (0.0, 0.0)


def _geometry(patch, rays):
    triangles = [{'word': tri.word.spelling(), 'length': length,
                  'vertices': [list(v) for v in tri.vertices],
                  'points': [[round(c, 6) for c in project(v)]
                             for v in tri.vertices]}
                 for length, tri in patch]
    ray_list = []
    if rays:
        vertices = sorted({v for _, tri in patch for v in tri.vertices})
        ray_list = [{'vertex': list(v),
                     'direction': [round(c, 6) for c in ray_direction(v)]}
                    for v in vertices]
    return {'triangles': triangles, 'rays': ray_list}


def render_hemisphere(patch, format='svg', rays=True, path=None,
                      ray_length=0.5):
    """
    Document showing ``patch`` in the plane ``x + y + z = 1``.

    Parameter ``format`` (str):
        ``svg`` (one polygon element per triangle, one line per ray) or
        ``json`` (exact vertices and planar points).

    Returns the document text; it is also written to ``path`` when given.
    """
    geometry = _geometry(patch, rays)
    if format == 'json':
        text = json.dumps(geometry, sort_keys=True, indent=2) + '\n'
        if path is not None:
            with open(path, 'w', encoding='utf-8', newline='\n') as f:
                f.write(text)
        return text
    if format != 'svg':
        raise InputError("render_hemisphere: unknown format %r" % format)
    points = [p for t in geometry['triangles'] for p in t['points']]
    if points:
        xs, ys = [p[0] for p in points], [p[1] for p in points]
        pad = ray_length + 0.1
        box = (min(xs) - pad, -max(ys) - pad,
               max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad)
    else:
        box = (0, 0, 1, 1)
    writer = WriteSVG(path)
    writer.write_header(640, 640, box, 'tropical boundary hemisphere')
    writer.open_element('g', {'fill': 'none', 'stroke': 'black',
                              'stroke-width': 0.01})
    for t in geometry['triangles']:
        # y axis of SVG points down
        writer.polygon([(x, -y) for x, y in t['points']],
                       {'data-word': t['word']})
    writer.close_element()
    if geometry['rays']:
        writer.open_element('g', {'stroke': 'gray', 'stroke-width': 0.005})
        for r in geometry['rays']:
            x, y = project(r['vertex'])
            dx, dy = r['direction']
            writer.line((round(x, 6), round(-y, 6)),
                        (round(x + ray_length * dx, 6),
                         round(-(y + ray_length * dy), 6)))
        writer.close_element()
    text = writer.close()
    if text is None:
        with open(path, encoding='utf-8') as f:
            text = f.read()
    return text


def parse_hemisphere(text):
    """Patch entries ``(length, PatchTriangle)`` of a JSON document."""
    try:
        obj = json.loads(text)
        return [(int(t['length']),
                 PatchTriangle(PLWord.parse(t['word']),
                               tuple(tuple(int(c) for c in v)
                                     for v in t['vertices'])))
                for t in obj['triangles']]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError("invalid hemisphere JSON (%s)" % e)
