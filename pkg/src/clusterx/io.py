"""
JSON documents read and written by the command line front end.

Seed::

    {"epsilon": [[0, -1], [1, 0]], "d": [1, 1], "labels": ["X0", "X1"]}
    {"type": "A", "rank": 3}

Triangulation ``{"size": 6, "diagonals": [[1, 3], [1, 4], [1, 5]]}``,
configuration ``{"points": ["0", "1/2", "inf", ...]}``, lamination
``{"size": 5, "weights": [{"chord": [1, 3], "w": 1}, ...]}`` and tropical
point ``{"chart": "0", "coords": [1, -2]}``.
"""

import json
import logging
import sys

from clusterx.errors import ClusterXError, InputError
from clusterx.lamination import Lamination
from clusterx.polygon import Configuration, Triangulation
from clusterx.seed import Seed, dynkin_seed, symmetrizer, torus_seed
from clusterx.tropical import TropicalPoint

log = logging.getLogger(__name__)


def load_json(path):
    try:
        with open(path, encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError:
        raise InputError("no such file", path)
    except json.JSONDecodeError as e:
        raise InputError("invalid JSON (%s)" % e, path)


def dump_json(obj, path=None):
    """
    Write ``obj`` with sorted keys, two-space indentation and a trailing
    newline, to ``path`` or to stdout.
    """
    text = json.dumps(obj, sort_keys=True, indent=2) + '\n'
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        log.info("wrote %s", path)
    return text


def seed_from_json(obj):
    if not isinstance(obj, dict):
        raise InputError("seed JSON must be an object")
    if 'type' in obj:
        kind = str(obj['type'])
        if kind.lower() == 'torus':
            return torus_seed()
        try:
            return dynkin_seed(kind, int(obj['rank']))
        except (KeyError, ValueError, TypeError) as e:
            raise InputError("invalid Dynkin seed (%s)" % e)
    try:
        eps = obj['epsilon']
        d = obj.get('d')
        if d is None:
            d = symmetrizer(eps)
        return Seed.from_epsilon(eps, d, obj.get('labels'))
    except KeyError as e:
        raise InputError("seed JSON is missing %s" % e)
    except (TypeError, ValueError) as e:
        raise InputError("invalid seed JSON (%s)" % e)


def _load(path, parse):
    obj = load_json(path)
    try:
        return parse(obj)
    except InputError as e:
        if e.path is None:
            raise InputError(str(e), path)
        raise
    except ClusterXError as e:
        raise InputError(str(e), path)


def load_seed(path):
    return _load(path, seed_from_json)


def load_triangulation(path):
    return _load(path, Triangulation.from_json)


def load_configuration(path):
    return _load(path, Configuration.from_json)


def load_lamination(path):
    return _load(path, Lamination.from_json)


def load_point(path):
    return _load(path, TropicalPoint.from_json)
