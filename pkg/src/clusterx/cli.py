"""
Command line front end: ``clusterx <command> [options]``.

Every command writes one JSON document (``torus-boundary`` may write SVG)
to ``--out`` or stdout. Exit status: 0 success, 1 failed verification,
2 invalid input, 3 truncated exploration.
"""

import argparse
import json
import logging
import sys

from clusterx import __version__
from clusterx.completion import strata_poset
from clusterx.config import RunConfig
from clusterx.errors import (ClusterXError, InputError, PropertyFailure,
                             TruncationError)
from clusterx.io import (dump_json, load_configuration, load_lamination,
                         load_point, load_seed, load_triangulation)
from clusterx.lamination import (canonical_function, canonical_in_chart,
                                 check_positivity, enumerate_laminations,
                                 pairing, tree_coords)
from clusterx.laurent import PosRational
from clusterx.polygon import (Chord, adjacency_epsilon, associahedron_faces,
                              chart_coords, flip_permutation,
                              polygon_exchange_graph, triangulation_for_seed)
from clusterx.seed import explore_exchange_graph, mutate_seed, mutate_x
from clusterx.torus import orbit_patch, render_hemisphere
from clusterx.tropical import pl_mutate, positive_part_cover, valuation_of
from clusterx.verify import DEFAULT_BOUND, SUITES, run_suite

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_TRUNCATED = 3


def _setup_logging(verbose, quiet):
    if quiet:
        level = logging.ERROR
    else:
        level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(verbose, 2)]
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: '
                                           '%(message)s'))
    logger = logging.getLogger('clusterx')
    logger.handlers[:] = [handler]
    logger.setLevel(level)


def _read_rational(path):
    try:
        with open(path, encoding='utf-8') as f:
            text = f.read().strip()
    except FileNotFoundError:
        raise InputError("no such file", path)
    try:
        return PosRational.from_text(text)
    except ClusterXError as e:
        raise InputError(str(e), path)


def _explore(config, seed):
    return explore_exchange_graph(seed, config.max_nodes, config.threads)


# ---------------------------------------------------------------------- #
#  Commands
# ---------------------------------------------------------------------- #

def cmd_mutate(config, args):
    s = load_seed(config.inputs['seed'])
    s2 = mutate_seed(s, args.at)
    return {'direction': args.at, 'seed': s2.to_json(),
            'x': {v: f.to_text() for v, f in mutate_x(s, args.at).items()}}


def cmd_graph(config, args):
    g = _explore(config, load_seed(config.inputs['seed']))
    if g.truncated:
        dump_json(dict(g.to_json(), rng_seed=config.rng_seed), config.output)
        g.require_finite()
    return g.to_json(transitions=args.transitions)


def cmd_trop_mutate(config, args):
    g = _explore(config, load_seed(config.inputs['seed']))
    x = load_point(config.inputs['point'])
    return {'point': pl_mutate(x, args.at, g).to_json(),
            'direction': args.at}


def cmd_cones(config, args):
    g = _explore(config, load_seed(config.inputs['seed']))
    x = load_point(config.inputs['point'])
    return {'point': x.to_json(),
            'cones': [cone.to_json() for _, cone in
                      positive_part_cover(g, x)]}


def cmd_valuation(config, args):
    f = _read_rational(config.inputs['f'])
    x = load_point(config.inputs['point'])
    labels = None
    if 'seed' in config.inputs:
        labels = load_seed(config.inputs['seed']).labels
    value = valuation_of(f, x, labels)
    return {'f': f.to_text(), 'point': x.to_json(), 'valuation': str(value)}


def cmd_flip(config, args):
    T = load_triangulation(config.inputs['triangulation'])
    E = Chord.of(*args.diagonal)
    if E not in T.diagonals:
        raise InputError("%s is not a diagonal of %s" % (E, T))
    T2, iso = flip_permutation(T, E)
    new, = T2.diagonals - T.diagonals
    return {'flipped': list(E), 'new_diagonal': list(new),
            'triangulation': T2.to_json(), 'permutation': list(iso.perm),
            'epsilon': [list(r) for r in adjacency_epsilon(T2)]}


def cmd_chart(config, args):
    T = load_triangulation(config.inputs['triangulation'])
    c = load_configuration(config.inputs['configuration'])
    coords = chart_coords(T, c)
    return {'triangulation': T.to_json(),
            'coords': {E.label(): str(v) for E, v in coords.items()},
            'epsilon': [list(r) for r in adjacency_epsilon(T)]}


def cmd_associahedron(config, args):
    faces = associahedron_faces(args.size, args.codim)
    return {'size': args.size, 'codim': args.codim, 'count': len(faces),
            'faces': [[list(c) for c in sorted(F)] for F in faces]}


def cmd_canon(config, args):
    l = load_lamination(config.inputs['lamination'])
    out = {'lamination': l.to_json(),
           'function': canonical_function(l).to_text()}
    if 'triangulation' in config.inputs:
        T = load_triangulation(config.inputs['triangulation'])
        out['triangulation'] = T.to_json()
        out['expansion'] = canonical_in_chart(l, T).to_text()
    if args.check_positivity:
        bad = check_positivity(l)
        out['positive'] = not bad
        out['failing_charts'] = [T.to_json() for T in bad]
    return out


def cmd_laminations(config, args):
    items = []
    for l in enumerate_laminations(args.size, config.bound):
        items.append({'lamination': l.to_json(),
                      'coords': list(tree_coords(l).values()),
                      'function': canonical_function(l).to_text()})
    return {'size': args.size, 'bound': config.bound, 'count': len(items),
            'laminations': items}


def cmd_pairing(config, args):
    l = load_lamination(config.inputs['lamination'])
    T = load_triangulation(config.inputs['triangulation'])
    x = load_point(config.inputs['point'])
    return {'lamination': l.to_json(), 'triangulation': T.to_json(),
            'point': x.to_json(), 'pairing': str(pairing(l, T, x))}


def cmd_completion(config, args):
    seed = load_seed(config.inputs['seed'])
    found = triangulation_for_seed(seed)
    if found is not None:
        T, _ = found
        log.info("seed of type A%i: exploring triangulations", seed.n)
        g = polygon_exchange_graph(T.size, root=T)
    else:
        g = _explore(config, seed)
    poset = strata_poset(g)
    out = poset.to_json()
    out['positive_cells'] = {str(k): v for k, v in
                             poset.positive_cells().items()}
    return out


def cmd_torus_boundary(config, args):
    patch = orbit_patch(config.max_len)
    text = render_hemisphere(patch, format=config.format,
                             rays=not args.no_rays)
    if config.format == 'json':
        obj = json.loads(text)
        obj['max_len'] = config.max_len
        return obj
    if config.output is None:
        sys.stdout.write(text)
    else:
        with open(config.output, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
    return None


def cmd_verify(config, args):
    bound = DEFAULT_BOUND if args.bound is None else config.bound
    report = run_suite(args.suite, config.rng_seed, config.size_cap,
                       config.samples, config.threads, bound)
    dump_json(report, config.output)
    if report['failures']:
        raise PropertyFailure(report['failures'])
    return None


COMMANDS = {
    'mutate': cmd_mutate,
    'graph': cmd_graph,
    'trop-mutate': cmd_trop_mutate,
    'cones': cmd_cones,
    'valuation': cmd_valuation,
    'flip': cmd_flip,
    'chart': cmd_chart,
    'associahedron': cmd_associahedron,
    'canon': cmd_canon,
    'laminations': cmd_laminations,
    'pairing': cmd_pairing,
    'completion': cmd_completion,
    'torus-boundary': cmd_torus_boundary,
    'verify': cmd_verify,
}


# ---------------------------------------------------------------------- #
#  Parser
# ---------------------------------------------------------------------- #

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='more log output on stderr (repeatable)')
    common.add_argument('--quiet', action='store_true',
                        help='log errors only')
    common.add_argument('--out', metavar='PATH',
                        help='output file (default: stdout)')
    common.add_argument('--rng-seed', dest='rng_seed', type=int,
                        help='seed of the random generator (default: 0)')
    common.add_argument('--threads', type=int,
                        help='worker threads, capped by CLUSTERX_THREADS')

    parser = argparse.ArgumentParser(
        prog='clusterx',
        description='Cluster varieties: seeds, mutations, tropical points, '
                    'polygon charts, canonical bases and completions.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    def add(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    def seed_option(p, required=True):
        p.add_argument('--seed', required=required, metavar='FILE',
                       help='seed JSON')

    def max_nodes_option(p):
        p.add_argument('--max-nodes', dest='max_nodes', type=int,
                       help='bound on explored seeds (default: 1000)')

    p = add('mutate', 'mutate a seed')
    seed_option(p)
    p.add_argument('--at', type=int, required=True, help='direction')

    p = add('graph', 'explore the exchange graph')
    seed_option(p)
    max_nodes_option(p)
    p.add_argument('--transitions', action='store_true',
                   help='include chart transitions from the root')

    p = add('trop-mutate', 'mutate a tropical point')
    seed_option(p)
    max_nodes_option(p)
    p.add_argument('--point', required=True, metavar='FILE')
    p.add_argument('--at', type=int, required=True, help='direction')

    p = add('cones', 'special cones containing a tropical point')
    seed_option(p)
    max_nodes_option(p)
    p.add_argument('--point', required=True, metavar='FILE')

    p = add('valuation', 'strict valuation of a function at a point')
    p.add_argument('--f', required=True, metavar='FILE',
                   help='function in text form')
    p.add_argument('--point', required=True, metavar='FILE')
    seed_option(p, required=False)

    p = add('flip', 'flip a diagonal of a triangulation')
    p.add_argument('--triangulation', required=True, metavar='FILE')
    p.add_argument('--diagonal', type=int, nargs=2, required=True,
                   metavar=('I', 'J'))

    p = add('chart', 'cross-ratio coordinates of a configuration')
    p.add_argument('--triangulation', required=True, metavar='FILE')
    p.add_argument('--config', dest='configuration', required=True,
                   metavar='FILE', help='configuration JSON')

    p = add('associahedron', 'faces of the associahedron')
    p.add_argument('--size', type=int, required=True)
    p.add_argument('--codim', type=int, required=True)

    p = add('canon', 'canonical function of a lamination')
    p.add_argument('--lamination', required=True, metavar='FILE')
    p.add_argument('--triangulation', metavar='FILE',
                   help='expand in the chart of this triangulation')
    p.add_argument('--check-positivity', dest='check_positivity',
                   action='store_true')

    p = add('laminations', 'enumerate laminations by tree coordinates')
    p.add_argument('--size', type=int, required=True)
    p.add_argument('--bound', type=int, help='coordinate bound (default: 1)')

    p = add('pairing', 'pair a lamination with a tropical point')
    p.add_argument('--lamination', required=True, metavar='FILE')
    p.add_argument('--triangulation', required=True, metavar='FILE')
    p.add_argument('--point', required=True, metavar='FILE')

    p = add('completion', 'strata of the special completion')
    seed_option(p)
    max_nodes_option(p)

    p = add('torus-boundary', 'orbit patch of the punctured torus boundary')
    p.add_argument('--max-len', dest='max_len', type=int,
                   help='word length (default: 6)')
    p.add_argument('--format', choices=('svg', 'json'), default='svg')
    p.add_argument('--no-rays', dest='no_rays', action='store_true')

    p = add('verify', 'run the property suites')
    p.add_argument('--suite', choices=('all',) + tuple(SUITES),
                   default='all')
    p.add_argument('--size-cap', dest='size_cap', type=int,
                   help='largest polygon size (default: 6)')
    p.add_argument('--bound', type=int,
                   help='coordinate bound of the lamination checks '
                        '(default: %i)' % DEFAULT_BOUND)
    p.add_argument('--samples', type=int,
                   help='random samples per check (default: 20)')
    p.add_argument('--seed', dest='rng_seed', type=int,
                   help='seed of the random generator (default: 0)')
    return parser


def dispatch(config, args):
    """
    Run the subcommand of ``config`` and write its document.

    Returns → int:
        Exit status.
    """
    try:
        log.debug("running %s with %s", config.command, config)
        result = COMMANDS[config.command](config, args)
        if result is not None:
            result['rng_seed'] = config.rng_seed
            dump_json(result, config.output)
    except PropertyFailure as e:
        log.error("verification failed: %s", ', '.join(e.failures))
        return EXIT_PROPERTY
    except TruncationError as e:
        log.error("%s", e)
        return EXIT_TRUNCATED
    except (InputError, OSError, json.JSONDecodeError) as e:
        log.error("%s", e)
        return EXIT_INPUT
    except ClusterXError as e:
        log.error("%s", e)
        return EXIT_INPUT
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose, args.quiet)
    try:
        config = RunConfig.from_args(args)
    except InputError as e:
        log.error("%s", e)
        return EXIT_INPUT
    return dispatch(config, args)
