import json
import os

import pytest

from clusterx import __version__
from clusterx.cli import (EXIT_INPUT, EXIT_OK, EXIT_TRUNCATED, build_parser,
                          main)
from clusterx.polygon import fan_triangulation
from clusterx.test.util import write_json


@pytest.fixture
def workdir(tmpdir):
    return make_workdir(tmpdir)
def make_workdir(tmpdir):
    d = str(tmpdir)
    write_json(os.path.join(d, 'a2.json'), {'epsilon': [[0, -1], [1, 0]]})
    write_json(os.path.join(d, 'kronecker.json'),
               {'epsilon': [[0, 2], [-2, 0]]})
    write_json(os.path.join(d, 'fan5.json'), fan_triangulation(5).to_json())
    write_json(os.path.join(d, 'fan6.json'), fan_triangulation(6).to_json())
    write_json(os.path.join(d, 'pentagon.json'),
               {'size': 5, 'weights': [
                   {'chord': [1, 4], 'w': 1}, {'chord': [1, 2], 'w': -1},
                   {'chord': [2, 3], 'w': 1}, {'chord': [3, 4], 'w': -1}]})
    write_json(os.path.join(d, 'point.json'),
               {'chart': '0', 'coords': [1, -2]})
    write_json(os.path.join(d, 'config.json'),
               {'points': ['0', '1', '2', '3', '4']})
    with open(os.path.join(d, 'f.txt'), 'w') as f:
        f.write('X0 + X1\n')
    return d


def run(workdir, *argv):
    'Run the front end with file names relative to ``workdir``'
    out = os.path.join(workdir, 'out.json')
    argv = [os.path.join(workdir, a) if a.endswith(('.json', '.txt')) else a
            for a in argv]
    code = main(list(argv) + ['--out', out])
    text = None
    if os.path.exists(out):
        with open(out) as f:
            text = f.read()
        os.remove(out)
    return code, text


def test01_parser():
    parser = build_parser()
    args = parser.parse_args(['graph', '--seed', 'a.json', '-vv'])
    assert args.command == 'graph' and args.verbose == 2
    args = parser.parse_args(['verify', '--seed', '5'])
    assert args.rng_seed == 5
    with pytest.raises(SystemExit):
        parser.parse_args(['frobnicate'])
    with pytest.raises(SystemExit):
        parser.parse_args(['flip', '--triangulation', 'x.json'])


def test02_version(capsys):
    with pytest.raises(SystemExit):
        main(['--version'])
    assert __version__ in capsys.readouterr().out


def test03_graph(workdir):
    code, text = run(workdir, 'graph', '--seed', 'a2.json')
    assert code == EXIT_OK
    data = json.loads(text)
    assert data['node_count'] == 5 and len(data['edges']) == 10
    assert data['rng_seed'] == 0 and not data['truncated']
    assert text.endswith('}\n')

    code, again = run(workdir, 'graph', '--seed', 'a2.json')
    assert again == text

    code, text = run(workdir, 'graph', '--seed', 'a2.json', '--transitions')
    assert 'transition' in json.loads(text)['nodes'][0]


def test04_truncated(workdir):
    code, text = run(workdir, 'graph', '--seed', 'kronecker.json',
                     '--max-nodes', '3')
    assert code == EXIT_TRUNCATED
    data = json.loads(text)
    assert data['node_count'] == 3 and data['truncated']


def test05_input_errors(workdir, capsys):
    missing = os.path.join(workdir, 'missing.json')
    assert main(['graph', '--seed', missing]) == EXIT_INPUT
    assert missing in capsys.readouterr().err

    code, _ = run(workdir, 'graph', '--seed', 'a2.json', '--max-nodes', '0')
    assert code == EXIT_INPUT
    code, _ = run(workdir, 'flip', '--triangulation', 'fan5.json',
                  '--diagonal', '2', '4')
    assert code == EXIT_INPUT
    code, _ = run(workdir, 'mutate', '--seed', 'a2.json', '--at', '2')
    assert code == EXIT_INPUT
    code, _ = run(workdir, 'pairing', '--lamination', 'pentagon.json',
                  '--triangulation', 'fan6.json', '--point', 'point.json')
    assert code == EXIT_INPUT


def test06_mutate(workdir):
    code, text = run(workdir, 'mutate', '--seed', 'a2.json', '--at', '0')
    assert code == EXIT_OK
    data = json.loads(text)
    assert data['seed']['epsilon'] == [[0, 1], [-1, 0]]
    assert sorted(data['x']) == ['X0', 'X1']


def test07_tropical(workdir):
    code, text = run(workdir, 'trop-mutate', '--seed', 'a2.json',
                     '--point', 'point.json', '--at', '0')
    assert code == EXIT_OK
    assert json.loads(text)['point'] == {'chart': '1', 'coords': [-1, -2]}

    code, text = run(workdir, 'cones', '--seed', 'a2.json',
                     '--point', 'point.json')
    assert code == EXIT_OK
    assert len(json.loads(text)['cones']) >= 1

    write_json(os.path.join(workdir, 'p2.json'),
               {'chart': '0', 'coords': [-2, 1]})
    code, text = run(workdir, 'valuation', '--f', 'f.txt',
                     '--point', 'p2.json', '--seed', 'a2.json')
    assert code == EXIT_OK
    assert json.loads(text)['valuation'] == '-1'


def test08_polygon(workdir):
    code, text = run(workdir, 'flip', '--triangulation', 'fan6.json',
                     '--diagonal', '1', '4')
    data = json.loads(text)
    assert code == EXIT_OK
    assert data['new_diagonal'] == [3, 5]
    assert data['permutation'] == [0, 2, 1]

    code, text = run(workdir, 'chart', '--triangulation', 'fan5.json',
                     '--config', 'config.json')
    assert code == EXIT_OK
    assert json.loads(text)['coords'] == {'X1_3': '1/3', 'X1_4': '1/2'}

    code, text = run(workdir, 'associahedron', '--size', '6', '--codim', '2')
    assert json.loads(text)['count'] == 21


def test09_laminations(workdir):
    code, text = run(workdir, 'laminations', '--size', '5')
    assert code == EXIT_OK
    data = json.loads(text)
    assert data['count'] == 9 and data['bound'] == 1
    assert [0, 0] in [item['coords'] for item in data['laminations']]

    code, text = run(workdir, 'canon', '--lamination', 'pentagon.json',
                     '--triangulation', 'fan5.json', '--check-positivity')
    assert code == EXIT_OK
    data = json.loads(text)
    assert data['function'] == 'D1_2^-1 * D1_4 * D2_3 * D3_4^-1'
    assert data['positive'] and data['failing_charts'] == []

    write_json(os.path.join(workdir, 'zero.json'), {'size': 5, 'weights': []})
    code, text = run(workdir, 'pairing', '--lamination', 'zero.json',
                     '--triangulation', 'fan5.json', '--point', 'point.json')
    assert code == EXIT_OK
    assert json.loads(text)['pairing'] == '0'


def test10_completion(workdir):
    code, text = run(workdir, 'completion', '--seed', 'a2.json')
    assert code == EXIT_OK
    data = json.loads(text)
    assert data['counts_by_codim'] == [1, 5, 5]
    assert data['positive_cells'] == {'0': 5, '1': 5, '2': 1}


def test11_torus_boundary(workdir):
    code, text = run(workdir, 'torus-boundary', '--max-len', '3',
                     '--format', 'json')
    assert code == EXIT_OK
    data = json.loads(text)
    assert data['max_len'] == 3 and data['triangles']

    code, text = run(workdir, 'torus-boundary', '--max-len', '2',
                     '--no-rays')
    assert code == EXIT_OK
    assert text.startswith('<?xml') and '<line' not in text


def test12_verify(workdir):
    code, text = run(workdir, 'verify', '--suite', 'seed', '--size-cap', '5',
                     '--samples', '2', '--seed', '7')
    assert code == EXIT_OK
    data = json.loads(text)
    assert data['rng_seed'] == 7 and data['failures'] == []
    assert data['bound'] == 3
    assert [r['name'] for r in data['results']] == \
        ['involution', 'pentagon', 'catalan_counts', 'cycles_close']


def test13_threads(workdir, monkeypatch):
    monkeypatch.setenv('CLUSTERX_THREADS', '2')
    code, text = run(workdir, 'graph', '--seed', 'a2.json', '--threads', '4')
    assert code == EXIT_OK
    assert json.loads(text)['node_count'] == 5
    code, _ = run(workdir, 'graph', '--seed', 'a2.json', '--threads', '0')
    assert code == EXIT_INPUT
    monkeypatch.setenv('CLUSTERX_THREADS', 'many')
    code, _ = run(workdir, 'graph', '--seed', 'a2.json')
    assert code == EXIT_INPUT


def test14_dispatch(tmpfile):
    from argparse import Namespace
    from clusterx.cli import dispatch
    from clusterx.config import RunConfig

    config = RunConfig('associahedron', output=tmpfile, rng_seed=5)
    assert dispatch(config, Namespace(size=5, codim=1)) == EXIT_OK
    with open(tmpfile) as f:
        data = json.load(f)
    assert data['count'] == 5 and data['rng_seed'] == 5
