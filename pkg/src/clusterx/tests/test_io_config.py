import argparse
import json
import os

import pytest

from clusterx.config import THREADS_ENV, RunConfig, thread_cap
from clusterx.errors import InputError
from clusterx.io import (dump_json, load_configuration, load_json,
                         load_lamination, load_point, load_seed,
                         load_triangulation, seed_from_json)
from clusterx.polygon import INF, fan_triangulation
from clusterx.test.util import write_json


def test01_seed_documents(tmpfile):
    s = load_seed(write_json(tmpfile, {'epsilon': [[0, -1], [1, 0]]}))
    assert s.n == 2 and s.d == (1, 1)
    s = load_seed(write_json(tmpfile, {'epsilon': [[0, -1], [2, 0]]}))
    assert s.d == (2, 1)
    s = seed_from_json({'type': 'A', 'rank': 3,
                        'labels': ['ignored']})
    assert s.n == 3
    assert seed_from_json({'type': 'torus'}).n == 3
    assert seed_from_json(s.to_json()).epsilon == s.epsilon


@pytest.mark.parametrize('obj', [
    [1, 2],
    {'labels': ['X0']},
    {'epsilon': [[0, 1], [1, 0]]},
    {'epsilon': 'x'},
    {'type': 'A'},
    {'type': 'Q', 'rank': 2},
])
def test02_bad_seed(tmpfile, obj):
    with pytest.raises(InputError) as e:
        load_seed(write_json(tmpfile, obj))
    assert tmpfile in str(e.value)
    assert e.value.path == tmpfile


def test03_missing_and_invalid(tmpfile):
    missing = os.path.join(os.path.dirname(tmpfile), 'nope.json')
    with pytest.raises(InputError) as e:
        load_json(missing)
    assert str(e.value).startswith(missing)

    with open(tmpfile, 'w') as f:
        f.write('{"epsilon": ')
    with pytest.raises(InputError) as e:
        load_seed(tmpfile)
    assert 'invalid JSON' in str(e.value)
    # the path is reported once
    assert str(e.value).count(tmpfile) == 1


def test04_other_documents(tmpfile):
    T = load_triangulation(write_json(tmpfile, fan_triangulation(6).to_json()))
    assert T == fan_triangulation(6)
    c = load_configuration(write_json(tmpfile,
                                      {'points': ['0', '1/2', 'inf', '-3']}))
    assert c[3] is INF and c[2] == 0.5
    l = load_lamination(write_json(tmpfile, {'size': 4, 'weights': []}))
    assert l.is_zero()
    x = load_point(write_json(tmpfile, {'chart': '0', 'coords': [1, '-1/2']}))
    assert x.coords[1] == -0.5

    for obj, loader in [({'size': 5, 'diagonals': [[1, 3], [2, 4]]},
                         load_triangulation),
                        ({'points': ['1', '1']}, load_configuration),
                        ({'chart': '0'}, load_point)]:
        with pytest.raises(InputError) as e:
            loader(write_json(tmpfile, obj))
        assert e.value.path == tmpfile


def test05_dump(tmpfile, capsys):
    text = dump_json({'b': 1, 'a': [1, 2]}, tmpfile)
    with open(tmpfile) as f:
        assert f.read() == text
    assert text.endswith('\n')
    assert list(json.loads(text)) == ['a', 'b']
    dump_json({'x': 1})
    assert capsys.readouterr().out == '{\n  "x": 1\n}\n'


def test06_thread_cap(monkeypatch):
    assert thread_cap() == 1
    monkeypatch.setenv(THREADS_ENV, '4')
    assert thread_cap() == 4
    monkeypatch.setenv(THREADS_ENV, ' ')
    assert thread_cap() == 1
    for bad in ('two', '0', '-3'):
        monkeypatch.setenv(THREADS_ENV, bad)
        with pytest.raises(InputError):
            thread_cap()


def test07_run_config(monkeypatch):
    cfg = RunConfig('graph')
    assert cfg.max_nodes == 1000 and cfg.threads == 1
    assert RunConfig('laminations', bound=0).bound == 0
    for kwargs in ({'max_nodes': 0}, {'samples': 0}, {'bound': -1},
                   {'max_len': -2}, {'threads': 0}):
        with pytest.raises(InputError):
            RunConfig('graph', **kwargs)

    args = argparse.Namespace(command='graph', seed='a2.json', point=None,
                              max_nodes=7, threads=8, out=None, rng_seed=3)
    monkeypatch.setenv(THREADS_ENV, '2')
    cfg = RunConfig.from_args(args)
    assert cfg.inputs == {'seed': 'a2.json'}
    assert cfg.max_nodes == 7 and cfg.rng_seed == 3
    assert cfg.threads == 2
    assert cfg.format == 'json'


def test08_zero_threads_and_inputs(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, '4')
    args = argparse.Namespace(command='graph', seed='torus.json',
                              max_nodes=10, threads=0, out=None)
    with pytest.raises(InputError):
        RunConfig.from_args(args)

    args.threads = None
    assert RunConfig.from_args(args).threads == 4

    args = argparse.Namespace(command='valuation', f='f.txt',
                              point='x.json', g='h.txt', out=None)
    assert RunConfig.from_args(args).inputs == {'f': 'f.txt',
                                                'point': 'x.json'}
