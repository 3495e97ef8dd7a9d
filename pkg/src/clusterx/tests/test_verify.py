import pytest

from clusterx.errors import InputError
from clusterx.verify import (DEFAULT_BOUND, SUITES, PropertyCheck,
                             VerifyContext, check_canonical_positivity,
                             check_tree_roundtrip, run_suite)


def test01_property_check():
    def cases(ctx):
        for i in range(30):
            yield i % 3 != 0, 'case %i' % i

    check = PropertyCheck('thirds', cases)
    assert not check.run(VerifyContext(), max_messages=4)
    assert check.cases == 30
    lines = check.messages.splitlines()
    assert lines[:4] == ['Failure: case 0', 'Failure: case 3',
                         'Failure: case 6', 'Failure: case 9']
    assert lines[4] == '(6 further failures omitted)'
    assert lines[-1] == 'thirds: 30 case(s), 10 failure(s)'
    assert check.to_json()['passed'] is False


def test02_exception_counts_as_failure():
    def cases(ctx):
        yield True, 'fine'
        raise ZeroDivisionError('boom')

    check = PropertyCheck('raises', cases)
    assert not check.run(VerifyContext())
    assert check.cases == 1
    assert 'ZeroDivisionError: boom' in check.messages

    ok = PropertyCheck('empty', lambda ctx: iter(()))
    assert ok.run(VerifyContext())
    assert ok.to_json() == {'name': 'empty', 'passed': True, 'cases': 0,
                            'messages': ['empty: 0 case(s), 0 failure(s)']}


def test03_rng_streams():
    a, b = VerifyContext(3), VerifyContext(3)
    assert a.rng('x').integers(0, 10**9) == b.rng('x').integers(0, 10**9)
    assert a.rng('x').integers(0, 10**9) != a.rng('y').integers(0, 10**9)


@pytest.mark.parametrize('suite', ['laurent', 'seed', 'tropical', 'polygon',
                                   'torus'])
def test04_suites(suite):
    report = run_suite(suite, rng_seed=1, size_cap=5, samples=2)
    assert report['failures'] == []
    assert len(report['results']) == len(SUITES[suite])
    assert all(r['cases'] > 0 for r in report['results'])


@pytest.mark.slow
@pytest.mark.parametrize('suite', ['lamination', 'completion'])
def test05_slow_suites(suite):
    report = run_suite(suite, rng_seed=2, size_cap=6, samples=4)
    assert report['failures'] == []


def test06_report():
    report = run_suite('seed', rng_seed=4, size_cap=4, samples=1)
    assert report == run_suite('seed', rng_seed=4, size_cap=4, samples=1)
    assert report['suite'] == 'seed' and report['size_cap'] == 4
    assert report['bound'] == DEFAULT_BOUND == 3
    with pytest.raises(InputError):
        run_suite('nope')


def test07_lamination_ranges():
    ctx = VerifyContext(5, size_cap=5, samples=2, bound=1)
    check = PropertyCheck('tree_roundtrip', check_tree_roundtrip)
    assert check.run(ctx)
    # 2 trees of the square and 5 of the pentagon
    assert check.cases == (2 + 5) * 2

    check = PropertyCheck('canonical_positivity', check_canonical_positivity)
    assert check.run(ctx)
    assert check.cases == 3 + 9
    assert VerifyContext().bound == 3
