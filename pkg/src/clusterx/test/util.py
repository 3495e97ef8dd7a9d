"""
Miscellaneous utility functions for tests (common fixtures,
test decorators, etc).
"""

import inspect
import json
from functools import wraps

import numpy as np
import pytest


def seeded_rng(seed=0):
    """Function decorator passing ``rng=np.random.default_rng(seed)``.

    Every call of the decorated test starts from the same state, so a failure
    reproduces on rerun.
    """
    def decorator(func):
        # @wraps keeps __name__ for pytest-xdist bookkeeping
        @wraps(func)
        def f(*args, **kwargs):
            kwargs['rng'] = np.random.default_rng(seed)
            return func(*args, **kwargs)
        f.__signature__ = _without_rng(func)
        return f
    return decorator


def _without_rng(func):
    sig = inspect.signature(func)
    return sig.replace(parameters=[p for name, p in sig.parameters.items()
                                   if name != 'rng'])


@pytest.fixture
def tmpfile(request, tmpdir_factory):
    """Fixture to create a temporary file"""
    return make_tmpfile(request, tmpdir_factory)


def make_tmpfile(request, tmpdir_factory):
    my_dir = tmpdir_factory.mktemp('tmpdir')
    request.addfinalizer(lambda: my_dir.remove(rec=1))
    path_value = str(my_dir.join('tmpfile'))
    open(path_value, 'a').close()
    return path_value


def write_json(path, obj):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(obj, f)
    return str(path)
