import logging
import os
from dataclasses import dataclass, field

from clusterx.errors import InputError

log = logging.getLogger(__name__)

THREADS_ENV = 'CLUSTERX_THREADS'


def thread_cap():
    """Worker count allowed by ``CLUSTERX_THREADS`` (default 1)."""
    value = os.environ.get(THREADS_ENV)
    if value is None or not value.strip():
        return 1
    try:
        n = int(value)
    except ValueError:
        raise InputError("%s must be an integer, got %r"
                         % (THREADS_ENV, value))
    if n < 1:
        raise InputError("%s must be positive" % THREADS_ENV)
    return n


@dataclass(frozen=True)
class RunConfig:
    """
    Settings of one command line run.

    Caps (``max_nodes``, ``bound``, ``samples``, ``size_cap``, ``max_len``)
    must be positive where given; ``bound`` and ``max_len`` may be zero.
    """
    command: str
    inputs: dict = field(default_factory=dict)
    max_nodes: int = 1000
    bound: int = 1
    samples: int = 20
    size_cap: int = 6
    max_len: int = 6
    rng_seed: int = 0
    threads: int = 1
    format: str = 'json'
    output: str = None

    def __post_init__(self):
        for name in ('max_nodes', 'samples', 'size_cap', 'threads'):
            if getattr(self, name) < 1:
                raise InputError("--%s must be positive"
                                 % name.replace('_', '-'))
        for name in ('bound', 'max_len'):
            if getattr(self, name) < 0:
                raise InputError("--%s must be >= 0"
                                 % name.replace('_', '-'))

    @classmethod
    def from_args(cls, args):
        """Build from an argparse namespace; absent options keep defaults."""
        values = vars(args)
        inputs = {k: v for k, v in values.items()
                  if k in _INPUT_OPTIONS and v is not None}
        kwargs = {k: values[k] for k in _CAP_OPTIONS
                  if values.get(k) is not None}
        cap = thread_cap()
        threads = values.get('threads')
        kwargs['threads'] = cap if threads is None else min(threads, cap)
        return cls(command=values.get('command'), inputs=inputs,
                   format=values.get('format') or 'json',
                   output=values.get('out'), **kwargs)


_INPUT_OPTIONS = ('seed', 'point', 'triangulation', 'configuration',
                  'lamination', 'f')
_CAP_OPTIONS = ('max_nodes', 'bound', 'samples', 'size_cap', 'max_len',
                'rng_seed')
