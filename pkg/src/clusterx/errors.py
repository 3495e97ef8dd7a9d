"""Exception hierarchy shared by every clusterx module."""


class ClusterXError(RuntimeError):
    """Base class of all errors raised by clusterx."""


class InputError(ClusterXError, ValueError):
    """
    Malformed user input: unreadable JSON or text forms, schema violations,
    out of range indices.

    Parameter ``path`` (str):
        Optional path of the offending file, reported by the command line
        front end.
    """

    def __init__(self, msg, path=None):
        if path is not None:
            msg = '%s: %s' % (path, msg)
        super().__init__(msg)
        self.path = path


class LaurentError(ClusterXError, ValueError):
    pass


class SeedError(ClusterXError, ValueError):
    pass


class PolygonError(ClusterXError, ValueError):
    pass


class LaminationError(ClusterXError, ValueError):
    pass


class HalfIntegralError(LaminationError):
    """Tree coordinate with an odd crossing sum (vertex-sum violation)."""


class TruncationError(ClusterXError):
    """Exploration stopped at its node bound before the graph closed."""


class PropertyFailure(ClusterXError):
    """At least one property check of a verification suite failed."""

    def __init__(self, failures):
        super().__init__('%i property check(s) failed: %s'
                         % (len(failures), ', '.join(failures)))
        self.failures = list(failures)
