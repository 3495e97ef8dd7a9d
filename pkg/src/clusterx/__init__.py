"""
clusterx: cluster varieties of finite type, their tropical points, polygon
charts, canonical bases of laminations and special completions.
"""

__version__ = '0.1.0'

from clusterx.errors import (ClusterXError, InputError, LaurentError,
                             SeedError, PolygonError, LaminationError,
                             HalfIntegralError, TruncationError,
                             PropertyFailure)
from clusterx.laurent import LaurentPoly, PosRational, tropicalize
from clusterx.seed import (Seed, ExchangeGraph, mutate_seed, mutate_x,
                           explore_exchange_graph, dynkin_seed, a_n_seed)
from clusterx.tropical import TropicalPoint, SpecialCone, pl_mutate
from clusterx.polygon import Chord, Triangulation, Configuration
from clusterx.lamination import Lamination, PlaneTree
from clusterx.completion import strata_poset
