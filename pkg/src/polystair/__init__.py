"""polystair: exact-arithmetic toolkit for lattice polygon mutations,
cusp resolutions, and symplectic ellipsoid-embedding staircases."""

from .exact import Rat, rat
from .polygon import RationalPolygon, classify_all, classify_vertex
from .mutation import mutate, explore_mutation_graph
from .cusp import PuiseuxChar, minimal_resolution, ncr_chain, pairs_to_char
from .staircase import builtin_specs, get_spec, outer_corners, inner_corners
from .obstruction import find_obstructions, staircase_by_mutation, seed_polygon
from .perf_f1 import perf_candidate

__version__ = "0.1.0"

__all__ = [
    "Rat",
    "rat",
    "RationalPolygon",
    "classify_all",
    "classify_vertex",
    "mutate",
    "explore_mutation_graph",
    "PuiseuxChar",
    "minimal_resolution",
    "ncr_chain",
    "pairs_to_char",
    "builtin_specs",
    "get_spec",
    "outer_corners",
    "inner_corners",
    "find_obstructions",
    "staircase_by_mutation",
    "seed_polygon",
    "perf_candidate",
]
