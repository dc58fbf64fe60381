"""Exact polyhedral toolkit for cluster seeds and their polytopes.

Tropicalized mutation carries a lattice polytope from seed to seed; for the
flag variety of SL_4 this attaches a reflexive polytope to each of the 14
seeds, and :mod:`clusterpoly.equivalence` sorts them into unimodular classes.
"""

from .linalg import AffineMap, RatMatrix, mat_det, mat_inverse, mat_mul
from .polytope import (
    HalfSpace,
    Polytope,
    PolytopeError,
    f_vector,
    is_combinatorially_isomorphic,
    is_reflexive,
    polytope_from_hrep,
    polytope_from_vrep,
    vertex_degree_histogram,
)
from .seeds import ExchangeGraph, Seed, build_exchange_graph, mutate_epsilon, seeds_equivalent
from .tropical import TropicalMutation, apply_tropical, tropical_map
from .flag import compute_all_polytopes, reduced_words, sl4_exchange_graph
from .equivalence import UnimodularMap, classify, fingerprint, verify_unimodular_map

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "RatMatrix",
    "mat_det",
    "mat_inverse",
    "mat_mul",
    "HalfSpace",
    "Polytope",
    "PolytopeError",
    "f_vector",
    "is_combinatorially_isomorphic",
    "is_reflexive",
    "polytope_from_hrep",
    "polytope_from_vrep",
    "vertex_degree_histogram",
    "ExchangeGraph",
    "Seed",
    "build_exchange_graph",
    "mutate_epsilon",
    "seeds_equivalent",
    "TropicalMutation",
    "apply_tropical",
    "tropical_map",
    "compute_all_polytopes",
    "reduced_words",
    "sl4_exchange_graph",
    "UnimodularMap",
    "classify",
    "fingerprint",
    "verify_unimodular_map",
]
