"""Medians on finite distributive lattices, with two working instantiations.

The core fact: if a family of elements of a finite distributive lattice
all satisfy a predicate whose satisfying set is closed under meet and
join, then so does every coordinatewise order statistic of the family.
`lattice_median` implements the construction over count vectors,
`order_core` supplies the Birkhoff encoding that justifies the vector
view, and `stable_matching` / `market_clearing` instantiate it on two
concrete lattices with brute-force oracles alongside.
"""

from .errors import LatmedError
from .lattice_median import (
    MedianFamily,
    PredicateReport,
    check_median_theorem,
    check_regular,
    generalized_medians,
    medians_via_meet_join,
)
from .order_core import (
    ChainPartition,
    ExplicitLattice,
    Poset,
    all_ideals,
    birkhoff_round_trip,
    chain_partition,
    explicit_lattice,
    format_vector,
    ideal_to_vector,
    join,
    join_irreducibles,
    lattice_from_vectors,
    meet,
    parse_vector,
    poset_from_covers,
    vec_leq,
    vector_to_ideal,
)
from .verify import VerifyConfig, verify_suite

__all__ = [
    "ChainPartition",
    "ExplicitLattice",
    "LatmedError",
    "MedianFamily",
    "Poset",
    "PredicateReport",
    "VerifyConfig",
    "all_ideals",
    "birkhoff_round_trip",
    "chain_partition",
    "check_median_theorem",
    "check_regular",
    "explicit_lattice",
    "format_vector",
    "generalized_medians",
    "ideal_to_vector",
    "join",
    "join_irreducibles",
    "lattice_from_vectors",
    "meet",
    "medians_via_meet_join",
    "parse_vector",
    "poset_from_covers",
    "vec_leq",
    "vector_to_ideal",
    "verify_suite",
]

__version__ = "0.1.0"
