from .gaschuetz import frattini, gaschuetz_exponents, verify_exponents
from .invariant import (
    EigenDecomposition,
    GreedyResult,
    RepMatrix,
    common_eigenspaces,
    greedy_line_subset,
    greedy_subspace_subset,
    w_potential,
    wedge_block,
)
from .rss import find_rss_in_coset, rss_centralizer_orders

__all__ = [
    "EigenDecomposition",
    "GreedyResult",
    "RepMatrix",
    "common_eigenspaces",
    "find_rss_in_coset",
    "frattini",
    "gaschuetz_exponents",
    "greedy_line_subset",
    "greedy_subspace_subset",
    "rss_centralizer_orders",
    "verify_exponents",
    "w_potential",
    "wedge_block",
]
