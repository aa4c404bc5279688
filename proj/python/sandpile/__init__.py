"""Chip-firing on finite multigraphs.

Divisors are sequences of Python ints (any size); trees are lists of edge ids.
"""

from ._errors import SandpileError
from ._sandpile import (
    Graph,
    count_trees,
    divisor_from_tree,
    equivalent,
    is_reduced,
    jacobian,
    rank_at_least,
    reduce,
    sample_trees,
    spanning_trees,
    tree_from_divisor,
    verify_bijection,
    winnable,
    winning_strategy,
)

__all__ = [
    "Graph",
    "SandpileError",
    "count_trees",
    "divisor_from_tree",
    "equivalent",
    "is_reduced",
    "jacobian",
    "rank_at_least",
    "reduce",
    "sample_trees",
    "spanning_trees",
    "tree_from_divisor",
    "verify_bijection",
    "winnable",
    "winning_strategy",
]
