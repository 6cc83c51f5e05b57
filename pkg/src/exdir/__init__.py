"""Exact analysis of the Explorer-Director distance game on small graphs."""

from .closed import PeelResult, is_closed, min_closed_containing, min_closed_size, peel
from .formulas import BoundPair, f_star_cycle, lattice_bounds, lattice_closed_witness, tree_value
from .graph import DistanceMatrix, Graph, GraphError, apsp, generate, load_graph, parse_graph
from .nonadaptive import (InvalidSequence, centered_tree_sequence, even_path_sequence, forced_run,
                          odd_path_sequence, score, search_perfect_sequence)
from .solver import (AUTO, CapExceeded, GameState, IllegalMove, Policy, brute_oracle,
                     optimal_trace, play_step, solve)

__all__ = [
    "AUTO", "BoundPair", "CapExceeded", "DistanceMatrix", "GameState", "Graph", "GraphError",
    "IllegalMove", "InvalidSequence", "PeelResult", "Policy", "apsp", "brute_oracle",
    "centered_tree_sequence", "even_path_sequence", "f_star_cycle", "forced_run", "generate",
    "is_closed", "lattice_bounds", "lattice_closed_witness", "load_graph", "min_closed_containing",
    "min_closed_size", "odd_path_sequence", "optimal_trace", "parse_graph", "peel", "play_step",
    "score", "search_perfect_sequence", "solve", "tree_value",
]
