"""Spanning trees with few leaves and branch vertices in K_1,4-free graphs."""

from .engine import (GoodTree, HypothesisViolation, Move, Potential, apply_move, build_certificate,
                     derive_move, first_violation, improve, initial_tree, potential)
from .generators import random_connected_k14_free, sharpness_graph
from .graph import (Graph, independence_number, induced, is_connected, is_k1r_free,
                    parse_edge_list, parse_graph6, sigma_p)
from .oracle import (count_spanning_trees, enumerate_spanning_trees, matrix_tree_count,
                     min_leaf_branch, sweep_exhaustive, sweep_random, theorem_check)
from .tree import SpanningTree

__version__ = "0.1.0"
