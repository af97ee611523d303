"""Parity-aware graph structure toolkit.

Builds and checks tree-decompositions whose oversized bags are excused by an
annotated class (globally bipartite sets, planar torsos), constructs wall and
odd-expansion certificates, and solves maximum weight independent set and
maximum weight cut exactly over block trees.
"""

from .graphs import (Graph, build_graph, subgraph, connected_components,
                     is_connected, bipartition_or_odd_cycle, is_bipartite,
                     torso, is_planar, two_disjoint_paths, TwoColouring,
                     OddCycle, SeparatingVertex, parse_edge_list,
                     format_edge_list)
from . import generators

__all__ = [
    "Graph", "build_graph", "subgraph", "connected_components",
    "is_connected", "bipartition_or_odd_cycle", "is_bipartite", "torso",
    "is_planar", "two_disjoint_paths", "TwoColouring", "OddCycle",
    "SeparatingVertex", "parse_edge_list", "format_edge_list", "generators",
]
