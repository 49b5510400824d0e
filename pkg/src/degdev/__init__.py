"""Exact tools for the degree deviation irregularity measure of graphs."""

from degdev.graph import (
    DegreePartition,
    Graph,
    GraphError,
    cut_edges,
    degree_partition,
    deviation,
    is_connected,
    make_graph,
    scaled_deviation,
)

__all__ = [
    "DegreePartition",
    "Graph",
    "GraphError",
    "cut_edges",
    "degree_partition",
    "deviation",
    "is_connected",
    "make_graph",
    "scaled_deviation",
]
