"""Deterministic subgraph-matching filter with exact oracles.

The filter maintains a boolean (target node, query node) indicator
matrix and iterates Hall-condition / bipartite-matching tests over node
neighborhoods; a query that embeds in the target always survives, so
"no" answers are definitive. Companions: exact search oracles, synthetic
dataset generation, and an evaluation harness, all exposed through the
``submatch`` CLI.
"""

from .filtering import FilterConfig, MatchReport, run_filter
from .graphs import Graph, parse_edge_list, to_edge_list_text, validate
from .io import DatasetRecord, read_dataset, write_dataset

__all__ = [
    "DatasetRecord",
    "FilterConfig",
    "Graph",
    "MatchReport",
    "parse_edge_list",
    "read_dataset",
    "run_filter",
    "to_edge_list_text",
    "validate",
    "write_dataset",
]

__version__ = "0.1.0"
