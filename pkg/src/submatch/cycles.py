"""Chordless-cycle enumeration and supernode augmentation.

A chordless cycle is a simple cycle with no edge between non-consecutive
cycle nodes. Augmentation adds one supernode per chordless cycle of
length in [3, max_len], adjacent to exactly the cycle's members; these
supernodes only ever match other supernodes, which lets the filter
compare cycle structure between query and target.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .graphs import REGULAR, Graph

__all__ = [
    "augment",
    "canonical_cycle",
    "enumerate_chordless_cycles",
    "regular_core",
]

DEFAULT_MAX_LEN = 6


def canonical_cycle(nodes: Sequence[int]) -> tuple[int, ...]:
    """Rotate/reflect a cyclic node sequence into its canonical tuple.

    The smallest id comes first, followed by the smaller of its two cycle
    neighbors, which fixes one representative per set-level cycle.
    """
    nodes = [int(v) for v in nodes]
    k = len(nodes)
    if k < 3:
        raise ValueError(f"cycle needs >= 3 nodes, got {k}")
    if len(set(nodes)) != k:
        raise ValueError("cycle nodes must be distinct")
    i = nodes.index(min(nodes))
    forward = [nodes[(i + d) % k] for d in range(k)]
    backward = [nodes[(i - d) % k] for d in range(k)]
    return tuple(forward if forward[1] < backward[1] else backward)


def _require_regular(g: Graph, op: str) -> None:
    if any(kind != REGULAR for kind in g.kinds):
        raise ValueError(f"{op} expects a graph with regular nodes only")


def enumerate_chordless_cycles(
    g: Graph, max_len: int = DEFAULT_MAX_LEN
) -> frozenset[tuple[int, ...]]:
    """All chordless cycles of length in [3, max_len], canonicalized.

    Bounded DFS from each anchor node with on-the-fly chord rejection:
    paths grow only through nodes larger than the anchor, a new node may
    touch nothing on the path except its predecessor, and a node adjacent
    to the anchor closes the cycle rather than extending the path (any
    longer cycle through it would carry that edge as a chord).
    """
    _require_regular(g, "enumerate_chordless_cycles")
    if max_len < 3:
        raise ValueError(f"max_len must be >= 3, got {max_len}")
    nbr = g.neighbor_sets()
    found: set[tuple[int, ...]] = set()

    def extend(path: list[int], on_path: set[int]) -> None:
        anchor, last = path[0], path[-1]
        for y in g.adjacency[last]:
            if y <= anchor or y in on_path:
                continue
            chord = False
            for mid in path[1:-1]:
                if y in nbr[mid]:
                    chord = True
                    break
            if chord:
                continue
            if y in nbr[anchor]:
                # reflection dedup: enumerate each direction once
                if path[1] < y:
                    found.add(canonical_cycle(path + [y]))
            elif len(path) + 1 <= max_len - 1:
                path.append(y)
                on_path.add(y)
                extend(path, on_path)
                path.pop()
                on_path.remove(y)

    for anchor in range(g.n):
        for first in g.adjacency[anchor]:
            if first > anchor:
                extend([anchor, first], {anchor, first})
    return frozenset(found)


def augment(g: Graph, max_len: int = DEFAULT_MAX_LEN) -> Graph:
    """Append one supernode per chordless cycle, wired to the cycle's members.

    Original nodes, edges, and attributes are unchanged; supernode ids
    follow the original ids in canonical cycle order. Supernode attribute
    rows (when the graph has attributes) are zero vectors, which compare
    equal only to each other under the exact-equality rule for zeros.
    """
    _require_regular(g, "augment")
    cycles = sorted(enumerate_chordless_cycles(g, max_len))
    adjacency = [list(nbrs) for nbrs in g.adjacency] + [[] for _ in cycles]
    kinds = list(g.kinds)
    for offset, cycle in enumerate(cycles):
        v = g.n + offset
        kinds.append(len(cycle))
        for member in cycle:
            adjacency[member].append(v)
            adjacency[v].append(member)
    attributes = None
    if g.attributes is not None:
        attributes = np.vstack(
            [g.attributes, np.zeros((len(cycles), g.attributes.shape[1]))]
        )
    return Graph(g.n + len(cycles), adjacency, attributes, kinds)


def regular_core(g: Graph) -> Graph:
    """Induced subgraph on the regular nodes, relabeled in original order."""
    keep = [v for v in range(g.n) if g.kinds[v] == REGULAR]
    relabel = {v: i for i, v in enumerate(keep)}
    adjacency = [
        [relabel[w] for w in g.adjacency[v] if w in relabel] for v in keep
    ]
    attributes = g.attributes[keep] if g.attributes is not None else None
    return Graph(len(keep), adjacency, attributes)
