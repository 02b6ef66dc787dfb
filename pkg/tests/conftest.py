"""Shared fixtures: small-graph corpora and deterministic generators."""

import itertools

import numpy as np
import pytest

from submatch.graphs import Graph

# Number of connected graphs on n nodes up to isomorphism, n = 1..6.
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}


def _canonical_connected_masks(n):
    """Edge-set bitmasks of connected graphs on n nodes, one per iso class.

    A mask is kept iff it is the minimum over all vertex relabelings.
    """
    pairs = list(itertools.combinations(range(n), 2))
    m = len(pairs)
    pos = {pair: k for k, pair in enumerate(pairs)}
    masks = np.arange(1 << m, dtype=np.int64)
    bits = [(masks >> k) & np.int64(1) for k in range(m)]
    best = masks.copy()
    for perm in itertools.permutations(range(n)):
        if perm == tuple(range(n)):
            continue
        relabeled = np.zeros_like(masks)
        for k, (i, j) in enumerate(pairs):
            a, b = perm[i], perm[j]
            if a > b:
                a, b = b, a
            relabeled |= bits[k] << np.int64(pos[(a, b)])
        np.minimum(best, relabeled, out=best)
    canonical = masks[best == masks]

    kept = []
    for mask in canonical.tolist():
        edges = [pairs[k] for k in range(m) if mask >> k & 1]
        if _connected(n, edges):
            kept.append(edges)
    return kept


def _connected(n, edges):
    if n == 1:
        return True
    nbrs = {v: [] for v in range(n)}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for w in nbrs[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


@pytest.fixture(scope="session")
def small_connected_corpus():
    """All connected graphs with 1..6 nodes, one representative per iso class."""
    corpus = []
    for n in range(1, 7):
        graphs = [Graph.from_edges(n, edges) for edges in _canonical_connected_masks(n)]
        assert len(graphs) == CONNECTED_COUNTS[n]
        corpus.extend(graphs)
    return corpus


def random_graph(n, p, rng):
    """ER draw as a Graph; independent of the datagen module on purpose."""
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_attr_graph(n, p, rng, dim=3, palette=2):
    """ER draw with one-hot attributes from a small palette."""
    g = random_graph(n, p, rng)
    labels = rng.integers(0, palette, size=n)
    attrs = np.zeros((n, dim))
    attrs[np.arange(n), labels] = 1.0
    return Graph(n, g.adjacency, attributes=attrs)


def exhaustive_matching_size(n_left, n_right, edges):
    """Maximum bipartite matching by exhaustive search; reference only."""
    adj = {i: [j for x, j in edges if x == i] for i in range(n_left)}
    best = 0

    def extend(i, used, count):
        nonlocal best
        best = max(best, count)
        if i == n_left:
            return
        extend(i + 1, used, count)
        for j in adj[i]:
            if j not in used:
                extend(i + 1, used | {j}, count + 1)

    extend(0, frozenset(), 0)
    return best


TRIANGLE = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
PATH3 = Graph.from_edges(3, [(0, 1), (1, 2)])
K4 = Graph.from_edges(4, list(itertools.combinations(range(4), 2)))
C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
C5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
