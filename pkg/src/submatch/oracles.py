"""Ground-truth machinery for verification and labeling.

Everything here trades speed for being obviously correct: exhaustive
permutation search, a plain backtracking subgraph-isomorphism search,
Hopcroft-Karp maximum matching, explicit tree unrolling for subtree
containment, and brute-force cycle enumeration. The filtering pipeline
never depends on this module at runtime; tests and the data generator do.
"""

from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass

import numpy as np

from .cycles import canonical_cycle
from .graphs import Graph, compatibility_matrix

__all__ = [
    "FOUND",
    "NOT_FOUND",
    "TIMEOUT",
    "SearchResult",
    "brute_cycles",
    "hopcroft_karp",
    "permutation_oracle",
    "vf2_search",
    "wl_tree_contains",
]

FOUND = "found"
NOT_FOUND = "not_found"
TIMEOUT = "timeout"

MONOMORPHISM = "monomorphism"
INDUCED = "induced"
_SEMANTICS = (MONOMORPHISM, INDUCED)

# how many search-tree expansions happen between wall-clock checks
_BUDGET_GRANULARITY = 1024


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a subgraph search.

    ``embedding[q]`` is the target node assigned to query node q when
    status == FOUND; None otherwise. not_found is an exhaustive proof of
    absence, timeout says the budget ran out first.
    """

    status: str
    embedding: tuple[int, ...] | None = None

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _Deadline(Exception):
    pass


def _check_semantics(semantics: str) -> None:
    if semantics not in _SEMANTICS:
        raise ValueError(f"semantics must be one of {_SEMANTICS}, got {semantics!r}")


def _query_order(query: Graph) -> list[int]:
    """Connectivity-aware order: each next node has the most placed neighbors,
    ties broken by higher degree then lower id."""
    degree = [len(nbrs) for nbrs in query.adjacency]
    placed: list[int] = []
    placed_set: set[int] = set()
    anchored = [0] * query.n
    while len(placed) < query.n:
        best = -1
        for v in range(query.n):
            if v in placed_set:
                continue
            if best < 0 or (anchored[v], degree[v], -v) > (
                anchored[best],
                degree[best],
                -best,
            ):
                best = v
        placed.append(best)
        placed_set.add(best)
        for w in query.adjacency[best]:
            anchored[w] += 1
    return placed


def vf2_search(
    target: Graph,
    query: Graph,
    semantics: str = MONOMORPHISM,
    attr_epsilon: float = 1e-9,
    time_budget: float = 10.0,
) -> SearchResult:
    """Backtracking subgraph-isomorphism search with a wall-clock budget.

    Candidate targets are tried in ascending (degree, id) order, so runs
    are reproducible; the budget is checked once per _BUDGET_GRANULARITY
    expansions, making timeout the only machine-dependent outcome.
    """
    _check_semantics(semantics)
    if time_budget <= 0:
        raise ValueError(f"time_budget must be positive, got {time_budget}")
    if query.n == 0:
        return SearchResult(FOUND, ())
    if query.n > target.n:
        return SearchResult(NOT_FOUND)
    compat = compatibility_matrix(target, query, attr_epsilon)
    induced = semantics == INDUCED
    t_nbrs = target.neighbor_sets()
    q_nbrs = query.neighbor_sets()
    t_deg = [len(s) for s in t_nbrs]
    q_deg = [len(s) for s in q_nbrs]
    order = _query_order(query)
    by_degree = sorted(range(target.n), key=lambda t: (t_deg[t], t))
    deadline = time.perf_counter() + time_budget
    expansions = 0
    mapping = [-1] * query.n
    used = [False] * target.n

    def candidates(q: int) -> list[int]:
        anchors = [mapping[w] for w in query.adjacency[q] if mapping[w] >= 0]
        if not anchors:
            return by_degree
        pool = min((t_nbrs[a] for a in anchors), key=len)
        out = [t for t in pool if all(t in t_nbrs[a] for a in anchors)]
        out.sort(key=lambda t: (t_deg[t], t))
        return out

    def feasible(q: int, t: int) -> bool:
        if used[t] or not compat[t, q] or t_deg[t] < q_deg[q]:
            return False
        if induced:
            for w in range(query.n):
                tw = mapping[w]
                if tw >= 0 and w not in q_nbrs[q] and tw in t_nbrs[t]:
                    return False
        return True

    def search(depth: int) -> bool:
        nonlocal expansions
        if depth == query.n:
            return True
        expansions += 1
        if expansions % _BUDGET_GRANULARITY == 0 and time.perf_counter() > deadline:
            raise _Deadline
        q = order[depth]
        for t in candidates(q):
            if feasible(q, t):
                mapping[q] = t
                used[t] = True
                if search(depth + 1):
                    return True
                mapping[q] = -1
                used[t] = False
        return False

    try:
        if search(0):
            return SearchResult(FOUND, tuple(mapping))
        return SearchResult(NOT_FOUND)
    except _Deadline:
        return SearchResult(TIMEOUT)


def permutation_oracle(
    target: Graph,
    query: Graph,
    semantics: str = MONOMORPHISM,
    attr_epsilon: float = 1e-9,
) -> bool:
    """Existence of an embedding by trying every injection explicitly."""
    _check_semantics(semantics)
    if query.n > 7:
        raise ValueError(f"permutation_oracle is capped at 7 query nodes, got {query.n}")
    if query.n > target.n:
        return False
    compat = compatibility_matrix(target, query, attr_epsilon)
    induced = semantics == INDUCED
    t_nbrs = target.neighbor_sets()
    q_nbrs = query.neighbor_sets()
    for image in itertools.permutations(range(target.n), query.n):
        if not all(compat[image[q], q] for q in range(query.n)):
            continue
        ok = True
        for u, v in query.edges:
            if image[v] not in t_nbrs[image[u]]:
                ok = False
                break
        if ok and induced:
            for u in range(query.n):
                for v in range(u + 1, query.n):
                    if v not in q_nbrs[u] and image[v] in t_nbrs[image[u]]:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            return True
    return False


def hopcroft_karp(
    left_size: int,
    right_size: int,
    edges,
) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Maximum bipartite matching via Hopcroft-Karp.

    Returns (size, matching) with the matching as sorted (left, right)
    pairs; the matching saturates the left side iff size == left_size.
    """
    adj: list[list[int]] = [[] for _ in range(left_size)]
    for u, v in edges:
        if not (0 <= u < left_size and 0 <= v < right_size):
            raise ValueError(f"edge ({u}, {v}) out of range")
        adj[u].append(v)
    INF = float("inf")
    match_l = [-1] * left_size
    match_r = [-1] * right_size
    dist = [INF] * left_size

    def bfs() -> bool:
        queue = deque()
        for u in range(left_size):
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        reachable_free = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w < 0:
                    reachable_free = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return reachable_free

    def dfs(u: int) -> bool:
        for v in adj[u]:
            w = match_r[v]
            if w < 0 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_l[u] = v
                match_r[v] = u
                return True
        dist[u] = INF
        return False

    size = 0
    while bfs():
        for u in range(left_size):
            if match_l[u] < 0 and dfs(u):
                size += 1
    matching = tuple(sorted((u, match_l[u]) for u in range(left_size) if match_l[u] >= 0))
    return size, matching


def _unroll(g: Graph, root: int, depth: int):
    """Explicit unordered tree: node = (graph node, tuple of child trees)."""
    if depth == 0:
        return (root, ())
    return (root, tuple(_unroll(g, w, depth - 1) for w in g.adjacency[root]))


def wl_tree_contains(
    target: Graph,
    t: int,
    query: Graph,
    q: int,
    depth: int,
    attr_epsilon: float = 1e-9,
) -> bool:
    """Containment of the depth-`depth` unrolled tree at q in the one at t.

    Roots must be compatible and there must be an injective assignment of
    q's child subtrees to t's child subtrees with every matched pair in
    containment, decided by exhaustive backtracking. Subtrees rooted at
    the same graph node with equal remaining depth are identical, so
    results are memoized on (query node, target node, depth).
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    compat = compatibility_matrix(target, query, attr_epsilon)
    tree_t = _unroll(target, t, depth)
    tree_q = _unroll(query, q, depth)
    memo: dict[tuple[int, int, int], bool] = {}

    def contains(node_q, node_t, d: int) -> bool:
        key = (node_q[0], node_t[0], d)
        cached = memo.get(key)
        if cached is not None:
            return cached
        ok = bool(compat[node_t[0], node_q[0]])
        if ok and d > 0:
            q_children, t_children = node_q[1], node_t[1]
            if len(q_children) > len(t_children):
                ok = False
            else:
                taken = [False] * len(t_children)

                def assign(i: int) -> bool:
                    if i == len(q_children):
                        return True
                    for j, child_t in enumerate(t_children):
                        if not taken[j] and contains(q_children[i], child_t, d - 1):
                            taken[j] = True
                            if assign(i + 1):
                                taken[j] = False
                                return True
                            taken[j] = False
                    return False

                ok = assign(0)
        memo[key] = ok
        return ok

    return contains(tree_q, tree_t, depth)


def brute_cycles(g: Graph, max_len: int) -> frozenset[tuple[int, ...]]:
    """All chordless cycles up to max_len by enumerating every simple cycle.

    No pruning beyond anchor ordering: every simple cycle of length <=
    max_len is generated, then filtered for chords. Oracle counterpart of
    cycles.enumerate_chordless_cycles; only sensible for small graphs.
    """
    if max_len < 3:
        raise ValueError(f"max_len must be >= 3, got {max_len}")
    nbr = g.neighbor_sets()
    cycles: set[tuple[int, ...]] = set()

    def extend(path: list[int], on_path: set[int]) -> None:
        anchor, last = path[0], path[-1]
        for y in g.adjacency[last]:
            if y == anchor and len(path) >= 3:
                cycles.add(canonical_cycle(path))
            elif y > anchor and y not in on_path and len(path) < max_len:
                path.append(y)
                on_path.add(y)
                extend(path, on_path)
                path.pop()
                on_path.remove(y)

    for anchor in range(g.n):
        extend([anchor], {anchor})

    def chordless(cycle: tuple[int, ...]) -> bool:
        k = len(cycle)
        for i in range(k):
            for j in range(i + 1, k):
                consecutive = j - i == 1 or (i == 0 and j == k - 1)
                if not consecutive and cycle[j] in nbr[cycle[i]]:
                    return False
        return True

    return frozenset(c for c in cycles if chordless(c))
