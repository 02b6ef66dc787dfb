"""Graph representation, validation, and the edge-list text format.

Every other module builds on the types here. Graphs are simple and
undirected: no self-loops, no duplicate edges, symmetric adjacency.
Node ids are dense 0-based integers so that matrices can be indexed
by node id everywhere.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "REGULAR",
    "Graph",
    "adjacency_to_csr",
    "compatibility_matrix",
    "parse_edge_list",
    "to_edge_list_text",
    "validate",
]

# node_kind tag for ordinary nodes; supernodes carry their cycle length (>= 3)
REGULAR = 0

Adjacency = tuple[tuple[int, ...], ...]


class Graph:
    """Simple undirected graph with optional node attributes and node kinds.

    ``adjacency`` is one sorted neighbor tuple per node. ``attributes``,
    when present, is a read-only float64 matrix with one row per node.
    ``kinds[v]`` is ``REGULAR`` for ordinary nodes or the cycle length for
    supernodes introduced by cycle augmentation; a supernode's member list
    is exactly its neighbor list.

    Graphs are immutable after construction and safe to share across
    threads. Use :func:`validate` to obtain invariant violations as data.
    """

    __slots__ = ("n", "adjacency", "attributes", "kinds", "_csr", "_edges")

    def __init__(
        self,
        n: int,
        adjacency: Sequence[Iterable[int]],
        attributes: np.ndarray | Sequence[Sequence[float]] | None = None,
        kinds: Sequence[int] | None = None,
    ) -> None:
        self.n = int(n)
        self.adjacency: Adjacency = tuple(
            tuple(sorted(int(w) for w in nbrs)) for nbrs in adjacency
        )
        if attributes is None:
            self.attributes = None
        else:
            attrs = np.array(attributes, dtype=np.float64, ndmin=2)
            attrs.setflags(write=False)
            self.attributes = attrs
        self.kinds: tuple[int, ...] = (
            (REGULAR,) * self.n if kinds is None else tuple(int(k) for k in kinds)
        )
        self._csr: tuple[np.ndarray, np.ndarray] | None = None
        self._edges: tuple[tuple[int, int], ...] | None = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        attributes=None,
        kinds: Sequence[int] | None = None,
    ) -> "Graph":
        """Build a validated graph from an undirected edge list.

        Duplicate edges collapse; (u, v) and (v, u) are the same edge.
        Raises ValueError on self-loops or out-of-range endpoints.
        """
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} nodes")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, nbrs, attributes, kinds)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as (u, v) with u < v, ascending."""
        if self._edges is None:
            self._edges = tuple(
                (u, v) for u in range(self.n) for v in self.adjacency[u] if u < v
            )
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form: (indptr int64 of length n+1, indices int32)."""
        if self._csr is None:
            self._csr = adjacency_to_csr(self.adjacency)
        return self._csr

    def degrees(self) -> np.ndarray:
        indptr, _ = self.csr()
        return np.diff(indptr)

    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(nbrs) for nbrs in self.adjacency)

    def components(self) -> list[list[int]]:
        """Connected components as sorted node lists, ordered by smallest node."""
        seen = [False] * self.n
        out: list[list[int]] = []
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append(sorted(comp))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        if (self.n, self.adjacency, self.kinds) != (other.n, other.adjacency, other.kinds):
            return False
        if (self.attributes is None) != (other.attributes is None):
            return False
        if self.attributes is not None:
            return bool(np.array_equal(self.attributes, other.attributes))
        return True

    __hash__ = None  # mutable-feeling payload (ndarray); not intended as a dict key

    def __repr__(self) -> str:
        extra = "" if self.attributes is None else f", D={self.attributes.shape[1]}"
        supers = sum(1 for k in self.kinds if k != REGULAR)
        if supers:
            extra += f", supernodes={supers}"
        return f"Graph(n={self.n}, edges={self.edge_count}{extra})"


def adjacency_to_csr(adjacency: Sequence[Iterable[int]]) -> tuple[np.ndarray, np.ndarray]:
    """Flatten neighbor lists into (indptr, indices) CSR arrays."""
    degrees = np.fromiter((len(nbrs) for nbrs in adjacency), dtype=np.int64, count=len(adjacency))
    indptr = np.zeros(len(adjacency) + 1, dtype=np.int64)
    np.cumsum(degrees, out=indptr[1:])
    if indptr[-1]:
        indices = np.fromiter(
            (w for nbrs in adjacency for w in nbrs), dtype=np.int32, count=int(indptr[-1])
        )
    else:
        indices = np.zeros(0, dtype=np.int32)
    return indptr, indices


def validate(g: Graph) -> list[str]:
    """Return all invariant violations of ``g``; an empty list means valid.

    Violations are data, not failures: callers that construct graphs by
    hand can inspect what is wrong without exception handling.
    """
    out: list[str] = []
    if g.n < 0:
        out.append(f"negative node count {g.n}")
    if len(g.adjacency) != g.n:
        out.append(f"adjacency has {len(g.adjacency)} rows for {g.n} nodes")
        return out  # everything below indexes by node id
    nbr_sets = []
    for u, nbrs in enumerate(g.adjacency):
        s = set(nbrs)
        nbr_sets.append(s)
        if u in s:
            out.append(f"self-loop at node {u}")
        if len(s) != len(nbrs):
            out.append(f"duplicate neighbors at node {u}")
        for w in nbrs:
            if not 0 <= w < g.n:
                out.append(f"neighbor {w} of node {u} out of range")
    for u in range(g.n):
        for w in nbr_sets[u]:
            if 0 <= w < g.n and u not in nbr_sets[w]:
                out.append(f"asymmetric edge {u}->{w}")
    if g.attributes is not None:
        if g.attributes.ndim != 2 or g.attributes.shape[1] < 1:
            out.append(f"attribute shape {g.attributes.shape} is not n x D with D >= 1")
        elif g.attributes.shape[0] != g.n:
            out.append(
                f"attribute shape {g.attributes.shape} does not match {g.n} nodes"
            )
    if len(g.kinds) != g.n:
        out.append(f"kinds has {len(g.kinds)} entries for {g.n} nodes")
        return out
    for v, kind in enumerate(g.kinds):
        if kind == REGULAR:
            continue
        if kind < 3:
            out.append(f"supernode {v} has cycle_length {kind} < 3")
            continue
        members = [w for w in g.adjacency[v] if 0 <= w < g.n]
        if len(members) != kind:
            out.append(f"supernode {v} has {len(members)} members, cycle_length {kind}")
            continue
        if any(g.kinds[w] != REGULAR for w in members):
            out.append(f"supernode {v} adjacent to another supernode")
            continue
        if not _is_cycle_set(g, members):
            out.append(f"supernode {v} members do not form one chordless cycle")
    return out


def _is_cycle_set(g: Graph, members: list[int]) -> bool:
    """True iff the induced subgraph of g on regular nodes `members` is one cycle."""
    member_set = set(members)
    inner = {u: [w for w in g.adjacency[u] if w in member_set] for u in members}
    if any(len(ws) != 2 for ws in inner.values()):
        return False
    # degree-2 everywhere: one cycle iff connected
    seen = {members[0]}
    queue = deque([members[0]])
    while queue:
        u = queue.popleft()
        for w in inner[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(members)


def parse_edge_list(text: str) -> Graph:
    """Parse the line-oriented edge-list format into a validated Graph.

    Format: optional header line ``n <count>``, then one ``u v`` pair per
    line. ``#`` starts a comment; blank lines are ignored. Without a
    header the node count is max id + 1. All nodes are regular.
    """
    declared: int | None = None
    edges: list[tuple[int, int]] = []
    max_id = -1
    saw_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if not saw_content and tokens[0] == "n" and len(tokens) == 2:
            try:
                declared = int(tokens[1])
            except ValueError:
                raise ValueError(f"line {lineno}: bad node count {tokens[1]!r}") from None
            if declared < 0:
                raise ValueError(f"line {lineno}: negative node count")
            saw_content = True
            continue
        saw_content = True
        if len(tokens) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer node id in {line!r}") from None
        if u < 0 or v < 0:
            raise ValueError(f"line {lineno}: negative node id")
        if u == v:
            raise ValueError(f"line {lineno}: self-loop {u} {v}")
        if declared is not None and (u >= declared or v >= declared):
            raise ValueError(
                f"line {lineno}: node id {max(u, v)} >= declared count {declared}"
            )
        edges.append((u, v))
        max_id = max(max_id, u, v)
    n = declared if declared is not None else max_id + 1
    return Graph.from_edges(n, edges)


def to_edge_list_text(g: Graph) -> str:
    """Serialize a graph back to the edge-list format (structure only)."""
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def compatibility_matrix(
    target: Graph,
    query: Graph,
    attr_epsilon: float = 1e-9,
    strict_supernode_length: bool = False,
) -> np.ndarray:
    """Root compatibility of every (target node, query node) pair, uint8.

    No attributes on either graph: all pairs compatible. With attributes
    on both: compatible iff cosine similarity >= 1 - attr_epsilon, where
    zero vectors compare by exact equality (zero matches only zero).
    Supernodes only match supernodes; with ``strict_supernode_length``
    their cycle lengths must agree as well.
    """
    if (target.attributes is None) != (query.attributes is None):
        raise ValueError("attributes must be present on both graphs or neither")
    out = np.ones((target.n, query.n), dtype=np.uint8)
    if target.attributes is not None:
        xt, xq = target.attributes, query.attributes
        if xt.shape[1] != xq.shape[1]:
            raise ValueError(
                f"attribute dimension mismatch: {xt.shape[1]} vs {xq.shape[1]}"
            )
        nt = np.linalg.norm(xt, axis=1)
        nq = np.linalg.norm(xq, axis=1)
        dots = xt @ xq.T
        denom = np.outer(nt, nq)
        with np.errstate(divide="ignore", invalid="ignore"):
            cos = np.where(denom > 0.0, dots / np.where(denom > 0.0, denom, 1.0), 0.0)
        ok = cos >= 1.0 - attr_epsilon
        # zero vectors: exact equality, so zero pairs only with zero
        zt = nt == 0.0
        zq = nq == 0.0
        ok[zt[:, None] & zq[None, :]] = True
        ok[zt[:, None] ^ zq[None, :]] = False
        out &= ok.astype(np.uint8)
    t_kinds = np.asarray(target.kinds, dtype=np.int64)
    q_kinds = np.asarray(query.kinds, dtype=np.int64)
    t_super = t_kinds != REGULAR
    q_super = q_kinds != REGULAR
    out[t_super[:, None] ^ q_super[None, :]] = 0
    if strict_supernode_length:
        both = t_super[:, None] & q_super[None, :]
        out[both & (t_kinds[:, None] != q_kinds[None, :])] = 0
    return out
