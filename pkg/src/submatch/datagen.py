"""Synthetic dataset generation with oracle-verified labels.

Targets are Erdos-Renyi or Watts-Strogatz graphs. Positive queries are
induced BFS samples of their target (true under both matching
semantics); negatives either resample a fresh graph with the positive's
exact size and edge count, or perturb the positive by edge drops and
insertions. Every emitted label is confirmed by the exact search oracle;
pairs whose verification times out are discarded and regenerated, never
mislabeled. All randomness derives from per-record seed sequences, so a
config maps to one byte-identical dataset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graphs import Graph
from .io import DatasetRecord, write_dataset
from .oracles import FOUND, NOT_FOUND, MONOMORPHISM, INDUCED, vf2_search

__all__ = [
    "GenConfig",
    "bfs_sample",
    "build_dataset",
    "gen_er",
    "gen_negative_hard",
    "gen_negative_random",
    "gen_ws",
]

ER = "er"
WS = "ws"
RANDOM = "random"
HARD = "hard"

_MAX_ATTEMPTS = 100


@dataclass(frozen=True)
class GenConfig:
    """Parameters of one synthetic dataset.

    ``er_p`` defaults to 0.31, which reproduces a mean degree near 12 on
    40-node targets; ``hard_drop_count``/``hard_insert_count`` of None
    resolve to ceil(0.1 * |E_Q|) of the paired positive query, keeping
    edge counts of positives and hard negatives equal.
    """

    generator: str = ER
    target_n: int = 40
    er_p: float = 0.31
    ws_k: int = 8
    ws_beta: float = 0.1
    query_size: int = 15
    pair_count: int = 10
    negative_kind: str = RANDOM
    hard_drop_count: int | None = None
    hard_insert_count: int | None = None
    seed: int = 0
    semantics: str = MONOMORPHISM
    verify_budget: float = 10.0

    def __post_init__(self) -> None:
        if self.generator not in (ER, WS):
            raise ValueError(f"generator must be {ER!r} or {WS!r}, got {self.generator!r}")
        if self.target_n < 1:
            raise ValueError(f"target_n must be >= 1, got {self.target_n}")
        if not 0.0 <= self.er_p <= 1.0:
            raise ValueError(f"er_p must be in [0, 1], got {self.er_p}")
        if not 0.0 <= self.ws_beta <= 1.0:
            raise ValueError(f"ws_beta must be in [0, 1], got {self.ws_beta}")
        if not 1 <= self.query_size <= self.target_n:
            raise ValueError(
                f"query_size must be in [1, target_n={self.target_n}], got {self.query_size}"
            )
        if self.pair_count < 2 or self.pair_count % 2:
            raise ValueError(f"pair_count must be a positive even number, got {self.pair_count}")
        if self.negative_kind not in (RANDOM, HARD):
            raise ValueError(
                f"negative_kind must be {RANDOM!r} or {HARD!r}, got {self.negative_kind!r}"
            )
        for name in ("hard_drop_count", "hard_insert_count"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")
        if self.semantics not in (MONOMORPHISM, INDUCED):
            raise ValueError(f"bad semantics {self.semantics!r}")
        if self.verify_budget <= 0:
            raise ValueError(f"verify_budget must be positive, got {self.verify_budget}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit non-negative integer, got {self.seed}")

    def to_dict(self) -> dict:
        return {
            "generator": self.generator,
            "target_n": self.target_n,
            "er_p": self.er_p,
            "ws_k": self.ws_k,
            "ws_beta": self.ws_beta,
            "query_size": self.query_size,
            "pair_count": self.pair_count,
            "negative_kind": self.negative_kind,
            "hard_drop_count": self.hard_drop_count,
            "hard_insert_count": self.hard_insert_count,
            "seed": self.seed,
            "semantics": self.semantics,
            "verify_budget": self.verify_budget,
        }


def _pair_index_to_edge(flat: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Invert the row-major flattening of pairs (i < j) without building
    the full pair list (targets can be large)."""
    counts = np.arange(n - 1, 0, -1, dtype=np.int64)
    starts = np.zeros(n, dtype=np.int64)
    np.cumsum(counts, out=starts[1:])
    i = np.searchsorted(starts, flat, side="right") - 1
    j = flat - starts[i] + i + 1
    return i, j


def gen_er(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi G(n, p): every unordered pair is an edge with prob. p."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    total = n * (n - 1) // 2
    if total == 0 or p == 0.0:
        flat = np.zeros(0, dtype=np.int64)
    else:
        flat = np.flatnonzero(rng.random(total) < p).astype(np.int64)
    us, vs = _pair_index_to_edge(flat, n)
    return Graph.from_edges(n, zip(us.tolist(), vs.tolist()))


def gen_ws(n: int, k: int, beta: float, rng: np.random.Generator) -> Graph:
    """Watts-Strogatz ring lattice with rewiring.

    Each node starts adjacent to its k/2 nearest neighbors per side; every
    lattice edge is then rewired with probability beta to a uniformly
    chosen non-neighbor, scanning distances then nodes in fixed order.
    """
    if k < 0 or k % 2:
        raise ValueError(f"k must be even and >= 0, got {k}")
    if k >= n:
        raise ValueError(f"k must be < n, got k={k}, n={n}")
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be in [0, 1], got {beta}")
    nbrs: list[set[int]] = [set() for _ in range(n)]

    def add(u: int, v: int) -> None:
        nbrs[u].add(v)
        nbrs[v].add(u)

    def drop(u: int, v: int) -> None:
        nbrs[u].remove(v)
        nbrs[v].remove(u)

    for d in range(1, k // 2 + 1):
        for u in range(n):
            add(u, (u + d) % n)
    for d in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + d) % n
            if v not in nbrs[u] or rng.random() >= beta:
                continue
            if len(nbrs[u]) >= n - 1:
                continue  # nothing left to rewire to
            w = int(rng.integers(n))
            while w == u or w in nbrs[u]:
                w = int(rng.integers(n))
            drop(u, v)
            add(u, w)
    return Graph(n, nbrs)


def bfs_sample(target: Graph, size: int, rng: np.random.Generator) -> Graph:
    """Induced query: first `size` nodes of a randomized BFS, relabeled by
    visit order. The start is uniform over nodes of components with >= size
    nodes; neighbor enqueue order is shuffled per node."""
    if not 1 <= size <= target.n:
        raise ValueError(f"size must be in [1, {target.n}], got {size}")
    eligible = [v for comp in target.components() if len(comp) >= size for v in comp]
    if not eligible:
        raise ValueError(f"no connected component with >= {size} nodes")
    start = eligible[int(rng.integers(len(eligible)))]
    visited = {start}
    order = [start]
    queue = [start]
    head = 0
    while head < len(queue) and len(order) < size:
        u = queue[head]
        head += 1
        nbrs = list(target.adjacency[u])
        rng.shuffle(nbrs)
        for w in nbrs:
            if w not in visited:
                visited.add(w)
                order.append(w)
                queue.append(w)
                if len(order) == size:
                    break
    chosen = order[:size]
    relabel = {v: i for i, v in enumerate(chosen)}
    edges = [
        (relabel[u], relabel[w])
        for u in chosen
        for w in target.adjacency[u]
        if w in relabel and relabel[u] < relabel[w]
    ]
    attributes = target.attributes[chosen] if target.attributes is not None else None
    return Graph.from_edges(size, edges, attributes)


def _random_graph_like(n: int, edge_count: int, rng: np.random.Generator) -> Graph:
    total = n * (n - 1) // 2
    if edge_count > total:
        raise ValueError(f"cannot place {edge_count} edges on {n} nodes")
    flat = rng.choice(total, size=edge_count, replace=False).astype(np.int64)
    us, vs = _pair_index_to_edge(np.sort(flat), n)
    return Graph.from_edges(n, zip(us.tolist(), vs.tolist()))


def gen_negative_random(
    target: Graph,
    reference: Graph,
    semantics: str,
    rng: np.random.Generator,
    verify_budget: float = 10.0,
) -> Graph:
    """Fresh random query with the reference positive's exact node and edge
    counts, resampled until the oracle confirms non-containment in target.

    Verification timeouts count as failed attempts (a pair is never
    emitted on faith); 100 failures raise, the target is too permissive.
    """
    for _ in range(_MAX_ATTEMPTS):
        candidate = _random_graph_like(reference.n, reference.edge_count, rng)
        if vf2_search(target, candidate, semantics, time_budget=verify_budget).status == NOT_FOUND:
            return candidate
    raise ValueError(f"no verified negative in {_MAX_ATTEMPTS} attempts")


def gen_negative_hard(
    positive_query: Graph,
    drop_count: int,
    insert_count: int,
    target: Graph,
    rng: np.random.Generator,
    semantics: str = MONOMORPHISM,
    verify_budget: float = 10.0,
) -> Graph:
    """Perturb a positive query: remove drop_count uniform edges, insert
    insert_count uniform non-edges, retry until oracle-verified negative.

    With drop_count == insert_count the edge count is unchanged, keeping
    negatives density-matched to positives.
    """
    edges = positive_query.edges
    if drop_count > len(edges):
        raise ValueError(f"cannot drop {drop_count} of {len(edges)} edges")
    n = positive_query.n
    for _ in range(_MAX_ATTEMPTS):
        kept = list(edges)
        if drop_count:
            drop_at = set(rng.choice(len(edges), size=drop_count, replace=False).tolist())
            kept = [e for i, e in enumerate(kept) if i not in drop_at]
        if insert_count:
            present = set(kept)
            free = [
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if (u, v) not in present
            ]
            if insert_count > len(free):
                continue
            pick = rng.choice(len(free), size=insert_count, replace=False)
            kept.extend(free[i] for i in sorted(pick.tolist()))
        candidate = Graph.from_edges(n, kept, positive_query.attributes)
        if vf2_search(target, candidate, semantics, time_budget=verify_budget).status == NOT_FOUND:
            return candidate
    raise ValueError(f"no verified negative in {_MAX_ATTEMPTS} attempts")


def _gen_target(config: GenConfig, rng: np.random.Generator) -> Graph:
    if config.generator == ER:
        return gen_er(config.target_n, config.er_p, rng)
    return gen_ws(config.target_n, config.ws_k, config.ws_beta, rng)


def _record_rng(config: GenConfig, *path: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((config.seed, *path)))


def build_dataset(
    config: GenConfig, out_path: str | Path | None = None
) -> list[DatasetRecord]:
    """pair_count/2 positive and pair_count/2 negative records, interleaved
    positive-first, each sharing one generated target per pair.

    Randomness is drawn from streams keyed by (seed, pair index, attempt,
    role), so records are independent of generation order and the output
    file is byte-identical for a fixed config. When ``out_path`` is given
    the dataset is written there, plus a generation manifest alongside.
    """
    records: list[DatasetRecord] = []
    drop = config.hard_drop_count
    insert = config.hard_insert_count
    for index in range(config.pair_count // 2):
        emitted = False
        for attempt in range(_MAX_ATTEMPTS):
            target = _gen_target(config, _record_rng(config, index, attempt, 0))
            try:
                positive = bfs_sample(
                    target, config.query_size, _record_rng(config, index, attempt, 1)
                )
            except ValueError:
                continue  # no component large enough; regenerate the target
            verdict = vf2_search(
                target, positive, config.semantics, time_budget=config.verify_budget
            )
            if verdict.status != FOUND:
                continue  # verification timed out; discard, never mislabel
            neg_rng = _record_rng(config, index, attempt, 2)
            pair_drop = math.ceil(0.1 * positive.edge_count) if drop is None else drop
            pair_insert = math.ceil(0.1 * positive.edge_count) if insert is None else insert
            try:
                if config.negative_kind == RANDOM:
                    negative = gen_negative_random(
                        target, positive, config.semantics, neg_rng, config.verify_budget
                    )
                else:
                    negative = gen_negative_hard(
                        positive,
                        pair_drop,
                        pair_insert,
                        target,
                        neg_rng,
                        config.semantics,
                        config.verify_budget,
                    )
            except ValueError:
                continue
            base_meta = {
                "generator": config.generator,
                "seed": config.seed,
                "pair_index": index,
                "attempt": attempt,
                "semantics": config.semantics,
            }
            if config.generator == ER:
                base_meta["er_p"] = config.er_p
            else:
                base_meta["ws_k"] = config.ws_k
                base_meta["ws_beta"] = config.ws_beta
            neg_meta = dict(base_meta)
            neg_meta["negative_kind"] = config.negative_kind
            if config.negative_kind == HARD:
                neg_meta["drop_count"] = pair_drop
                neg_meta["insert_count"] = pair_insert
            records.append(DatasetRecord(target, positive, True, base_meta))
            records.append(DatasetRecord(target, negative, False, neg_meta))
            emitted = True
            break
        if not emitted:
            raise ValueError(
                f"pair {index}: no oracle-verified pair in {_MAX_ATTEMPTS} attempts"
            )
    if out_path is not None:
        out_path = Path(out_path)
        write_dataset(records, out_path)
        _write_manifest(config, records, out_path)
    return records


def _write_manifest(config: GenConfig, records: list[DatasetRecord], out_path: Path) -> None:
    import json

    manifest = {
        "config": config.to_dict(),
        "records": [
            {
                "pair_index": r.meta.get("pair_index"),
                "attempt": r.meta.get("attempt"),
                "label": r.label,
            }
            for r in records
        ],
    }
    manifest_path = out_path.with_name(out_path.name + ".manifest.json")
    with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
