"""The indicator-matrix filtering pipeline.

A boolean matrix S tracks which (target node, query node) pairs are still
plausible: S[t, q] = 1 means the depth-l unrolled tree at q may embed in
the one at t. Each layer re-tests every surviving pair with a Hall-style
condition on the pair's neighborhoods, either exactly (one bipartite
matching per pair) or through sampled aggregation passes that cost only a
few sparse matrix sweeps. A final feasibility check on the surviving
matrix yields the decision. The test is necessary, never sufficient: a
true embedding always survives, so a negative answer is definitive while
a positive one means "not ruled out".
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import kernels
from .cycles import DEFAULT_MAX_LEN, augment
from .graphs import Graph, adjacency_to_csr, compatibility_matrix

__all__ = [
    "COUNTING",
    "EXACT",
    "FilterConfig",
    "INDUCED",
    "MATCHING",
    "MONOMORPHISM",
    "MatchReport",
    "SAMPLED",
    "agg_max",
    "agg_min",
    "agg_sum",
    "check_assign",
    "drop_edge",
    "exact_hall_step",
    "init_indicator",
    "phi",
    "run_filter",
    "sampled_step",
]

SAMPLED = "sampled"
EXACT = "exact"
COUNTING = "counting"
MATCHING = "matching"
MONOMORPHISM = "monomorphism"
INDUCED = "induced"

PHI_CASES = ("full", "sampled", "single")


@dataclass(frozen=True)
class FilterConfig:
    """Knobs of one filtering run; validated on construction.

    ``layers`` is the recursion depth L, ``samples`` the number K of
    Hall-condition passes per layer in sampled mode (pass 0 uses the full
    query adjacency, passes 1..K-1 use DropEdge samples, pass K tests
    single-node neighborhoods). ``strict_supernode_length`` of None
    resolves to True under induced semantics, False otherwise.
    """

    layers: int = 5
    samples: int = 5
    drop_prob: float = 0.5
    mode: str = SAMPLED
    semantics: str = MONOMORPHISM
    attr_epsilon: float = 1e-9
    check_mode: str = COUNTING
    cycle_augment: bool = False
    cycle_max_len: int = DEFAULT_MAX_LEN
    strict_supernode_length: bool | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.layers < 1:
            raise ValueError(f"layers must be >= 1, got {self.layers}")
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if not 0.0 < self.drop_prob < 1.0:
            raise ValueError(f"drop_prob must be in (0, 1), got {self.drop_prob}")
        if self.mode not in (SAMPLED, EXACT):
            raise ValueError(f"mode must be {SAMPLED!r} or {EXACT!r}, got {self.mode!r}")
        if self.semantics not in (MONOMORPHISM, INDUCED):
            raise ValueError(
                f"semantics must be {MONOMORPHISM!r} or {INDUCED!r}, got {self.semantics!r}"
            )
        if self.attr_epsilon < 0:
            raise ValueError(f"attr_epsilon must be >= 0, got {self.attr_epsilon}")
        if self.check_mode not in (COUNTING, MATCHING):
            raise ValueError(
                f"check_mode must be {COUNTING!r} or {MATCHING!r}, got {self.check_mode!r}"
            )
        if self.cycle_max_len < 3:
            raise ValueError(f"cycle_max_len must be >= 3, got {self.cycle_max_len}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit non-negative integer, got {self.seed}")

    @property
    def strict_lengths(self) -> bool:
        if self.strict_supernode_length is None:
            return self.semantics == INDUCED
        return bool(self.strict_supernode_length)

    def to_dict(self) -> dict:
        """Resolved, JSON-ready echo of the configuration."""
        return {
            "layers": self.layers,
            "samples": self.samples,
            "drop_prob": self.drop_prob,
            "mode": self.mode,
            "semantics": self.semantics,
            "attr_epsilon": self.attr_epsilon,
            "check_mode": self.check_mode,
            "cycle_augment": self.cycle_augment,
            "cycle_max_len": self.cycle_max_len,
            "strict_supernode_length": self.strict_lengths,
            "seed": self.seed,
            "seed_streams": "seed_sequence(seed, layer, sample)",
        }


@dataclass(frozen=True)
class MatchReport:
    """Outcome of run_filter.

    ``indicators`` holds S(0) through the last computed layer (read-only
    uint8 arrays); ``iterations`` counts applied steps; ``fixpoint`` says
    iteration stopped because the matrix stabilized; ``op_count`` is a
    machine-independent work measure (adjacency entries visited by the
    per-layer kernels) used by the scaling probe.
    """

    decision: bool
    indicators: tuple[np.ndarray, ...]
    wall_time: float
    iterations: int
    fixpoint: bool
    op_count: int


def _as_adjacency(adj) -> tuple[tuple[int, ...], ...]:
    if isinstance(adj, Graph):
        return adj.adjacency
    return tuple(tuple(int(w) for w in nbrs) for nbrs in adj)


def init_indicator(
    target: Graph,
    query: Graph,
    attr_epsilon: float = 1e-9,
    strict_supernode_length: bool = False,
) -> np.ndarray:
    """S(0): root compatibility of every pair, |V_T| x |V_Q| uint8.

    All-ones without attributes; with attributes, cosine similarity
    gated at 1 - attr_epsilon (zero vectors compare by exact equality).
    Supernode/regular cross pairs are always 0.
    """
    return compatibility_matrix(target, query, attr_epsilon, strict_supernode_length)


def _agg(kernel, adj, m: np.ndarray) -> np.ndarray:
    adjacency = _as_adjacency(adj)
    m = np.ascontiguousarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != len(adjacency):
        raise ValueError(
            f"matrix has shape {m.shape}, need one row per node ({len(adjacency)})"
        )
    indptr, indices = adjacency_to_csr(adjacency)
    return kernel(indptr, indices, m)


def agg_sum(adj, m) -> np.ndarray:
    """Row i of the result = sum over i's neighbor rows of m; empty -> 0."""
    return _agg(kernels.neigh_sum_f64, adj, m)


def agg_max(adj, m) -> np.ndarray:
    """Row i = elementwise max over neighbor rows; empty neighborhood -> 0."""
    return _agg(kernels.neigh_max_f64, adj, m)


def agg_min(adj, m) -> np.ndarray:
    """Row i = elementwise min over neighbor rows; empty neighborhood -> 1
    (vacuous conjunction)."""
    return _agg(kernels.neigh_min_f64, adj, m)


def drop_edge(
    query: Graph, drop_prob: float, rng: np.random.Generator
) -> tuple[tuple[int, ...], ...]:
    """Sampled adjacency: each undirected edge kept with probability
    1 - drop_prob, symmetric, node set unchanged. Deterministic per rng."""
    if not 0.0 < drop_prob < 1.0:
        raise ValueError(f"drop_prob must be in (0, 1), got {drop_prob}")
    edges = query.edges
    keep = rng.random(len(edges)) >= drop_prob
    nbrs: list[list[int]] = [[] for _ in range(query.n)]
    for (u, v), kept in zip(edges, keep):
        if kept:
            nbrs[u].append(v)
            nbrs[v].append(u)
    return tuple(tuple(sorted(b)) for b in nbrs)


def _phi_csr(t_indptr, t_indices, q_indptr, q_indices, s: np.ndarray, case: str) -> np.ndarray:
    if case in ("full", "sampled"):
        # member[q, t] = max over q' in N(q) of S[t, q']: t is a candidate
        # for some neighbor of q. count[t, q] = |N(t) intersect candidates(q)|;
        # Hall's condition over the whole neighborhood: count >= deg(q).
        # Degree-0 rows pass vacuously (count >= 0).
        member = kernels.neigh_max_u8(q_indptr, q_indices, np.ascontiguousarray(s.T))
        counts = kernels.neigh_count_u8(t_indptr, t_indices, np.ascontiguousarray(member.T))
        degs = np.diff(q_indptr)
        return (counts >= degs[np.newaxis, :]).astype(np.uint8)
    if case == "single":
        # Hall's condition on singletons: every q' in N(q) needs some
        # candidate among N(t). Isolated q passes vacuously (min fill 1).
        best = kernels.neigh_max_u8(t_indptr, t_indices, s)
        out = kernels.neigh_min_u8(q_indptr, q_indices, np.ascontiguousarray(best.T))
        return np.ascontiguousarray(out.T)
    raise ValueError(f"case must be one of {PHI_CASES}, got {case!r}")


def phi(query_adj, target: Graph, s: np.ndarray, case: str) -> np.ndarray:
    """One Hall-condition pass: phi[t, q] = 1 iff the pair survives.

    ``query_adj`` is the query adjacency to test against: the original
    one for cases "full"/"single", a drop_edge sample for "sampled"
    (the two share the formula; degree-0 query rows pass vacuously).
    """
    adjacency = _as_adjacency(query_adj)
    s = np.ascontiguousarray(s, dtype=np.uint8)
    if s.shape != (target.n, len(adjacency)):
        raise ValueError(
            f"indicator shape {s.shape} does not match |V_T|={target.n}, "
            f"|V_Q|={len(adjacency)}"
        )
    t_indptr, t_indices = target.csr()
    q_indptr, q_indices = adjacency_to_csr(adjacency)
    return _phi_csr(t_indptr, t_indices, q_indptr, q_indices, s, case)


def _phi_ops(nnz_t: int, nnz_q: int, nt: int, nq: int) -> int:
    # adjacency entries visited, each fanned out over one matrix row
    return nnz_q * nt + nnz_t * nq


def _sampled_step(
    target: Graph,
    query: Graph,
    s: np.ndarray,
    config: FilterConfig,
    layer: int,
    s0: np.ndarray,
) -> tuple[np.ndarray, int]:
    t_indptr, t_indices = target.csr()
    q_indptr, q_indices = query.csr()
    nt, nq = s.shape
    ops = 0
    out = s0 & _phi_csr(t_indptr, t_indices, q_indptr, q_indices, s, "full")
    ops += _phi_ops(len(t_indices), len(q_indices), nt, nq)
    for k in range(1, config.samples):
        rng = np.random.default_rng(np.random.SeedSequence((config.seed, layer, k)))
        sp_indptr, sp_indices = adjacency_to_csr(drop_edge(query, config.drop_prob, rng))
        out &= _phi_csr(t_indptr, t_indices, sp_indptr, sp_indices, s, "sampled")
        ops += _phi_ops(len(t_indices), len(sp_indices), nt, nq)
    out &= _phi_csr(t_indptr, t_indices, q_indptr, q_indices, s, "single")
    ops += _phi_ops(len(t_indices), len(q_indices), nt, nq)
    return out, ops


def sampled_step(
    target: Graph,
    query: Graph,
    s: np.ndarray,
    config: FilterConfig,
    layer: int = 0,
    s0: np.ndarray | None = None,
) -> np.ndarray:
    """One sampled-mode layer: S(0) masked product of all K+1 phi passes.

    RNG streams derive from (config.seed, layer, sample index), so each
    (layer, sample) pair is reproducible in isolation and evaluation
    order cannot change results.
    """
    s = np.ascontiguousarray(s, dtype=np.uint8)
    _check_pair_shape(target, query, s)
    if s0 is None:
        s0 = init_indicator(target, query, config.attr_epsilon, config.strict_lengths)
    out, _ = _sampled_step(target, query, s, config, layer, s0)
    return out


def exact_hall_step(
    target: Graph,
    query: Graph,
    s: np.ndarray,
    s0: np.ndarray | None = None,
    attr_epsilon: float = 1e-9,
    strict_supernode_length: bool = False,
) -> np.ndarray:
    """One exact layer: out[t, q] = S(0)[t, q] AND a matching of N(q) into
    N(t) saturating N(q) exists, with (q_i, t_j) usable iff S[t_j, q_i] = 1.

    Pairs with |N(q)| > |N(t)| fail outright; |N(q)| = 0 falls back to
    S(0)[t, q].
    """
    s = np.ascontiguousarray(s, dtype=np.uint8)
    _check_pair_shape(target, query, s)
    if s0 is None:
        s0 = init_indicator(target, query, attr_epsilon, strict_supernode_length)
    s0 = np.ascontiguousarray(s0, dtype=np.uint8)
    t_indptr, t_indices = target.csr()
    q_indptr, q_indices = query.csr()
    return kernels.exact_hall_layer(t_indptr, t_indices, q_indptr, q_indices, s, s0)


def _check_pair_shape(target: Graph, query: Graph, s: np.ndarray) -> None:
    if s.shape != (target.n, query.n):
        raise ValueError(
            f"indicator shape {s.shape} does not match |V_T|={target.n}, |V_Q|={query.n}"
        )


def check_assign(s: np.ndarray, query_size: int, mode: str = COUNTING) -> bool:
    """Final feasibility of an injective assignment under indicator s.

    counting: every query column has a candidate AND at least query_size
    target rows are candidates for something. matching: a bipartite
    matching saturating every column exists (strictly stronger, still
    necessary). Both never reject a matrix that admits an assignment.
    """
    s = np.asarray(s)
    if s.ndim != 2:
        raise ValueError(f"indicator must be 2-D, got shape {s.shape}")
    if mode == COUNTING:
        every_column = bool((s != 0).any(axis=0).all())
        usable_rows = int((s != 0).any(axis=1).sum())
        return every_column and usable_rows >= query_size
    if mode == MATCHING:
        nt, nq = s.shape
        by_query = np.ascontiguousarray(s.T != 0)
        q_idx, t_idx = np.nonzero(by_query)
        indptr = np.zeros(nq + 1, dtype=np.int64)
        np.cumsum(np.bincount(q_idx, minlength=nq), out=indptr[1:])
        size = kernels.bip_match_size(nq, nt, indptr, t_idx.astype(np.int32))
        return size == nq
    raise ValueError(f"mode must be {COUNTING!r} or {MATCHING!r}, got {mode!r}")


def _exact_ops(s0: np.ndarray, d_t: np.ndarray, d_q: np.ndarray) -> int:
    # per surviving pair the kernel scans deg(t) x deg(q) entries
    nt, nq = s0.shape
    return int(d_t @ s0.astype(np.int64) @ d_q) + nt * nq


def run_filter(target: Graph, query: Graph, config: FilterConfig) -> MatchReport:
    """Full pipeline: optional cycle augmentation, S(0), layered recursion,
    feasibility check after every layer.

    Decision is false as soon as a layer fails check_assign; iteration
    also stops (with decision true) at a fixpoint, since further layers
    cannot change anything. The report keeps every computed matrix.
    """
    start = time.perf_counter()
    if config.cycle_augment:
        target = augment(target, config.cycle_max_len)
        query = augment(query, config.cycle_max_len)
    s0 = init_indicator(target, query, config.attr_epsilon, config.strict_lengths)
    _freeze(s0)
    indicators = [s0]
    ops = 0
    iterations = 0
    fixpoint = False
    decision = check_assign(s0, s0.shape[1], config.check_mode)
    if decision:
        exact_ops = 0
        if config.mode == EXACT:
            exact_ops = _exact_ops(s0, target.degrees(), query.degrees())
        s = s0
        for layer in range(config.layers):
            if config.mode == EXACT:
                s_next = exact_hall_step(target, query, s, s0)
                ops += exact_ops
            else:
                s_next, step_ops = _sampled_step(target, query, s, config, layer, s0)
                ops += step_ops
            _freeze(s_next)
            indicators.append(s_next)
            iterations += 1
            if not check_assign(s_next, s_next.shape[1], config.check_mode):
                decision = False
                break
            if np.array_equal(s_next, s):
                fixpoint = True
                break
            s = s_next
    return MatchReport(
        decision=decision,
        indicators=tuple(indicators),
        wall_time=time.perf_counter() - start,
        iterations=iterations,
        fixpoint=fixpoint,
        op_count=ops,
    )


def _freeze(a: np.ndarray) -> None:
    a.setflags(write=False)
