"""The four group centrality measures, plus naive reference oracles.

Degree, closeness and betweenness follow the classic shortest-path
definitions for node groups; the walk-based measure sums decayed counts of
walks that touch the group.  Each value depends on the group as a whole,
not on per-member scores.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np
from scipy import sparse

from .graph import Graph, max_degree, multi_source_bfs, neighbors_of_group, remove_nodes

DEGREE = "degree"
CLOSENESS = "closeness"
BETWEENNESS = "betweenness"
GED_WALK = "gedwalk"
MEASURE_KINDS = (DEGREE, CLOSENESS, BETWEENNESS, GED_WALK)

DEFAULT_WALK_LENGTH = 50
WALK_TERM_REL_TOL = 1e-9
ORACLE_NODE_CAP = 64


@dataclass(frozen=True)
class CentralityMeasure:
    """A measure kind plus the walk parameters needed by the walk measure."""

    kind: str
    alpha: float | None = None
    max_length: int | None = None

    def __post_init__(self):
        if self.kind not in MEASURE_KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == GED_WALK:
            if self.alpha is None or self.alpha <= 0:
                raise ValueError("gedwalk requires alpha > 0")
            if self.max_length is None or self.max_length < 1:
                raise ValueError("gedwalk requires max_length >= 1")
        elif self.alpha is not None or self.max_length is not None:
            raise ValueError(f"alpha/max_length only apply to {GED_WALK}")


def gedwalk_measure(alpha: float, max_length: int = DEFAULT_WALK_LENGTH) -> CentralityMeasure:
    return CentralityMeasure(GED_WALK, alpha, max_length)


@dataclass(frozen=True)
class PathCounts:
    """Shortest-path counts for one node pair: all paths, and those touching the group."""

    sigma: int
    sigma_through: int


@dataclass(frozen=True)
class WalkTally:
    """Exact walk counts per length 1..L, in the graph and with the group deleted."""

    total_walks: tuple[int, ...]
    avoiding_walks: tuple[int, ...]

    @property
    def phi(self) -> tuple[int, ...]:
        return tuple(t - a for t, a in zip(self.total_walks, self.avoiding_walks))


def _check_group(g: Graph, group: Iterable[int]) -> list[int]:
    members = sorted(set(group))
    if not members:
        raise ValueError("group must be nonempty")
    for v in members:
        if not g.has_node(v):
            raise ValueError(f"group node {v} not in graph")
    if len(members) >= g.node_count:
        raise ValueError("group must be a strict subset of the nodes")
    return members


def group_degree(g: Graph, group: Iterable[int]) -> float:
    """Fraction of non-group nodes adjacent to at least one group member."""
    members = _check_group(g, group)
    return len(neighbors_of_group(g, members)) / (g.node_count - len(members))


def group_closeness(g: Graph, group: Iterable[int]) -> float:
    """Non-group node count over the sum of their distances to the group.

    Returns 0 when some non-group node is unreachable from the group.
    """
    members = _check_group(g, group)
    member_set = set(members)
    dm = multi_source_bfs(g, members)
    total = 0
    for v in g.nodes:
        if v in member_set:
            continue
        d = dm.dist[v]
        if d is None:
            return 0.0
        total += d
    return (g.node_count - len(members)) / total


def _adjacency_csr(g: Graph) -> sparse.csr_matrix:
    n = g.node_count
    indptr = np.zeros(n + 1, dtype=np.int64)
    for v in range(n):
        indptr[v + 1] = indptr[v] + g.degree(v)
    nnz = int(indptr[-1])
    indices = np.fromiter(
        (w for v in range(n) for w in g.neighbors(v)), dtype=np.int64, count=nnz
    )
    data = np.ones(nnz, dtype=np.float64)
    return sparse.csr_matrix((data, indices, indptr), shape=(n, n))


def group_betweenness(g: Graph, group: Iterable[int], *, block_size: int = 512) -> float:
    """Average over non-group pairs of the fraction of shortest paths that
    touch the group.

    Per source, one BFS sweep counts all shortest paths (sigma) and, in the
    same level order, the paths whose interior avoids the group; the pair
    fraction is 1 - avoiding/all.  Sources are batched into dense column
    blocks so the level updates run as sparse matrix products.  Disconnected
    pairs contribute 0.
    """
    members = set(_check_group(g, group))
    n = g.node_count
    rest = [v for v in range(n) if v not in members]
    ns = len(rest)
    if ns < 2:
        raise ValueError("betweenness needs at least two non-group nodes")
    if g.edge_count == 0:
        return 0.0
    A = _adjacency_csr(g)
    outside = np.ones((n, 1), dtype=bool)
    outside[sorted(members), 0] = False
    rest_rows = np.array(rest, dtype=np.int64)
    ordered_sum = 0.0
    for start in range(0, ns, block_size):
        cols = rest[start : start + block_size]
        k = len(cols)
        col_idx = np.arange(k)
        # left half counts all shortest paths, right half those avoiding the group
        sigma = np.zeros((n, 2 * k), dtype=np.float64)
        sigma[cols, col_idx] = 1.0
        sigma[cols, col_idx + k] = 1.0
        undiscovered = np.ones((n, k), dtype=bool)
        undiscovered[cols, col_idx] = False
        frontier = sigma.copy()
        new = np.empty((n, k), dtype=bool)
        new_r = np.empty((n, k), dtype=bool)
        while True:
            flow = A @ frontier
            np.greater(flow[:, :k], 0.0, out=new)
            new &= undiscovered
            if not new.any():
                break
            undiscovered ^= new  # new is a subset of undiscovered
            np.logical_and(new, outside, out=new_r)
            np.multiply(flow[:, :k], new, out=frontier[:, :k])
            np.multiply(flow[:, k:], new_r, out=frontier[:, k:])
            sigma += frontier
        counts = sigma[rest_rows, :k]
        avoiding = sigma[rest_rows, k:]
        reached = counts > 0.0  # self pairs stay: their ratio is 1, contribution 0
        ratios = np.zeros_like(counts)
        np.divide(avoiding, counts, out=ratios, where=reached)
        ordered_sum += float((1.0 - ratios)[reached].sum())
    return ordered_sum / (ns * (ns - 1))


def _distance_matrix(g: Graph) -> list[list[float]]:
    # Floyd-Warshall; independent of the BFS machinery used elsewhere
    n = g.node_count
    inf = math.inf
    dist = [[inf] * n for _ in range(n)]
    for v in range(n):
        dist[v][v] = 0.0
        for w in g.neighbors(v):
            dist[v][w] = 1.0
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == inf:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def shortest_path_counts(
    g: Graph, group: Iterable[int], *, node_cap: int = ORACLE_NODE_CAP
) -> dict[tuple[int, int], PathCounts]:
    """Literal shortest-path enumeration between non-group pairs.

    Returns counts for each connected unordered pair (s, t) with s < t: the
    number of shortest s-t paths and how many contain a group node.  Meant
    as an oracle; refuses graphs above ``node_cap`` nodes.
    """
    if g.node_count > node_cap:
        raise ValueError(f"oracle limited to {node_cap} nodes, graph has {g.node_count}")
    members = set(_check_group(g, group))
    rest = [v for v in range(g.node_count) if v not in members]
    dist = _distance_matrix(g)
    out: dict[tuple[int, int], PathCounts] = {}
    for i, s in enumerate(rest):
        ds = dist[s]
        for t in rest[i + 1 :]:
            if ds[t] == math.inf:
                continue
            total = 0
            through = 0

            def descend(v: int, touched: bool) -> None:
                nonlocal total, through
                if v == t:
                    total += 1
                    through += touched
                    return
                dv = dist[v][t]
                for w in g.neighbors(v):
                    if dist[w][t] == dv - 1:
                        descend(w, touched or w in members)

            descend(s, False)
            out[(s, t)] = PathCounts(total, through)
    return out


def group_betweenness_naive(
    g: Graph, group: Iterable[int], *, node_cap: int = ORACLE_NODE_CAP
) -> float:
    """Betweenness by explicit path enumeration; oracle for group_betweenness."""
    members = _check_group(g, group)
    ns = g.node_count - len(members)
    if ns < 2:
        raise ValueError("betweenness needs at least two non-group nodes")
    counts = shortest_path_counts(g, members, node_cap=node_cap)
    acc = sum(pc.sigma_through / pc.sigma for pc in counts.values() if pc.sigma)
    return 2.0 * acc / (ns * (ns - 1))


def _exact_walk_counts(adjacency: Iterable[tuple[int, ...]], length: int) -> list[int]:
    adj = list(adjacency)
    x = [1] * len(adj)
    counts = []
    for _ in range(length):
        x = [sum(x[w] for w in nbrs) for nbrs in adj]
        counts.append(sum(x))
    return counts


def walk_tally(g: Graph, group: Iterable[int], max_length: int) -> WalkTally:
    """Exact big-integer walk counts for lengths 1..max_length."""
    members = _check_group(g, group)
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    totals = _exact_walk_counts(g._adj, max_length)
    reduced, _ = remove_nodes(g, members)
    avoiding = _exact_walk_counts(reduced._adj, max_length)
    return WalkTally(tuple(totals), tuple(avoiding))


def group_ged_walk(
    g: Graph,
    group: Iterable[int],
    alpha: float,
    max_length: int = DEFAULT_WALK_LENGTH,
    *,
    rel_tol: float = WALK_TERM_REL_TOL,
) -> float:
    """Sum over i of alpha^i times the number of length-i walks touching the group.

    Walk counts come from iterated adjacency-vector products in float64,
    truncated at ``max_length`` with an early stop once a term's relative
    contribution drops below ``rel_tol`` (0 disables the early stop).
    """
    members = _check_group(g, group)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if max_length < 1:
        raise ValueError("max_length must be >= 1")
    if g.edge_count == 0:
        return 0.0
    A = _adjacency_csr(g)
    reduced, _ = remove_nodes(g, members)
    B = _adjacency_csr(reduced) if reduced.edge_count else None
    x = np.ones(g.node_count, dtype=np.float64)
    y = np.ones(reduced.node_count, dtype=np.float64) if B is not None else None
    total = 0.0
    scale = 1.0
    for _ in range(max_length):
        x = A @ x
        walks_all = float(x.sum())
        if not math.isfinite(walks_all):
            raise OverflowError("walk counts exceeded float range; reduce max_length")
        walks_avoiding = 0.0
        if B is not None:
            y = B @ y
            walks_avoiding = float(y.sum())
        scale *= alpha
        phi = walks_all - walks_avoiding
        if phi < 0.0:  # exact phi is >= 0; absorb float cancellation noise
            phi = 0.0
        term = scale * phi
        total += term
        if term <= rel_tol * total:
            break
    return total


def group_ged_walk_exact(
    g: Graph, group: Iterable[int], alpha: float, max_length: int
) -> float:
    """Oracle path: exact rational truncated sum over big-integer walk counts."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    tally = walk_tally(g, group, max_length)
    a = Fraction(alpha)
    acc = Fraction(0)
    power = Fraction(1)
    for phi in tally.phi:
        power *= a
        acc += power * phi
    return float(acc)


def default_alpha(g: Graph) -> float:
    """Decay 1 / (maximum degree); undefined on edgeless graphs."""
    d = max_degree(g)
    if d == 0:
        raise ValueError("default alpha undefined for an edgeless graph")
    return 1.0 / d


def evaluate(measure: CentralityMeasure, g: Graph, group: Iterable[int]) -> float:
    """Dispatch to the matching measure implementation."""
    if measure.kind == DEGREE:
        return group_degree(g, group)
    if measure.kind == CLOSENESS:
        return group_closeness(g, group)
    if measure.kind == BETWEENNESS:
        return group_betweenness(g, group)
    if measure.kind == GED_WALK:
        return group_ged_walk(g, group, measure.alpha, measure.max_length)
    raise ValueError(f"unknown measure kind {measure.kind!r}")
