"""Random network models and the two gadget constructions used as oracles."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from random import Random
from typing import Iterable

from .graph import Graph, edge

BARABASI_ALBERT = "ba"
WATTS_STROGATZ = "ws"
ERDOS_RENYI = "er"
MODEL_KINDS = (BARABASI_ALBERT, WATTS_STROGATZ, ERDOS_RENYI)


@dataclass(frozen=True)
class ModelSpec:
    """Random-network model parameters; fields map one-to-one to CLI flags."""

    kind: str
    n: int
    avg_degree: int
    rewire_p: float = 0.25

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.n < 4:
            raise ValueError("need n >= 4")
        if self.avg_degree < 2:
            raise ValueError("need avg_degree >= 2")
        if self.kind == WATTS_STROGATZ and self.avg_degree % 2:
            raise ValueError("watts-strogatz lattice needs an even avg_degree")
        if not 0.0 <= self.rewire_p <= 1.0:
            raise ValueError("rewire_p must lie in [0, 1]")

    def describe(self) -> str:
        if self.kind == WATTS_STROGATZ:
            return f"ws(n={self.n},deg={self.avg_degree},p={self.rewire_p:g})"
        return f"{self.kind}(n={self.n},deg={self.avg_degree})"


def barabasi_albert(n: int, m: int, rng: Random) -> Graph:
    """Preferential attachment from a seed clique of m+1 nodes.

    Every later node attaches to m distinct existing nodes drawn with
    probability proportional to current degree; mean degree approaches 2m.
    """
    if m < 1 or m > n - 2:
        raise ValueError(f"need 1 <= m <= n-2, got m={m}, n={n}")
    edges: list[tuple[int, int]] = []
    endpoints: list[int] = []
    for i in range(m + 1):
        for j in range(i + 1, m + 1):
            edges.append((i, j))
            endpoints.append(i)
            endpoints.append(j)
    for t in range(m + 1, n):
        targets: set[int] = set()
        while len(targets) < m:
            targets.add(endpoints[rng.randrange(len(endpoints))])
        for u in sorted(targets):
            edges.append((u, t))
            endpoints.append(u)
            endpoints.append(t)
    return Graph.from_edges(n, edges)


def watts_strogatz(n: int, k: int, p: float, rng: Random) -> Graph:
    """Ring lattice with k/2 neighbors per side, each edge's far endpoint
    rewired with probability p.

    A rewiring move that would create a self-loop or duplicate an existing
    edge is skipped (the edge stays in place), so the edge count is exactly
    n*k/2 for every p.
    """
    if k % 2 or k < 2:
        raise ValueError("k must be even and >= 2")
    if not k < n:
        raise ValueError("need k < n")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    edges: set[tuple[int, int]] = set()
    for j in range(1, k // 2 + 1):
        for u in range(n):
            edges.add(edge(u, (u + j) % n))
    if p > 0.0:
        for j in range(1, k // 2 + 1):
            for u in range(n):
                if rng.random() >= p:
                    continue
                old = edge(u, (u + j) % n)
                w = rng.randrange(n)
                if w == u:
                    continue
                new = edge(u, w)
                if new in edges:
                    continue
                edges.discard(old)
                edges.add(new)
    return Graph.from_edges(n, edges)


def erdos_renyi(n: int, m: int, rng: Random) -> Graph:
    """Exactly m distinct edges drawn uniformly from all node pairs."""
    if n < 1:
        raise ValueError("need n >= 1")
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise ValueError(f"need 0 <= m <= {total}, got {m}")
    # pair index layout: row u holds pairs (u, u+1..n-1)
    row_start = [0] * n
    for u in range(1, n):
        row_start[u] = row_start[u - 1] + (n - 1 - (u - 1))
    edges = []
    for idx in rng.sample(range(total), m):
        u = bisect_right(row_start, idx) - 1
        v = u + 1 + (idx - row_start[u])
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def build_model(spec: ModelSpec, rng: Random) -> Graph:
    """Instantiate one network from a model spec."""
    if spec.kind == BARABASI_ALBERT:
        if spec.avg_degree % 2:
            raise ValueError("barabasi-albert needs an even avg_degree (m = avg/2)")
        return barabasi_albert(spec.n, spec.avg_degree // 2, rng)
    if spec.kind == WATTS_STROGATZ:
        return watts_strogatz(spec.n, spec.avg_degree, spec.rewire_p, rng)
    target = spec.n * spec.avg_degree
    if target % 2:
        raise ValueError("erdos-renyi needs n * avg_degree even")
    return erdos_renyi(spec.n, target // 2, rng)


def clique_gadget(g_c: Graph) -> tuple[Graph, int, int, frozenset[tuple[int, int]]]:
    """Closeness test gadget built around an arbitrary base graph.

    Adds a probe node h joined to every base node and to a shortcut node x
    (itself joined to every base node), plus one contact node per base edge
    hanging off that edge's endpoints.  Returns (graph, h, x, removable)
    where removable is the set of h-to-base edges.  With the single-node
    group {h}, the closeness after removing R from removable has the closed
    form (|V|-1) / (n_c + 2*m_c + 1 + |R| + a) with a the number of contact
    nodes whose both h-edges were removed.
    """
    nc = g_c.node_count
    if nc < 1:
        raise ValueError("base graph needs at least one node")
    h = nc
    x = nc + 1
    new_edges: list[tuple[int, int]] = [(h, x)]
    for v in range(nc):
        new_edges.append((h, v))
        new_edges.append((v, x))
    next_id = nc + 2
    for a, b in g_c.edges():
        new_edges.append((a, next_id))
        new_edges.append((b, next_id))
        next_id += 1
    gadget = Graph.from_edges(next_id, new_edges)
    removable = frozenset(edge(h, v) for v in range(nc))
    return gadget, h, x, removable


def multiway_cut_gadget(
    g_m: Graph, terminals: Iterable[int]
) -> tuple[Graph, frozenset[int], frozenset[tuple[int, int]]]:
    """Betweenness test gadget: one pendant probe per terminal node.

    With all base nodes as evaders and the base edges removable, the group
    betweenness drops to zero exactly when the removals disconnect every
    pair of terminals in the base graph.
    """
    terms = sorted(set(terminals))
    if len(terms) < 3:
        raise ValueError("need at least 3 terminals")
    for t in terms:
        if not g_m.has_node(t):
            raise ValueError(f"terminal {t} not in graph")
    nm = g_m.node_count
    new_edges = list(g_m.edges())
    for i, t in enumerate(terms):
        new_edges.append((t, nm + i))
    gadget = Graph.from_edges(nm + len(terms), new_edges)
    evaders = frozenset(range(nm))
    removable = frozenset(g_m.edges())
    return gadget, evaders, removable
