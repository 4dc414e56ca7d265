"""Small graph builders and strategies shared across the test modules."""

from __future__ import annotations

from itertools import combinations
from random import Random

from hypothesis import strategies as st

from grouphide import Graph


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Center is node 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def disjoint_union(a: Graph, b: Graph) -> Graph:
    off = a.node_count
    edges = list(a.edges()) + [(u + off, v + off) for u, v in b.edges()]
    return Graph.from_edges(a.node_count + b.node_count, edges)


def random_graph(rng: Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_connected_graph(rng: Random, n: int, extra_p: float = 0.2) -> Graph:
    """Random spanning tree plus some extra edges."""
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    for u, v in combinations(range(n), 2):
        if rng.random() < extra_p:
            edges.append((u, v))
    return Graph.from_edges(n, edges)


def permute_graph(g: Graph, perm: list[int]) -> Graph:
    """Relabel nodes: node v becomes perm[v]."""
    return Graph.from_edges(g.node_count, [(perm[u], perm[v]) for u, v in g.edges()])


@st.composite
def graphs(draw, min_nodes: int = 2, max_nodes: int = 10) -> Graph:
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def graphs_with_group(draw, min_nodes: int = 3, max_nodes: int = 10, max_group: int = 4):
    """A graph plus a nonempty strict-subset group leaving >= 2 outsiders."""
    g = draw(graphs(min_nodes, max_nodes))
    k = draw(st.integers(1, min(max_group, g.node_count - 2)))
    group = draw(st.sets(st.integers(0, g.node_count - 1), min_size=k, max_size=k))
    return g, frozenset(group)
