"""Immutable undirected simple graphs and the primitive queries built on them."""

from __future__ import annotations

from bisect import bisect_left
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class EdgeListParseError(ValueError):
    """Malformed edge-list input."""


def edge(u: int, v: int) -> tuple[int, int]:
    """Canonical (low, high) form of an undirected edge."""
    if u == v:
        raise ValueError(f"self-loop ({u}, {v}) is not a valid edge")
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph over dense node ids ``0 .. n-1``.

    Instances are immutable; operations that change the topology return new
    graphs.  An optional label table maps node ids back to the external
    labels seen when the graph was loaded from an edge list, and survives
    subgraph extraction.
    """

    __slots__ = ("_adj", "_edge_count", "_labels")

    def __init__(
        self,
        adjacency: Sequence[Iterable[int]],
        labels: Sequence[str] | None = None,
    ):
        n = len(adjacency)
        adj = tuple(tuple(sorted(set(nbrs))) for nbrs in adjacency)
        neighbor_sets = [set(nbrs) for nbrs in adj]
        half_edges = 0
        for v, nbrs in enumerate(adj):
            for w in nbrs:
                if w == v:
                    raise ValueError(f"self-loop at node {v}")
                if not 0 <= w < n:
                    raise ValueError(f"neighbor {w} of node {v} out of range [0, {n})")
                if v not in neighbor_sets[w]:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")
            half_edges += len(nbrs)
        self._adj = adj
        self._edge_count = half_edges // 2
        self._labels = tuple(labels) if labels is not None else None
        if self._labels is not None and len(self._labels) != n:
            raise ValueError("label table size must match node count")

    @classmethod
    def from_edges(
        cls,
        node_count: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
    ) -> Graph:
        """Build a graph from (u, v) pairs; duplicates collapse, self-loops raise."""
        if node_count < 0:
            raise ValueError("node_count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(node_count)]
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {node_count} nodes")
            if u == v:
                raise ValueError(f"self-loop ({u}, {v}) not allowed")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, labels=labels)

    @classmethod
    def _trusted(
        cls, adj: tuple[tuple[int, ...], ...], labels: tuple[str, ...] | None
    ) -> Graph:
        # internal fast path: adjacency already canonical and symmetric
        g = object.__new__(cls)
        g._adj = adj
        g._edge_count = sum(len(a) for a in adj) // 2
        g._labels = labels
        return g

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def nodes(self) -> range:
        return range(len(self._adj))

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._labels

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def has_node(self, v: int) -> bool:
        return 0 <= v < len(self._adj)

    def has_edge(self, u: int, v: int) -> bool:
        if not (self.has_node(u) and self.has_node(v)) or u == v:
            return False
        nbrs = self._adj[u]
        i = bisect_left(nbrs, v)
        return i < len(nbrs) and nbrs[i] == v

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, in ascending order."""
        for v, nbrs in enumerate(self._adj):
            for w in nbrs:
                if w > v:
                    yield (v, w)

    def label_of(self, v: int) -> str:
        if self._labels is None:
            return str(v)
        return self._labels[v]

    def label_index(self) -> dict[str, int]:
        """Map from external label to node id (ids stringified when unlabeled)."""
        if self._labels is None:
            return {str(v): v for v in self.nodes}
        return {lab: v for v, lab in enumerate(self._labels)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj and self._labels == other._labels

    def __hash__(self) -> int:
        return hash((self._adj, self._labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.node_count}, m={self.edge_count})"


@dataclass(frozen=True)
class DistanceMap:
    """BFS distances from a source set; ``None`` marks unreachable nodes."""

    sources: frozenset[int]
    dist: tuple[int | None, ...]


def load_edge_list(
    lines: Iterable[str],
    *,
    delimiter: str | None = None,
    drop_extra_columns: bool = True,
) -> Graph:
    """Parse an edge-list stream into a simple undirected graph.

    One edge per line: the first two tokens are node labels, lines starting
    with '#' or '%' (and blank lines) are skipped.  ``delimiter=None`` splits
    on any mix of whitespace and commas.  Self-loops are dropped, duplicate
    edges collapse.  Extra tokens per line are ignored when
    ``drop_extra_columns`` and rejected otherwise.
    """
    ids: dict[str, int] = {}
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    saw_data = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        if delimiter is None:
            tokens = line.replace(",", " ").split()
        else:
            tokens = [t for t in (p.strip() for p in line.split(delimiter)) if t]
        if len(tokens) < 2:
            raise EdgeListParseError(f"line {lineno}: expected at least two tokens, got {line!r}")
        if len(tokens) > 2 and not drop_extra_columns:
            raise EdgeListParseError(f"line {lineno}: unexpected extra columns in {line!r}")
        saw_data = True
        pair = []
        for tok in tokens[:2]:
            if tok not in ids:
                ids[tok] = len(labels)
                labels.append(tok)
            pair.append(ids[tok])
        u, v = pair
        if u != v:
            edges.append((u, v))
    if not saw_data:
        raise EdgeListParseError("empty edge list: no data lines found")
    return Graph.from_edges(len(labels), edges, labels=labels)


def dump_edge_list(g: Graph, stream) -> None:
    """Write one ``label label`` line per edge, readable by load_edge_list."""
    for u, v in g.edges():
        stream.write(f"{g.label_of(u)} {g.label_of(v)}\n")


def remove_edges(g: Graph, remove: Iterable[tuple[int, int]]) -> Graph:
    """Return the graph with the given edges deleted; raises if any is absent."""
    drop_by_node: dict[int, set[int]] = {}
    seen: set[tuple[int, int]] = set()
    for u, v in remove:
        e = edge(u, v)
        if e in seen:
            raise ValueError(f"edge {e} listed twice in removal set")
        seen.add(e)
        if not g.has_edge(*e):
            raise ValueError(f"edge {e} not present in graph")
        drop_by_node.setdefault(e[0], set()).add(e[1])
        drop_by_node.setdefault(e[1], set()).add(e[0])
    if not drop_by_node:
        return g
    adj = list(g._adj)
    for v, gone in drop_by_node.items():
        adj[v] = tuple(w for w in adj[v] if w not in gone)
    return Graph._trusted(tuple(adj), g._labels)


def _induced(g: Graph, kept: Sequence[int]) -> tuple[Graph, dict[int, int]]:
    # kept must be ascending; mapping preserves neighbor-list sort order
    mapping = {old: new for new, old in enumerate(kept)}
    adj = tuple(
        tuple(mapping[w] for w in g._adj[old] if w in mapping) for old in kept
    )
    labels = None
    if g.labels is not None:
        labels = tuple(g.labels[old] for old in kept)
    return Graph._trusted(adj, labels), mapping


def remove_nodes(g: Graph, drop: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Delete nodes and incident edges; returns (graph, old-id -> new-id map)."""
    drop_set = set(drop)
    for v in drop_set:
        if not g.has_node(v):
            raise ValueError(f"node {v} not in graph")
    kept = [v for v in g.nodes if v not in drop_set]
    return _induced(g, kept)


def neighbors_of_group(g: Graph, group: Iterable[int]) -> set[int]:
    """Nodes outside the group adjacent to at least one member."""
    members = set(group)
    for v in members:
        if not g.has_node(v):
            raise ValueError(f"node {v} not in graph")
    out: set[int] = set()
    for v in members:
        out.update(g.neighbors(v))
    return out - members


def multi_source_bfs(g: Graph, sources: Iterable[int]) -> DistanceMap:
    """Distance from the nearest source to every node (None if unreachable)."""
    src = set(sources)
    if not src:
        raise ValueError("sources must be nonempty")
    for v in src:
        if not g.has_node(v):
            raise ValueError(f"source {v} not in graph")
    dist: list[int | None] = [None] * g.node_count
    queue: deque[int] = deque()
    for v in sorted(src):
        dist[v] = 0
        queue.append(v)
    while queue:
        v = queue.popleft()
        d = dist[v] + 1  # type: ignore[operator]
        for w in g.neighbors(v):
            if dist[w] is None:
                dist[w] = d
                queue.append(w)
    return DistanceMap(frozenset(src), tuple(dist))


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted node lists, ordered by their smallest node id."""
    seen = [False] * g.node_count
    comps: list[list[int]] = []
    for start in g.nodes:
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        comps.append(comp)
    return comps


def giant_component(g: Graph) -> Graph:
    """Induced subgraph of the largest component; ties go to the one with the
    smallest contained node id."""
    if g.node_count == 0:
        raise ValueError("graph has no nodes")
    comps = connected_components(g)
    best = max(comps, key=len)  # max() keeps the earliest (smallest min id) on ties
    sub, _ = _induced(g, best)
    return sub


def max_degree(g: Graph) -> int:
    if g.node_count == 0:
        return 0
    return max(len(nbrs) for nbrs in g._adj)
