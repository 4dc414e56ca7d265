"""Building evader groups and the default set of removable edges."""

from __future__ import annotations

from dataclasses import dataclass
from random import Random
from typing import Iterable

from .graph import Graph, edge

DENSE = "dense"
CELLS = "cells"
SCATTERED = "scattered"
SELECTION_KINDS = (DENSE, CELLS, SCATTERED)

DEFAULT_CELL_BOUNDS = (3, 7)


@dataclass(frozen=True)
class SelectionCriterion:
    kind: str
    cell_size_bounds: tuple[int, int] = DEFAULT_CELL_BOUNDS

    def __post_init__(self):
        if self.kind not in SELECTION_KINDS:
            raise ValueError(f"unknown selection kind {self.kind!r}")
        low, high = self.cell_size_bounds
        if low < 2 or low > high:
            raise ValueError("cell size bounds need 2 <= low <= high")


def _check_k(g: Graph, k: int) -> None:
    if not 1 <= k < g.node_count:
        raise ValueError(f"group size {k} out of range [1, {g.node_count})")


def _grow_dense(g: Graph, size: int, rng: Random, forbidden: set[int]) -> set[int]:
    """Grow a blob of the given size, always adding the available node with
    the most edges into the blob (ties uniform).  When no available node has
    an edge into the blob, the next pick reseeds uniformly."""
    n = g.node_count
    blob: set[int] = set()
    edges_into = [0] * n

    def add(v: int) -> None:
        blob.add(v)
        for w in g.neighbors(v):
            edges_into[w] += 1

    available = [v for v in range(n) if v not in forbidden]
    add(available[rng.randrange(len(available))])
    while len(blob) < size:
        best = -1
        candidates: list[int] = []
        for v in range(n):
            if v in blob or v in forbidden:
                continue
            c = edges_into[v]
            if c > best:
                best = c
                candidates = [v]
            elif c == best:
                candidates.append(v)
        add(candidates[rng.randrange(len(candidates))])
    return blob


def select_dense(g: Graph, k: int, rng: Random) -> frozenset[int]:
    """One densely connected group: random seed, then greedy neighbor growth."""
    _check_k(g, k)
    return frozenset(_grow_dense(g, k, rng, set()))


def draw_cell_sizes(k: int, bounds: tuple[int, int], rng: Random) -> list[int]:
    """Uniform draws in [low, high] until they cover k; the last is truncated."""
    low, high = bounds
    sizes: list[int] = []
    total = 0
    while total < k:
        s = rng.randint(low, high)
        if total + s >= k:
            s = k - total
        sizes.append(s)
        total += s
    return sizes


def select_cells(
    g: Graph,
    k: int,
    rng: Random,
    bounds: tuple[int, int] = DEFAULT_CELL_BOUNDS,
) -> frozenset[int]:
    """Union of small dense cells totalling exactly k members.

    Cells never share nodes but may be adjacent; each grows from a fresh
    uniform seed outside everything selected so far.
    """
    _check_k(g, k)
    selected: set[int] = set()
    for size in draw_cell_sizes(k, bounds, rng):
        selected |= _grow_dense(g, size, rng, selected)
    return frozenset(selected)


def select_scattered(g: Graph, k: int, rng: Random) -> frozenset[int]:
    """Uniform k-subset of the nodes."""
    _check_k(g, k)
    return frozenset(rng.sample(range(g.node_count), k))


def select_group(
    g: Graph, criterion: SelectionCriterion, k: int, rng: Random
) -> frozenset[int]:
    if criterion.kind == DENSE:
        return select_dense(g, k, rng)
    if criterion.kind == CELLS:
        return select_cells(g, k, rng, criterion.cell_size_bounds)
    return select_scattered(g, k, rng)


def default_removable(g: Graph, evaders: Iterable[int]) -> frozenset[tuple[int, int]]:
    """Every edge with at least one endpoint in the evader set."""
    members = set(evaders)
    for v in members:
        if not g.has_node(v):
            raise ValueError(f"evader {v} not in graph")
    out = set()
    for v in members:
        for w in g.neighbors(v):
            out.add(edge(v, w))
    return frozenset(out)
