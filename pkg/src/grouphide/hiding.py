"""Edge-removal strategies for lowering a group's centrality.

Contains the exact greedy for the degree measure (provably optimal within
the budget), three heuristic per-edge strategies, an exhaustive subset
search used as the optimality oracle, and threshold solvers for the
decision and minimization problems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from random import Random
from typing import Iterable, Mapping

from .centrality import (
    BETWEENNESS,
    CLOSENESS,
    DEGREE,
    DEFAULT_WALK_LENGTH,
    GED_WALK,
    MEASURE_KINDS,
    CentralityMeasure,
    default_alpha,
    evaluate,
    group_betweenness,
    group_closeness,
    group_degree,
    group_ged_walk,
)
from .graph import Graph, edge, multi_source_bfs, neighbors_of_group, remove_edges, remove_nodes

OPTIMAL_DEGREE = "optimal_degree"
INTERNAL = "internal"
RANDOM = "random"
SHORTCUT = "shortcut"
STRATEGIES = (OPTIMAL_DEGREE, INTERNAL, RANDOM, SHORTCUT)

DEFAULT_SUBSET_CAP = 10_000_000

Edge = tuple[int, int]


class EnumerationCapExceeded(RuntimeError):
    """Subset search would exceed the configured enumeration cap."""


def _validate_evaders(g: Graph, evaders: Iterable[int]) -> frozenset[int]:
    members = frozenset(evaders)
    if not members:
        raise ValueError("evader set must be nonempty")
    for v in members:
        if not g.has_node(v):
            raise ValueError(f"evader {v} not in graph")
    if len(members) >= g.node_count:
        raise ValueError("evader set must be a strict subset of the nodes")
    return members


def _validate_removable(
    g: Graph, evaders: frozenset[int], removable: Iterable[Edge]
) -> frozenset[Edge]:
    out = frozenset(edge(u, v) for u, v in removable)
    for u, v in out:
        if not g.has_edge(u, v):
            raise ValueError(f"removable edge ({u}, {v}) not present in graph")
        if u not in evaders and v not in evaders:
            raise ValueError(f"removable edge ({u}, {v}) touches no evader")
    return out


@dataclass(frozen=True)
class HidingInstance:
    """One hiding problem: graph, evaders, target measure, threshold,
    permitted removals, and (for the budgeted variant) the budget."""

    graph: Graph
    evaders: frozenset[int]
    removable: frozenset[Edge]
    measure: CentralityMeasure | None = None
    threshold: float = 0.0
    budget: int | None = None

    def __post_init__(self):
        members = _validate_evaders(self.graph, self.evaders)
        object.__setattr__(self, "evaders", members)
        object.__setattr__(
            self, "removable", _validate_removable(self.graph, members, self.removable)
        )
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be non-negative")


@dataclass(frozen=True)
class DisconnectCost:
    """Edges joining one outside neighbor to the evaders; removing them all
    drops the neighbor from the group's neighborhood."""

    neighbor: int
    edges: tuple[Edge, ...]
    affordable: bool  # every edge is permitted for removal


@dataclass
class StrategyOutcome:
    removed: tuple[Edge, ...]
    graph_after: Graph
    scores_before: Mapping[str, float]
    scores_after: Mapping[str, float]
    strategy: str
    seed: int | None = None


def disconnect_costs(
    g: Graph, evaders: Iterable[int], removable: Iterable[Edge]
) -> list[DisconnectCost]:
    """Per outside neighbor, its evader-incident edges, cheapest first."""
    members = _validate_evaders(g, evaders)
    allowed = _validate_removable(g, members, removable)
    out = []
    for v in sorted(neighbors_of_group(g, members)):
        edges = tuple(edge(v, h) for h in g.neighbors(v) if h in members)
        out.append(DisconnectCost(v, edges, all(e in allowed for e in edges)))
    out.sort(key=lambda c: (len(c.edges), c.neighbor))
    return out


def optimal_degree_removal(
    g: Graph, evaders: Iterable[int], removable: Iterable[Edge], budget: int
) -> list[Edge]:
    """Budgeted removal set minimizing the group degree centrality.

    Greedy over whole disconnect-cost blocks in non-decreasing size: a
    neighbor only leaves the neighborhood when *all* of its evader edges go,
    so taking the cheapest affordable blocks until the next one no longer
    fits is optimal for the degree measure.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    removed: list[Edge] = []
    for cost in disconnect_costs(g, evaders, removable):
        if not cost.affordable:
            continue
        if len(removed) + len(cost.edges) > budget:
            break  # sorted by size: nothing later fits either
        removed.extend(cost.edges)
    return removed


def internal_step(
    g: Graph, evaders: Iterable[int], removable: Iterable[Edge], rng: Random
) -> Edge | None:
    """Uniform pick among still-present removable edges joining two evaders."""
    members = frozenset(evaders)
    candidates = sorted(
        e
        for e in removable
        if e[0] in members and e[1] in members and g.has_edge(*e)
    )
    if not candidates:
        return None
    return candidates[rng.randrange(len(candidates))]


def random_step(
    g: Graph, evaders: Iterable[int], removable: Iterable[Edge], rng: Random
) -> Edge | None:
    """Uniform pick among still-present removable edges."""
    candidates = sorted(e for e in removable if g.has_edge(*e))
    if not candidates:
        return None
    return candidates[rng.randrange(len(candidates))]


def shortcut_step(
    g: Graph, evaders: Iterable[int], removable: Iterable[Edge]
) -> Edge | None:
    """Cut the boundary edge to the outside neighbor that can reach the rest
    of the evader-free graph fastest.

    Candidate neighbors are ranked by their summed distance (in the graph
    with the evaders deleted) to every other non-evader; unreachable nodes
    count as the full node count, a finite penalty that dominates any real
    distance.  Ties break on the neighbor id, then on the evader id.
    """
    members = frozenset(evaders)
    partners: dict[int, list[int]] = {}
    for e in sorted(removable):
        u, v = e
        if not g.has_edge(u, v):
            continue
        if (u in members) == (v in members):
            continue  # need exactly one evader endpoint
        h, outside = (u, v) if u in members else (v, u)
        partners.setdefault(outside, []).append(h)
    if not partners:
        return None
    reduced, mapping = remove_nodes(g, members)
    penalty = g.node_count
    best_key: tuple[int, int] | None = None
    for v in sorted(partners):
        dm = multi_source_bfs(reduced, [mapping[v]])
        dist_sum = 0
        for w, d in enumerate(dm.dist):
            if w == mapping[v]:
                continue
            dist_sum += d if d is not None else penalty
        key = (dist_sum, v)
        if best_key is None or key < best_key:
            best_key = key
    chosen = best_key[1]
    return edge(min(partners[chosen]), chosen)


def _resolve_walk_params(
    g: Graph,
    measure: CentralityMeasure | None,
    alpha: float | None,
    max_length: int | None,
) -> tuple[float, int]:
    if alpha is None:
        if measure is not None and measure.kind == GED_WALK:
            alpha = measure.alpha
        else:
            alpha = default_alpha(g) if g.edge_count else 1.0
    if max_length is None:
        if measure is not None and measure.kind == GED_WALK:
            max_length = measure.max_length
        else:
            max_length = DEFAULT_WALK_LENGTH
    return alpha, max_length


def score_measures(
    g: Graph,
    group: Iterable[int],
    kinds: Iterable[str],
    alpha: float,
    max_length: int,
) -> dict[str, float]:
    """Evaluate the requested measure kinds with fixed walk parameters."""
    scores: dict[str, float] = {}
    for kind in kinds:
        if kind == DEGREE:
            scores[kind] = group_degree(g, group)
        elif kind == CLOSENESS:
            scores[kind] = group_closeness(g, group)
        elif kind == BETWEENNESS:
            scores[kind] = group_betweenness(g, group)
        elif kind == GED_WALK:
            scores[kind] = group_ged_walk(g, group, alpha, max_length)
        else:
            raise ValueError(f"unknown measure kind {kind!r}")
    return scores


def execute_strategy(
    instance: HidingInstance,
    strategy: str,
    seed: int | None = None,
    *,
    score_kinds: Iterable[str] = MEASURE_KINDS,
    ged_alpha: float | None = None,
    ged_max_length: int | None = None,
) -> StrategyOutcome:
    """Run one strategy to budget exhaustion, scoring before and after.

    The batch strategy removes its whole set at once; the per-edge
    strategies re-derive their candidates from the current graph after
    every removal.  Walk-measure parameters are frozen from the pre-removal
    graph so before/after scores reflect topology changes only.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if instance.budget is None:
        raise ValueError("instance budget is required to execute a strategy")
    g = instance.graph
    evaders = instance.evaders
    kinds = tuple(score_kinds)
    alpha, max_length = _resolve_walk_params(g, instance.measure, ged_alpha, ged_max_length)
    scores_before = score_measures(g, evaders, kinds, alpha, max_length)
    rng = Random(seed)
    removed: list[Edge] = []
    if strategy == OPTIMAL_DEGREE:
        removed = optimal_degree_removal(g, evaders, instance.removable, instance.budget)
        current = remove_edges(g, removed)
    else:
        current = g
        while len(removed) < instance.budget:
            if strategy == INTERNAL:
                e = internal_step(current, evaders, instance.removable, rng)
            elif strategy == RANDOM:
                e = random_step(current, evaders, instance.removable, rng)
            else:
                e = shortcut_step(current, evaders, instance.removable)
            if e is None:
                break
            current = remove_edges(current, [e])
            removed.append(e)
    scores_after = score_measures(current, evaders, kinds, alpha, max_length)
    return StrategyOutcome(
        removed=tuple(removed),
        graph_after=current,
        scores_before=scores_before,
        scores_after=scores_after,
        strategy=strategy,
        seed=seed,
    )


def _subset_count(pool_size: int, max_size: int) -> int:
    return sum(math.comb(pool_size, j) for j in range(max_size + 1))


def brute_force_optimal(
    instance: HidingInstance, *, subset_cap: int = DEFAULT_SUBSET_CAP
) -> tuple[tuple[Edge, ...], float]:
    """Exhaustively minimize the instance measure over removable subsets.

    Scans sizes 0..budget in lexicographic order, so ties resolve to the
    smallest, lexicographically first subset.  Stops early at value 0 (the
    global minimum for every supported measure).
    """
    if instance.measure is None:
        raise ValueError("instance measure is required for brute force")
    if instance.budget is None:
        raise ValueError("instance budget is required for brute force")
    pool = sorted(instance.removable)
    limit = min(instance.budget, len(pool))
    total = _subset_count(len(pool), limit)
    if total > subset_cap:
        raise EnumerationCapExceeded(
            f"{total} subsets exceed the cap of {subset_cap}; shrink the instance"
        )
    g = instance.graph
    evaders = instance.evaders
    best_set: tuple[Edge, ...] = ()
    best_value = evaluate(instance.measure, g, evaders)
    if best_value == 0.0:
        return best_set, 0.0
    for size in range(1, limit + 1):
        for combo in combinations(pool, size):
            value = evaluate(instance.measure, remove_edges(g, combo), evaders)
            if value < best_value:
                best_value = value
                best_set = combo
                if best_value == 0.0:
                    return best_set, 0.0
    return best_set, best_value


def solve_group_hiding(
    instance: HidingInstance, *, subset_cap: int = DEFAULT_SUBSET_CAP
) -> tuple[Edge, ...] | None:
    """Find any removal set within budget that drives the measure to the
    threshold, or None when impossible.

    Degree uses the exact greedy (its result is the achievable minimum, so
    the threshold test on it decides the instance).  Other measures search
    subsets by increasing size.
    """
    if instance.measure is None:
        raise ValueError("instance measure is required")
    if instance.budget is None:
        raise ValueError("instance budget is required")
    g = instance.graph
    evaders = instance.evaders
    if instance.measure.kind == DEGREE:
        if group_degree(g, evaders) <= instance.threshold:
            return ()
        removed = optimal_degree_removal(g, evaders, instance.removable, instance.budget)
        after = remove_edges(g, removed)
        if group_degree(after, evaders) <= instance.threshold:
            return tuple(removed)
        return None
    pool = sorted(instance.removable)
    limit = min(instance.budget, len(pool))
    if _subset_count(len(pool), limit) > subset_cap:
        raise EnumerationCapExceeded(
            f"subset search exceeds the cap of {subset_cap}; shrink the instance"
        )
    for size in range(limit + 1):
        for combo in combinations(pool, size):
            after = remove_edges(g, combo) if combo else g
            if evaluate(instance.measure, after, evaders) <= instance.threshold:
                return combo
    return None


def solve_minimum_group_hiding(
    instance: HidingInstance, *, subset_cap: int = DEFAULT_SUBSET_CAP
) -> tuple[Edge, ...] | None:
    """Smallest removal set meeting the threshold, ignoring any budget.

    Degree reruns the exact greedy for each budget 0..|removable| and keeps
    the first success; other measures enumerate subsets by size.
    """
    if instance.measure is None:
        raise ValueError("instance measure is required")
    g = instance.graph
    evaders = instance.evaders
    pool = sorted(instance.removable)
    if instance.measure.kind == DEGREE:
        for budget in range(len(pool) + 1):
            removed = optimal_degree_removal(g, evaders, instance.removable, budget)
            after = remove_edges(g, removed)
            if group_degree(after, evaders) <= instance.threshold:
                return tuple(removed)
        return None
    enumerated = 0
    for size in range(len(pool) + 1):
        enumerated += math.comb(len(pool), size)
        if enumerated > subset_cap:
            raise EnumerationCapExceeded(
                f"subset search exceeds the cap of {subset_cap}; shrink the instance"
            )
        for combo in combinations(pool, size):
            after = remove_edges(g, combo) if combo else g
            if evaluate(instance.measure, after, evaders) <= instance.threshold:
                return combo
    return None
