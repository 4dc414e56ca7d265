from random import Random

import pytest

from grouphide import (
    CentralityMeasure,
    EnumerationCapExceeded,
    Graph,
    HidingInstance,
    brute_force_optimal,
    clique_gadget,
    default_removable,
    disconnect_costs,
    execute_strategy,
    gedwalk_measure,
    group_betweenness_naive,
    group_degree,
    group_ged_walk,
    internal_step,
    multiway_cut_gadget,
    optimal_degree_removal,
    random_step,
    remove_edges,
    shortcut_step,
    solve_group_hiding,
    solve_minimum_group_hiding,
)
from helpers import complete_graph, random_graph, star_graph


def two_evader_graph() -> tuple[Graph, frozenset, frozenset]:
    """Evaders 0,1; outside neighbor 2 adjacent to evader 0 only, neighbor 3
    adjacent to both.  Everything removable."""
    g = Graph.from_edges(4, [(0, 2), (0, 3), (1, 3)])
    evaders = frozenset({0, 1})
    removable = frozenset({(0, 2), (0, 3), (1, 3)})
    return g, evaders, removable


def brute_force_degree(g, evaders, removable, budget):
    from itertools import combinations

    pool = sorted(removable)
    best = group_degree(g, evaders)
    for size in range(1, min(budget, len(pool)) + 1):
        for combo in combinations(pool, size):
            best = min(best, group_degree(remove_edges(g, combo), evaders))
    return best


class TestOptimalDegreeRemoval:
    def test_zero_budget(self):
        g, evaders, removable = two_evader_graph()
        assert optimal_degree_removal(g, evaders, removable, 0) == []

    def test_partial_budget_takes_cheapest_block(self):
        g, evaders, removable = two_evader_graph()
        # disconnecting node 3 needs both of its edges, too much on top of (0,2)
        assert optimal_degree_removal(g, evaders, removable, 2) == [(0, 2)]

    def test_full_budget_disconnects_everything(self):
        g, evaders, removable = two_evader_graph()
        removed = optimal_degree_removal(g, evaders, removable, 3)
        assert sorted(removed) == [(0, 2), (0, 3), (1, 3)]
        assert group_degree(remove_edges(g, removed), evaders) == 0.0

    def test_unaffordable_blocks_are_skipped(self):
        g, evaders, _ = two_evader_graph()
        # only one of node 3's edges is removable, so node 3 can never drop out
        removed = optimal_degree_removal(g, evaders, {(0, 2), (0, 3)}, 3)
        assert removed == [(0, 2)]

    def test_matches_brute_force_on_random_instances(self):
        rng = Random(2024)
        for _ in range(40):
            n = rng.randint(5, 16)
            g = random_graph(rng, n, 0.35)
            k = rng.randint(1, min(4, n - 2))
            evaders = frozenset(rng.sample(range(n), k))
            incident = sorted(default_removable(g, evaders))
            removable = frozenset(e for e in incident if rng.random() < 0.8)
            budget = rng.randint(0, 5)
            removed = optimal_degree_removal(g, evaders, removable, budget)
            achieved = group_degree(remove_edges(g, removed), evaders)
            assert achieved == brute_force_degree(g, evaders, removable, budget)

    def test_disconnect_costs_shape(self):
        g, evaders, _ = two_evader_graph()
        costs = disconnect_costs(g, evaders, {(0, 2), (0, 3)})
        by_neighbor = {c.neighbor: c for c in costs}
        assert by_neighbor[2].edges == ((0, 2),)
        assert by_neighbor[2].affordable
        assert by_neighbor[3].edges == ((0, 3), (1, 3))
        assert not by_neighbor[3].affordable


class TestSteps:
    def test_internal_picks_intra_edges_only(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (2, 4)])
        evaders = {0, 1, 2}
        removable = default_removable(g, evaders)
        seen = set()
        for seed in range(60):
            e = internal_step(g, evaders, removable, Random(seed))
            seen.add(e)
        assert seen == {(0, 1), (0, 2), (1, 2)}

    def test_internal_none_for_independent_set(self):
        g = star_graph(4)
        evaders = {1, 2}
        assert internal_step(g, evaders, default_removable(g, evaders), Random(0)) is None

    def test_internal_none_when_pool_is_boundary_only(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3)])
        assert internal_step(g, {0, 1}, {(0, 2), (1, 3)}, Random(0)) is None

    def test_random_singleton_pool(self):
        g = star_graph(4)
        assert random_step(g, {0}, {(0, 2)}, Random(0)) == (0, 2)

    def test_random_empty_pool(self):
        g = star_graph(4)
        assert random_step(g, {0}, set(), Random(0)) is None

    def test_random_step_is_uniform(self):
        g = star_graph(4)
        removable = default_removable(g, {0})
        assert len(removable) == 4
        rng = Random(99)
        counts = {e: 0 for e in removable}
        draws = 10_000
        for _ in range(draws):
            counts[random_step(g, {0}, removable, rng)] += 1
        # 3 sigma around p = 1/4
        sigma = (0.25 * 0.75 / draws) ** 0.5
        for c in counts.values():
            assert abs(c / draws - 0.25) < 3 * sigma

    def test_shortcut_prefers_the_hub(self):
        # evader 0 touches hub 1 (center of a 5-leaf star) and leaf 2
        edges = [(0, 1), (0, 2)] + [(1, v) for v in range(2, 7)]
        g = Graph.from_edges(7, edges)
        removable = {(0, 1), (0, 2)}
        assert shortcut_step(g, {0}, removable) == (0, 1)

    def test_shortcut_single_boundary_edge(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert shortcut_step(g, {0}, {(0, 1)}) == (0, 1)

    def test_shortcut_none_without_boundary_edges(self):
        g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3)])
        assert shortcut_step(g, {0, 1}, {(0, 1)}) is None

    def test_shortcut_penalizes_unreachable_nodes(self):
        # neighbor 1 reaches a pendant, neighbor 2 is isolated once evader 0 leaves
        g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3)])
        assert shortcut_step(g, {0}, {(0, 1), (0, 2)}) == (0, 1)

    def test_step_exhaustion_means_no_candidate_remains(self):
        rng = Random(8)
        g = random_graph(rng, 10, 0.4)
        evaders = frozenset({0, 1, 2})
        removable = default_removable(g, evaders)
        current = g
        while True:
            e = internal_step(current, evaders, removable, rng)
            if e is None:
                break
            current = remove_edges(current, [e])
        assert not [
            e
            for e in removable
            if e[0] in evaders and e[1] in evaders and current.has_edge(*e)
        ]

    def test_random_exhaustion_empties_the_pool(self):
        rng = Random(9)
        g = random_graph(rng, 10, 0.4)
        evaders = frozenset({0, 1})
        removable = default_removable(g, evaders)
        current = g
        while True:
            e = random_step(current, evaders, removable, rng)
            if e is None:
                break
            current = remove_edges(current, [e])
        assert not [e for e in removable if current.has_edge(*e)]

    def test_shortcut_exhaustion_leaves_no_boundary_edge(self):
        rng = Random(10)
        g = random_graph(rng, 10, 0.4)
        evaders = frozenset({0, 1})
        removable = default_removable(g, evaders)
        current = g
        while True:
            e = shortcut_step(current, evaders, removable)
            if e is None:
                break
            current = remove_edges(current, [e])
        assert not [
            e
            for e in removable
            if current.has_edge(*e) and (e[0] in evaders) != (e[1] in evaders)
        ]


class TestExecuteStrategy:
    def instance(self, budget=3):
        g, evaders, removable = two_evader_graph()
        return HidingInstance(g, evaders, removable, budget=budget)

    def test_zero_budget_changes_nothing(self):
        inst = self.instance(budget=0)
        for strategy in ("optimal_degree", "internal", "random", "shortcut"):
            outcome = execute_strategy(inst, strategy, seed=5)
            assert outcome.removed == ()
            assert outcome.scores_after == outcome.scores_before

    def test_internal_on_triangle_leaves_degree_alone(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (2, 4)])
        evaders = frozenset({0, 1, 2})
        removable = frozenset({(0, 1), (1, 2), (0, 2)})
        inst = HidingInstance(g, evaders, removable, budget=3)
        outcome = execute_strategy(inst, "internal", seed=1)
        assert sorted(outcome.removed) == [(0, 1), (0, 2), (1, 2)]
        assert outcome.scores_after["degree"] == outcome.scores_before["degree"]
        assert outcome.scores_after["closeness"] == outcome.scores_before["closeness"]

    def test_optimal_degree_hits_zero_with_full_budget(self):
        outcome = execute_strategy(self.instance(budget=3), "optimal_degree")
        assert outcome.scores_after["degree"] == 0.0

    def test_budget_safety_and_pool_containment(self):
        rng = Random(31)
        for seed in range(10):
            n = rng.randint(6, 14)
            g = random_graph(rng, n, 0.4)
            evaders = frozenset(rng.sample(range(n), 3))
            removable = default_removable(g, evaders)
            budget = rng.randint(0, 4)
            inst = HidingInstance(g, evaders, removable, budget=budget)
            for strategy in ("optimal_degree", "internal", "random", "shortcut"):
                outcome = execute_strategy(inst, strategy, seed=seed)
                assert len(outcome.removed) <= budget
                assert set(outcome.removed) <= removable
                assert len(set(outcome.removed)) == len(outcome.removed)

    def test_deterministic_given_seed(self):
        inst = self.instance()
        for strategy in ("optimal_degree", "internal", "random", "shortcut"):
            a = execute_strategy(inst, strategy, seed=123)
            b = execute_strategy(inst, strategy, seed=123)
            assert a.removed == b.removed
            assert a.scores_after == b.scores_after

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            execute_strategy(self.instance(), "clever")


class TestInstanceValidation:
    def test_removable_must_touch_evaders(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(ValueError, match="touches no evader"):
            HidingInstance(g, frozenset({0}), frozenset({(2, 3)}), budget=1)

    def test_removable_must_exist(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(ValueError, match="not present"):
            HidingInstance(g, frozenset({0}), frozenset({(0, 2)}), budget=1)

    def test_evaders_strict_subset(self):
        g = Graph.from_edges(2, [(0, 1)])
        with pytest.raises(ValueError):
            HidingInstance(g, frozenset({0, 1}), frozenset(), budget=1)
        with pytest.raises(ValueError):
            HidingInstance(g, frozenset(), frozenset(), budget=1)


class TestBruteForce:
    def test_degree_matches_greedy_on_random_instances(self):
        rng = Random(77)
        for _ in range(15):
            n = rng.randint(5, 12)
            g = random_graph(rng, n, 0.4)
            evaders = frozenset(rng.sample(range(n), rng.randint(1, 3)))
            removable = default_removable(g, evaders)
            if len(removable) > 10:
                removable = frozenset(sorted(removable)[:10])
            budget = rng.randint(0, 4)
            inst = HidingInstance(
                g, evaders, removable, measure=CentralityMeasure("degree"), budget=budget
            )
            _, value = brute_force_optimal(inst)
            greedy = optimal_degree_removal(g, evaders, removable, budget)
            assert value == group_degree(remove_edges(g, greedy), evaders)

    def test_clique_gadget_closeness_optimum(self):
        base = complete_graph(3)
        gadget, probe, _, removable = clique_gadget(base)
        inst = HidingInstance(
            gadget,
            frozenset({probe}),
            removable,
            measure=CentralityMeasure("closeness"),
            budget=3,
        )
        best_set, best_value = brute_force_optimal(inst)
        n = gadget.node_count
        expected = (n - 1) / (3 + 2 * 3 + 1 + 3 + 3)
        assert best_value == pytest.approx(expected, abs=1e-12)
        assert sorted(best_set) == sorted(removable)

    def test_full_budget_degree_reaches_zero(self):
        g, evaders, removable = two_evader_graph()
        inst = HidingInstance(
            g, evaders, removable, measure=CentralityMeasure("degree"), budget=5
        )
        best_set, best_value = brute_force_optimal(inst)
        assert best_value == 0.0
        assert len(best_set) == 3

    def test_cap_exceeded(self):
        g = star_graph(30)
        removable = default_removable(g, {0})
        inst = HidingInstance(
            g, frozenset({0}), removable, measure=CentralityMeasure("degree"), budget=20
        )
        with pytest.raises(EnumerationCapExceeded):
            brute_force_optimal(inst, subset_cap=1000)

    def test_requires_measure_and_budget(self):
        g, evaders, removable = two_evader_graph()
        with pytest.raises(ValueError):
            brute_force_optimal(HidingInstance(g, evaders, removable, budget=1))
        with pytest.raises(ValueError):
            brute_force_optimal(
                HidingInstance(g, evaders, removable, measure=CentralityMeasure("degree"))
            )


class TestSolvers:
    def test_trivial_threshold_needs_no_removal(self):
        g, evaders, removable = two_evader_graph()
        before = group_degree(g, evaders)
        inst = HidingInstance(
            g, evaders, removable, measure=CentralityMeasure("degree"),
            threshold=before, budget=2,
        )
        assert solve_group_hiding(inst) == ()
        assert solve_minimum_group_hiding(inst) == ()

    def test_insufficient_budget_returns_none(self):
        g, evaders, removable = two_evader_graph()
        inst = HidingInstance(
            g, evaders, removable, measure=CentralityMeasure("degree"),
            threshold=0.0, budget=2,
        )
        assert solve_group_hiding(inst) is None

    def test_minimum_finds_three_edge_set(self):
        g, evaders, removable = two_evader_graph()
        inst = HidingInstance(
            g, evaders, removable, measure=CentralityMeasure("degree"), threshold=0.0
        )
        result = solve_minimum_group_hiding(inst)
        assert result is not None and len(result) == 3

    def test_unreachable_threshold_returns_none(self):
        g, evaders, removable = two_evader_graph()
        inst = HidingInstance(
            g, evaders, removable, measure=CentralityMeasure("degree"), threshold=-1.0
        )
        assert solve_minimum_group_hiding(inst) is None

    def test_multiway_cut_gadget_betweenness(self):
        # base graph: star with 3 terminal leaves; a 2-edge cut separates them
        base = star_graph(3)
        gadget, evaders, removable = multiway_cut_gadget(base, {1, 2, 3})
        inst = HidingInstance(
            gadget, evaders, removable,
            measure=CentralityMeasure("betweenness"), threshold=0.0, budget=2,
        )
        result = solve_group_hiding(inst)
        assert result is not None and len(result) <= 2
        after = remove_edges(gadget, result)
        assert group_betweenness_naive(after, evaders) == 0.0

    def test_minimum_is_no_larger_than_any_budgeted_solution(self):
        rng = Random(13)
        g = random_graph(rng, 9, 0.4)
        evaders = frozenset({0, 1})
        removable = default_removable(g, evaders)
        measure = gedwalk_measure(0.25, 10)
        before = 0.6 * group_ged_walk(g, evaders, 0.25, 10)
        base = HidingInstance(g, evaders, removable, measure=measure, threshold=before)
        minimal = solve_minimum_group_hiding(base)
        assert minimal is not None
        for b in range(len(removable) + 1):
            inst = HidingInstance(
                g, evaders, removable, measure=measure, threshold=before, budget=b
            )
            found = solve_group_hiding(inst)
            if found is not None:
                assert len(minimal) <= len(found)
