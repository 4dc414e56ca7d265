from random import Random

import pytest

from grouphide import (
    SelectionCriterion,
    default_removable,
    select_cells,
    select_dense,
    select_group,
    select_scattered,
)
from grouphide.groups import draw_cell_sizes
from helpers import complete_graph, cycle_graph, disjoint_union, random_connected_graph, star_graph


class ScriptedRng:
    """Duck-typed rng whose randint draws come from a fixed script."""

    def __init__(self, randints):
        self.randints = list(randints)

    def randint(self, low, high):
        value = self.randints.pop(0)
        assert low <= value <= high
        return value


class TestSelectDense:
    def test_complete_graph_any_triple(self):
        g = complete_graph(5)
        chosen = select_dense(g, 3, Random(0))
        assert len(chosen) == 3 and chosen <= set(g.nodes)

    def test_star_growth_reaches_center(self):
        # the only node with an edge into a leaf seed is the center
        g = star_graph(4)
        for seed in range(40):
            chosen = select_dense(g, 2, Random(seed))
            assert 0 in chosen

    def test_single_member_is_uniform(self):
        g = complete_graph(5)
        counts = [0] * 5
        rng = Random(5)
        draws = 10_000
        for _ in range(draws):
            (v,) = select_dense(g, 1, rng)
            counts[v] += 1
        sigma = (0.2 * 0.8 / draws) ** 0.5
        for c in counts:
            assert abs(c / draws - 0.2) < 3 * sigma

    def test_out_of_range_k(self):
        g = complete_graph(4)
        with pytest.raises(ValueError):
            select_dense(g, 0, Random(0))
        with pytest.raises(ValueError):
            select_dense(g, 4, Random(0))

    def test_connected_host_gives_connected_group(self):
        rng = Random(3)
        for _ in range(10):
            g = random_connected_graph(rng, 12, 0.15)
            chosen = sorted(select_dense(g, 5, rng))
            # BFS within the chosen set
            seen = {chosen[0]}
            frontier = [chosen[0]]
            member = set(chosen)
            while frontier:
                v = frontier.pop()
                for w in g.neighbors(v):
                    if w in member and w not in seen:
                        seen.add(w)
                        frontier.append(w)
            assert seen == member

    def test_stalled_growth_reseeds_on_disconnected_host(self):
        g = disjoint_union(complete_graph(3), complete_graph(3))
        for seed in range(20):
            chosen = select_dense(g, 4, Random(seed))
            assert len(chosen) == 4


class TestDrawCellSizes:
    def test_single_draw_covers_k(self):
        assert draw_cell_sizes(4, (3, 7), ScriptedRng([4])) == [4]

    def test_last_cell_truncated(self):
        assert draw_cell_sizes(10, (3, 7), ScriptedRng([4, 7])) == [4, 6]

    def test_sizes_sum_to_k(self):
        rng = Random(1)
        for k in (5, 17, 50):
            assert sum(draw_cell_sizes(k, (3, 7), rng)) == k


class TestSelectCells:
    def test_exact_total(self):
        rng = Random(9)
        g = random_connected_graph(rng, 60, 0.05)
        for k in (4, 10, 23):
            chosen = select_cells(g, k, rng)
            assert len(chosen) == k

    def test_cells_do_not_overlap_but_count(self):
        g = complete_graph(12)
        chosen = select_cells(g, 9, Random(4), bounds=(3, 3))
        assert len(chosen) == 9

    def test_criterion_validation(self):
        with pytest.raises(ValueError):
            SelectionCriterion("cells", (1, 4))
        with pytest.raises(ValueError):
            SelectionCriterion("cells", (5, 4))
        with pytest.raises(ValueError):
            SelectionCriterion("clusters")


class TestSelectScattered:
    def test_all_but_one(self):
        g = complete_graph(6)
        chosen = select_scattered(g, 5, Random(0))
        assert len(chosen) == 5

    def test_uniform_single_pick(self):
        g = complete_graph(5)
        counts = [0] * 5
        rng = Random(12)
        draws = 10_000
        for _ in range(draws):
            (v,) = select_scattered(g, 1, rng)
            counts[v] += 1
        sigma = (0.2 * 0.8 / draws) ** 0.5
        for c in counts:
            assert abs(c / draws - 0.2) < 3 * sigma

    def test_zero_k_errors(self):
        with pytest.raises(ValueError):
            select_scattered(complete_graph(4), 0, Random(0))


def test_select_group_dispatch():
    g = complete_graph(8)
    for kind in ("dense", "cells", "scattered"):
        criterion = SelectionCriterion(kind)
        chosen = select_group(g, criterion, 4, Random(2))
        assert len(chosen) == 4 and chosen <= set(g.nodes)


class TestDefaultRemovable:
    def test_star_center_owns_everything(self):
        g = star_graph(4)
        assert default_removable(g, {0}) == {(0, 1), (0, 2), (0, 3), (0, 4)}

    def test_isolated_evader(self):
        g = disjoint_union(complete_graph(3), complete_graph(1))
        assert default_removable(g, {3}) == frozenset()

    def test_cycle_member(self):
        assert default_removable(cycle_graph(5), {0}) == {(0, 1), (0, 4)}

    def test_subset_of_incident_edges(self):
        rng = Random(6)
        g = random_connected_graph(rng, 15, 0.2)
        evaders = {1, 4, 7}
        removable = default_removable(g, evaders)
        for u, v in removable:
            assert g.has_edge(u, v)
            assert u in evaders or v in evaders
        for u, v in g.edges():
            if u in evaders or v in evaders:
                assert (u, v) in removable
