"""Group centrality measures and edge-removal strategies for hiding node groups."""

from .graph import (
    DistanceMap,
    EdgeListParseError,
    Graph,
    connected_components,
    dump_edge_list,
    edge,
    giant_component,
    load_edge_list,
    max_degree,
    multi_source_bfs,
    neighbors_of_group,
    remove_edges,
    remove_nodes,
)
from .centrality import (
    BETWEENNESS,
    CLOSENESS,
    DEGREE,
    GED_WALK,
    MEASURE_KINDS,
    CentralityMeasure,
    PathCounts,
    WalkTally,
    default_alpha,
    evaluate,
    gedwalk_measure,
    group_betweenness,
    group_betweenness_naive,
    group_closeness,
    group_degree,
    group_ged_walk,
    group_ged_walk_exact,
    shortest_path_counts,
    walk_tally,
)
from .hiding import (
    INTERNAL,
    OPTIMAL_DEGREE,
    RANDOM,
    SHORTCUT,
    STRATEGIES,
    DisconnectCost,
    EnumerationCapExceeded,
    HidingInstance,
    StrategyOutcome,
    brute_force_optimal,
    disconnect_costs,
    execute_strategy,
    internal_step,
    optimal_degree_removal,
    random_step,
    shortcut_step,
    solve_group_hiding,
    solve_minimum_group_hiding,
)
from .groups import (
    SELECTION_KINDS,
    SelectionCriterion,
    default_removable,
    select_cells,
    select_dense,
    select_group,
    select_scattered,
)
from .generators import (
    MODEL_KINDS,
    ModelSpec,
    barabasi_albert,
    build_model,
    clique_gadget,
    erdos_renyi,
    multiway_cut_gadget,
    watts_strogatz,
)
from .harness import (
    ExperimentConfig,
    ExperimentRecord,
    OptimalityRecord,
    SummaryRow,
    derive_seed,
    emit_bar_chart,
    emit_csv,
    run_experiment,
    run_optimality_comparison,
    summarize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
