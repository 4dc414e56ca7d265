"""Command-line front end: generate networks, pick groups, measure, hide."""

from __future__ import annotations

import argparse
import sys
from random import Random

from .centrality import (
    DEFAULT_WALK_LENGTH,
    MEASURE_KINDS,
    CentralityMeasure,
    default_alpha,
    gedwalk_measure,
)
from .generators import MODEL_KINDS, ModelSpec, build_model
from .graph import Graph, dump_edge_list, giant_component, load_edge_list
from .groups import SELECTION_KINDS, SelectionCriterion, default_removable, select_group
from .hiding import (
    DEFAULT_SUBSET_CAP,
    STRATEGIES,
    HidingInstance,
    brute_force_optimal,
    execute_strategy,
    score_measures,
)
from .harness import (
    OPTIMALITY_CSV_FIELDS,
    RECORD_CSV_FIELDS,
    config_from_options,
    parse_config_file,
    run_experiment,
    run_optimality_comparison,
    summarize,
    write_run_outputs,
)


def _load_graph(path: str, use_giant: bool) -> Graph:
    with open(path, "r", encoding="utf8") as fh:
        g = load_edge_list(fh)
    return giant_component(g) if use_giant else g


def _resolve_group(g: Graph, text: str) -> frozenset[int]:
    index = g.label_index()
    members = []
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        if token not in index:
            raise SystemExit(f"error: node label {token!r} not found in graph")
        members.append(index[token])
    if not members:
        raise SystemExit("error: empty group")
    return frozenset(members)


def _walk_params(g: Graph, args) -> tuple[float, int]:
    if args.ged_alpha == "auto":
        alpha = default_alpha(g) if g.edge_count else 1.0
    else:
        alpha = float(args.ged_alpha)
    return alpha, args.ged_max_length


def _add_graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="edge-list file")
    p.add_argument(
        "--giant-component",
        action="store_true",
        help="restrict to the largest connected component after loading",
    )


def _add_walk_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ged-alpha", default="auto", help="walk decay, or 'auto' for 1/max-degree")
    p.add_argument("--ged-max-length", type=int, default=DEFAULT_WALK_LENGTH)


def cmd_generate(args) -> int:
    spec = ModelSpec(args.model, args.nodes, args.avg_degree, args.rewire_p)
    g = build_model(spec, Random(args.seed))
    with open(args.out, "w", encoding="utf8") as fh:
        fh.write(f"# {spec.describe()} seed={args.seed}\n")
        dump_edge_list(g, fh)
    print(f"wrote {g.node_count} nodes, {g.edge_count} edges to {args.out}")
    return 0


def cmd_select_group(args) -> int:
    g = _load_graph(args.input, args.giant_component)
    criterion = SelectionCriterion(args.selection, (args.cell_min, args.cell_max))
    members = select_group(g, criterion, args.group_size, Random(args.seed))
    print(" ".join(g.label_of(v) for v in sorted(members)))
    return 0


def cmd_measure(args) -> int:
    g = _load_graph(args.input, args.giant_component)
    group = _resolve_group(g, args.group)
    alpha, max_length = _walk_params(g, args)
    kinds = MEASURE_KINDS if args.measure == "all" else (args.measure,)
    for kind, value in score_measures(g, group, kinds, alpha, max_length).items():
        print(f"{kind} {value:.12g}")
    return 0


def cmd_hide(args) -> int:
    g = _load_graph(args.input, args.giant_component)
    group = _resolve_group(g, args.group)
    removable = default_removable(g, group)
    instance = HidingInstance(g, group, removable, budget=args.budget)
    alpha, max_length = _walk_params(g, args)
    outcome = execute_strategy(
        instance, args.strategy, seed=args.seed, ged_alpha=alpha, ged_max_length=max_length
    )
    for u, v in outcome.removed:
        print(f"removed {g.label_of(u)} {g.label_of(v)}")
    for kind in MEASURE_KINDS:
        before = outcome.scores_before[kind]
        after = outcome.scores_after[kind]
        print(f"{kind} before={before:.12g} after={after:.12g} delta={after - before:.12g}")
    return 0


def cmd_brute_force(args) -> int:
    g = _load_graph(args.input, args.giant_component)
    group = _resolve_group(g, args.group)
    removable = default_removable(g, group)
    alpha, max_length = _walk_params(g, args)
    if args.measure == "gedwalk":
        measure = gedwalk_measure(alpha, max_length)
    else:
        measure = CentralityMeasure(args.measure)
    instance = HidingInstance(g, group, removable, measure=measure, budget=args.budget)
    best_set, best_value = brute_force_optimal(instance, subset_cap=args.cap)
    for u, v in best_set:
        print(f"remove {g.label_of(u)} {g.label_of(v)}")
    print(f"optimal {args.measure} value {best_value:.12g} with {len(best_set)} removals")
    return 0


def _config_from_args(args) -> "object":
    options = parse_config_file(args.config) if args.config else {}
    overrides = {
        "seed": args.seed,
        "repetitions": args.repetitions,
        "groups_per_network": args.groups_per_network,
        "group_size": args.group_size,
        "budget": args.budget,
        "network": args.network,
        "n": args.nodes,
        "avg_degree": args.avg_degree,
        "rewire_p": args.rewire_p,
        "dataset": args.dataset,
        "selection": args.selection,
        "strategies": args.strategies,
        "measures": args.measures,
    }
    for key, value in overrides.items():
        if value is not None:
            options[key] = str(value)
    return config_from_options(options)


def _add_experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--out", required=True, help="run output directory")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--repetitions", type=int, default=None)
    p.add_argument("--groups-per-network", type=int, default=None)
    p.add_argument("--group-size", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--network", choices=MODEL_KINDS + ("dataset",), default=None)
    p.add_argument("--nodes", type=int, default=None)
    p.add_argument("--avg-degree", type=int, default=None)
    p.add_argument("--rewire-p", type=float, default=None)
    p.add_argument("--dataset", default=None)
    p.add_argument("--selection", choices=SELECTION_KINDS, default=None)
    p.add_argument("--strategies", default=None, help="comma-separated strategy names")
    p.add_argument("--measures", default=None, help="comma-separated measure kinds")


def cmd_experiment(args) -> int:
    config = _config_from_args(args)
    records = run_experiment(config)
    summary = summarize(records, ("network", "measure", "strategy"))
    charts = {
        kind: summarize(
            [r for r in records if r.measure == kind], ("network", "strategy")
        )
        for kind in config.measures
    }
    write_run_outputs(args.out, config, records, RECORD_CSV_FIELDS, summary, charts)
    print(f"{len(records)} records written to {args.out}")
    return 0


def cmd_compare_optimal(args) -> int:
    config = _config_from_args(args)
    records = run_optimality_comparison(config, subset_cap=args.cap)
    summary = summarize(records, ("network", "measure", "strategy"), value_field="ratio")
    charts = {
        kind: summarize(
            [r for r in records if r.measure == kind],
            ("network", "strategy"),
            value_field="ratio",
        )
        for kind in config.measures
    }
    write_run_outputs(args.out, config, records, OPTIMALITY_CSV_FIELDS, summary, charts)
    print(f"{len(records)} comparison records written to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grouphide",
        description="Group centrality measures and edge-removal hiding strategies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a random network as an edge list")
    p.add_argument("--model", choices=MODEL_KINDS, required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--avg-degree", type=int, required=True)
    p.add_argument("--rewire-p", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("select-group", help="pick an evader group from a network")
    _add_graph_input(p)
    p.add_argument("--selection", choices=SELECTION_KINDS, required=True)
    p.add_argument("--group-size", type=int, required=True)
    p.add_argument("--cell-min", type=int, default=3)
    p.add_argument("--cell-max", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_select_group)

    p = sub.add_parser("measure", help="evaluate group centrality measures")
    _add_graph_input(p)
    p.add_argument("--group", required=True, help="comma-separated node labels")
    p.add_argument("--measure", choices=MEASURE_KINDS + ("all",), default="all")
    _add_walk_flags(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("hide", help="run one hiding strategy on one group")
    _add_graph_input(p)
    p.add_argument("--group", required=True)
    p.add_argument("--strategy", choices=STRATEGIES, required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_walk_flags(p)
    p.set_defaults(func=cmd_hide)

    p = sub.add_parser("brute-force", help="exhaustive optimal removal search")
    _add_graph_input(p)
    p.add_argument("--group", required=True)
    p.add_argument("--measure", choices=MEASURE_KINDS, required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_SUBSET_CAP)
    _add_walk_flags(p)
    p.set_defaults(func=cmd_brute_force)

    p = sub.add_parser("experiment", help="run a configured hiding campaign")
    _add_experiment_flags(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("compare-optimal", help="compare strategies to brute-force optima")
    _add_experiment_flags(p)
    p.add_argument("--cap", type=int, default=DEFAULT_SUBSET_CAP)
    p.set_defaults(func=cmd_compare_optimal)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
