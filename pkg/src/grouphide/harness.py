"""Experiment pipeline: seeded campaigns, summaries, CSV tables, bar charts."""

from __future__ import annotations

import csv
import hashlib
import math
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Sequence

from .centrality import DEFAULT_WALK_LENGTH, MEASURE_KINDS, default_alpha, gedwalk_measure
from .generators import ModelSpec, build_model
from .graph import Graph, giant_component, load_edge_list
from .groups import SelectionCriterion, default_removable, select_group
from .hiding import (
    DEFAULT_SUBSET_CAP,
    STRATEGIES,
    CentralityMeasure,
    HidingInstance,
    brute_force_optimal,
    evaluate,
    execute_strategy,
)
from random import Random


def derive_seed(base_seed: int, *parts: object) -> int:
    """Stable per-run seed: base xor a hash of the run coordinates."""
    text = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf8")).digest()
    return (int(base_seed) ^ int.from_bytes(digest[:8], "big")) % (1 << 63)


@dataclass(frozen=True)
class ExperimentConfig:
    model: ModelSpec | None = None
    dataset: str | None = None
    selection: SelectionCriterion = SelectionCriterion("dense")
    group_size: int = 50
    budget: int | None = None  # None -> group_size
    strategies: tuple[str, ...] = STRATEGIES
    measures: tuple[str, ...] = MEASURE_KINDS
    repetitions: int = 20
    groups_per_network: int = 10
    base_seed: int = 0
    ged_alpha: float | None = None  # None -> 1/max_degree of each network
    ged_max_length: int = DEFAULT_WALK_LENGTH

    def __post_init__(self):
        if (self.model is None) == (self.dataset is None):
            raise ValueError("configure exactly one of model and dataset")
        if self.repetitions < 1 or self.groups_per_network < 1:
            raise ValueError("repetitions and groups_per_network must be >= 1")
        if self.group_size < 1:
            raise ValueError("group_size must be >= 1")
        if not self.strategies:
            raise ValueError("at least one strategy is required")
        for s in self.strategies:
            if s not in STRATEGIES:
                raise ValueError(f"unknown strategy {s!r}")
        if not self.measures:
            raise ValueError("at least one measure is required")
        for m in self.measures:
            if m not in MEASURE_KINDS:
                raise ValueError(f"unknown measure {m!r}")
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be non-negative")

    @property
    def effective_budget(self) -> int:
        return self.group_size if self.budget is None else self.budget

    def network_name(self) -> str:
        if self.model is not None:
            return self.model.describe()
        return Path(self.dataset).stem


@dataclass
class ExperimentRecord:
    network: str
    selection: str
    strategy: str
    measure: str
    repetition: int
    group_index: int
    seed: int
    value_before: float
    value_after: float
    delta: float
    removed_count: int
    wall_time: float = field(default=0.0, compare=False)


@dataclass
class OptimalityRecord:
    network: str
    selection: str
    strategy: str
    measure: str
    repetition: int
    group_index: int
    value_before: float
    delta: float
    optimal_delta: float
    ratio: float
    removed_count: int
    optimal_removed_count: int


@dataclass(frozen=True)
class SummaryRow:
    group_by: tuple[str, ...]
    key: tuple[str, ...]
    mean_delta: float
    ci95_half_width: float
    n: int
    single_sample: bool


# wall_time is measured, not derived from the seed, so it stays out of the
# CSV to keep equal-seed runs byte-identical
RECORD_CSV_FIELDS = (
    "network",
    "selection",
    "strategy",
    "measure",
    "repetition",
    "group_index",
    "seed",
    "value_before",
    "value_after",
    "delta",
    "removed_count",
)

OPTIMALITY_CSV_FIELDS = (
    "network",
    "selection",
    "strategy",
    "measure",
    "repetition",
    "group_index",
    "value_before",
    "delta",
    "optimal_delta",
    "ratio",
    "removed_count",
    "optimal_removed_count",
)


def load_dataset(path: str | Path) -> Graph:
    """Read an edge-list file and keep the giant component."""
    with open(path, "r", encoding="utf8") as fh:
        g = load_edge_list(fh)
    return giant_component(g)


def _network_for_rep(config: ExperimentConfig, rep: int, cache: dict) -> Graph:
    if config.model is not None:
        rng = Random(derive_seed(config.base_seed, "network", rep))
        return build_model(config.model, rng)
    if "dataset" not in cache:
        cache["dataset"] = load_dataset(config.dataset)
    return cache["dataset"]


def _frozen_alpha(config: ExperimentConfig, g: Graph) -> float:
    if config.ged_alpha is not None:
        return config.ged_alpha
    return default_alpha(g) if g.edge_count else 1.0


def run_experiment(config: ExperimentConfig) -> list[ExperimentRecord]:
    """Execute the configured campaign and return one record per
    (repetition, group, strategy, measure).

    Model sources draw a fresh network per repetition; dataset sources reuse
    the loaded graph and redraw groups.  Every run seed derives from the
    base seed and the run coordinates, so equal configs give equal records.
    """
    records: list[ExperimentRecord] = []
    cache: dict = {}
    name = config.network_name()
    budget = config.effective_budget
    for rep in range(config.repetitions):
        g = _network_for_rep(config, rep, cache)
        if config.group_size >= g.node_count:
            raise ValueError("group_size must be smaller than the network")
        alpha = _frozen_alpha(config, g)
        for gi in range(config.groups_per_network):
            grp_rng = Random(derive_seed(config.base_seed, "group", rep, gi))
            evaders = select_group(g, config.selection, config.group_size, grp_rng)
            removable = default_removable(g, evaders)
            instance = HidingInstance(g, evaders, removable, budget=budget)
            for strategy in config.strategies:
                seed = derive_seed(config.base_seed, "strategy", rep, gi, strategy)
                t0 = time.perf_counter()
                outcome = execute_strategy(
                    instance,
                    strategy,
                    seed=seed,
                    score_kinds=config.measures,
                    ged_alpha=alpha,
                    ged_max_length=config.ged_max_length,
                )
                wall = time.perf_counter() - t0
                for kind in config.measures:
                    before = outcome.scores_before[kind]
                    after = outcome.scores_after[kind]
                    records.append(
                        ExperimentRecord(
                            network=name,
                            selection=config.selection.kind,
                            strategy=strategy,
                            measure=kind,
                            repetition=rep,
                            group_index=gi,
                            seed=seed,
                            value_before=before,
                            value_after=after,
                            delta=after - before,
                            removed_count=len(outcome.removed),
                            wall_time=wall,
                        )
                    )
    return records


def run_optimality_comparison(
    config: ExperimentConfig, *, subset_cap: int = DEFAULT_SUBSET_CAP
) -> list[OptimalityRecord]:
    """Per group and measure, compare every strategy's centrality drop to the
    exhaustive-search optimum.

    The ratio is strategy delta over optimal delta; when both are zero the
    strategy is as good as possible, so the ratio is 1, and an unachievable
    comparison (optimum zero, strategy nonzero) reports 0.
    """
    records: list[OptimalityRecord] = []
    cache: dict = {}
    name = config.network_name()
    budget = config.effective_budget
    for rep in range(config.repetitions):
        g = _network_for_rep(config, rep, cache)
        if config.group_size >= g.node_count:
            raise ValueError("group_size must be smaller than the network")
        alpha = _frozen_alpha(config, g)
        for gi in range(config.groups_per_network):
            grp_rng = Random(derive_seed(config.base_seed, "group", rep, gi))
            evaders = select_group(g, config.selection, config.group_size, grp_rng)
            removable = default_removable(g, evaders)
            base_instance = HidingInstance(g, evaders, removable, budget=budget)
            outcomes = {}
            for strategy in config.strategies:
                seed = derive_seed(config.base_seed, "strategy", rep, gi, strategy)
                outcomes[strategy] = execute_strategy(
                    base_instance,
                    strategy,
                    seed=seed,
                    score_kinds=config.measures,
                    ged_alpha=alpha,
                    ged_max_length=config.ged_max_length,
                )
            for kind in config.measures:
                measure = _measure_for(kind, alpha, config.ged_max_length)
                instance = replace(base_instance, measure=measure)
                before = evaluate(measure, g, evaders)
                optimal_set, optimal_value = brute_force_optimal(
                    instance, subset_cap=subset_cap
                )
                optimal_delta = optimal_value - before
                for strategy in config.strategies:
                    outcome = outcomes[strategy]
                    delta = outcome.scores_after[kind] - outcome.scores_before[kind]
                    records.append(
                        OptimalityRecord(
                            network=name,
                            selection=config.selection.kind,
                            strategy=strategy,
                            measure=kind,
                            repetition=rep,
                            group_index=gi,
                            value_before=before,
                            delta=delta,
                            optimal_delta=optimal_delta,
                            ratio=_delta_ratio(delta, optimal_delta),
                            removed_count=len(outcome.removed),
                            optimal_removed_count=len(optimal_set),
                        )
                    )
    return records


def _measure_for(kind: str, alpha: float, max_length: int) -> CentralityMeasure:
    if kind == "gedwalk":
        return gedwalk_measure(alpha, max_length)
    return CentralityMeasure(kind)


def _delta_ratio(delta: float, optimal_delta: float) -> float:
    if optimal_delta == 0.0:
        return 1.0 if delta == 0.0 else 0.0
    return delta / optimal_delta


def summarize(
    records: Sequence, group_by: Sequence[str], *, value_field: str = "delta"
) -> list[SummaryRow]:
    """Mean and normal-approximation 95% CI of one field per grouping key."""
    if not records:
        raise ValueError("no records to summarize")
    keys = tuple(group_by)
    buckets: dict[tuple[str, ...], list[float]] = {}
    for rec in records:
        key = tuple(str(getattr(rec, k)) for k in keys)
        buckets.setdefault(key, []).append(float(getattr(rec, value_field)))
    rows = []
    for key in sorted(buckets):
        values = buckets[key]
        n = len(values)
        mean = sum(values) / n
        if n > 1:
            var = sum((v - mean) ** 2 for v in values) / (n - 1)
            half = 1.96 * math.sqrt(var) / math.sqrt(n)
        else:
            half = 0.0
        rows.append(
            SummaryRow(
                group_by=keys,
                key=key,
                mean_delta=mean,
                ci95_half_width=half,
                n=n,
                single_sample=(n == 1),
            )
        )
    return rows


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def emit_csv(rows: Sequence, path: str | Path, fields: Sequence[str]) -> None:
    """Write rows (dataclasses or mappings) as RFC-4180-style CSV with
    12-significant-digit floats; row order is the caller's, which must
    already be key-sorted."""
    with open(path, "w", encoding="utf8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            if isinstance(row, Mapping):
                get = row.__getitem__
            else:
                get = lambda name: getattr(row, name)  # noqa: E731
            writer.writerow(_format_cell(get(name)) for name in fields)


def summary_table(rows: Sequence[SummaryRow]) -> tuple[list[dict], list[str]]:
    """Flatten summary rows into dicts keyed by their grouping columns."""
    if not rows:
        return [], ["mean_delta", "ci95_half_width", "n", "single_sample"]
    key_cols = list(rows[0].group_by)
    fields = key_cols + ["mean_delta", "ci95_half_width", "n", "single_sample"]
    table = []
    for row in rows:
        rec = dict(zip(key_cols, row.key))
        rec.update(
            mean_delta=row.mean_delta,
            ci95_half_width=row.ci95_half_width,
            n=row.n,
            single_sample=row.single_sample,
        )
        table.append(rec)
    return table, fields


_PALETTE = ("#4878cf", "#ee854a", "#6acc65", "#d65f5f", "#956cb4", "#8c613c")


def emit_bar_chart(
    rows: Sequence[SummaryRow],
    path: str | Path,
    *,
    title: str = "",
    width: int = 640,
    height: int = 400,
) -> None:
    """Render grouped bars with 95% CI whiskers as a self-contained SVG.

    The first key component clusters bars along the x axis; the remaining
    components name the bar series.  Negative means extend below the zero
    baseline.
    """
    if not rows:
        raise ValueError("no rows to chart")
    clusters: list[str] = []
    series: list[str] = []
    for row in rows:
        c = row.key[0]
        s = ",".join(row.key[1:]) if len(row.key) > 1 else ""
        if c not in clusters:
            clusters.append(c)
        if s not in series:
            series.append(s)
    lo = min(0.0, min(r.mean_delta - r.ci95_half_width for r in rows))
    hi = max(0.0, max(r.mean_delta + r.ci95_half_width for r in rows))
    if lo == hi:
        lo, hi = -1.0, 1.0
    pad = 0.05 * (hi - lo)
    lo -= pad
    hi += pad
    margin_left, margin_right, margin_top, margin_bottom = 60, 20, 30, 50
    plot_w = width - margin_left - margin_right
    plot_h = height - margin_top - margin_bottom

    def y_of(value: float) -> float:
        return margin_top + (hi - value) / (hi - lo) * plot_h

    baseline_y = y_of(0.0)
    cluster_w = plot_w / len(clusters)
    bar_w = cluster_w * 0.8 / len(series)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white" stroke="none" class="background"/>',
    ]
    if title:
        parts.append(
            f'<text x="{width / 2:.1f}" y="18" text-anchor="middle" font-size="13">{title}</text>'
        )
    parts.append(
        f'<line class="baseline" x1="{margin_left}" y1="{baseline_y:.2f}" '
        f'x2="{width - margin_right}" y2="{baseline_y:.2f}" stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<line class="axis" x1="{margin_left}" y1="{margin_top}" '
        f'x2="{margin_left}" y2="{height - margin_bottom}" stroke="black" stroke-width="1"/>'
    )
    for tick in sorted({lo + pad, 0.0, hi - pad}):
        ty = y_of(tick)
        parts.append(
            f'<text x="{margin_left - 6}" y="{ty + 4:.2f}" text-anchor="end" '
            f'font-size="10">{tick:.3g}</text>'
        )
    for row in rows:
        ci = clusters.index(row.key[0])
        si = series.index(",".join(row.key[1:]) if len(row.key) > 1 else "")
        x = margin_left + ci * cluster_w + cluster_w * 0.1 + si * bar_w
        top = y_of(max(row.mean_delta, 0.0))
        bar_h = abs(y_of(row.mean_delta) - baseline_y)
        color = _PALETTE[si % len(_PALETTE)]
        parts.append(
            f'<rect class="bar" x="{x:.2f}" y="{top:.2f}" width="{bar_w * 0.9:.2f}" '
            f'height="{bar_h:.2f}" fill="{color}"/>'
        )
        cx = x + bar_w * 0.45
        y_up = y_of(row.mean_delta + row.ci95_half_width)
        y_dn = y_of(row.mean_delta - row.ci95_half_width)
        cap = bar_w * 0.25
        parts.append(
            f'<path class="whisker" d="M {cx:.2f} {y_up:.2f} L {cx:.2f} {y_dn:.2f} '
            f'M {cx - cap:.2f} {y_up:.2f} L {cx + cap:.2f} {y_up:.2f} '
            f'M {cx - cap:.2f} {y_dn:.2f} L {cx + cap:.2f} {y_dn:.2f}" '
            f'stroke="black" stroke-width="1" fill="none"/>'
        )
    for ci, name in enumerate(clusters):
        cx = margin_left + ci * cluster_w + cluster_w / 2
        parts.append(
            f'<text x="{cx:.2f}" y="{height - margin_bottom + 16}" text-anchor="middle" '
            f'font-size="10">{name}</text>'
        )
    for si, name in enumerate(series):
        if not name:
            continue
        lx = margin_left + 10
        ly = margin_top + 12 * (si + 1)
        color = _PALETTE[si % len(_PALETTE)]
        parts.append(f'<rect x="{lx}" y="{ly - 8}" width="8" height="8" fill="{color}"/>')
        parts.append(f'<text x="{lx + 12}" y="{ly}" font-size="10">{name}</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf8")


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Flat key=value lines; '#' starts a comment, blanks are skipped."""
    options: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        options[key.strip()] = value.strip()
    return options


_CONFIG_KEYS = (
    "network",
    "n",
    "avg_degree",
    "rewire_p",
    "dataset",
    "selection",
    "cell_min",
    "cell_max",
    "group_size",
    "budget",
    "strategies",
    "measures",
    "repetitions",
    "groups_per_network",
    "seed",
    "ged_alpha",
    "ged_max_length",
)


def config_from_options(options: Mapping[str, str]) -> ExperimentConfig:
    """Build an ExperimentConfig from flat string options (file or CLI)."""
    for key in options:
        if key not in _CONFIG_KEYS:
            raise ValueError(f"unknown config key {key!r}")
    get = options.get
    network = get("network", "ws")
    model = None
    dataset = None
    if network == "dataset":
        dataset = get("dataset")
        if not dataset:
            raise ValueError("network=dataset requires a dataset path")
    else:
        model = ModelSpec(
            kind=network,
            n=int(get("n", "1000")),
            avg_degree=int(get("avg_degree", "10")),
            rewire_p=float(get("rewire_p", "0.25")),
        )
    bounds = (int(get("cell_min", "3")), int(get("cell_max", "7")))
    selection = SelectionCriterion(get("selection", "dense"), bounds)
    ged_alpha_raw = get("ged_alpha", "auto")
    ged_alpha = None if ged_alpha_raw in ("auto", "") else float(ged_alpha_raw)
    budget_raw = get("budget", "")
    return ExperimentConfig(
        model=model,
        dataset=dataset,
        selection=selection,
        group_size=int(get("group_size", "50")),
        budget=int(budget_raw) if budget_raw else None,
        strategies=tuple(s for s in get("strategies", ",".join(STRATEGIES)).split(",") if s),
        measures=tuple(m for m in get("measures", ",".join(MEASURE_KINDS)).split(",") if m),
        repetitions=int(get("repetitions", "20")),
        groups_per_network=int(get("groups_per_network", "10")),
        base_seed=int(get("seed", "0")),
        ged_alpha=ged_alpha,
        ged_max_length=int(get("ged_max_length", str(DEFAULT_WALK_LENGTH))),
    )


def config_to_options(config: ExperimentConfig) -> dict[str, str]:
    """Resolved snapshot of a config as flat strings (inverse of parsing)."""
    options: dict[str, str] = {}
    if config.model is not None:
        options["network"] = config.model.kind
        options["n"] = str(config.model.n)
        options["avg_degree"] = str(config.model.avg_degree)
        options["rewire_p"] = format(config.model.rewire_p, "g")
    else:
        options["network"] = "dataset"
        options["dataset"] = str(config.dataset)
    options["selection"] = config.selection.kind
    options["cell_min"] = str(config.selection.cell_size_bounds[0])
    options["cell_max"] = str(config.selection.cell_size_bounds[1])
    options["group_size"] = str(config.group_size)
    options["budget"] = str(config.effective_budget)
    options["strategies"] = ",".join(config.strategies)
    options["measures"] = ",".join(config.measures)
    options["repetitions"] = str(config.repetitions)
    options["groups_per_network"] = str(config.groups_per_network)
    options["seed"] = str(config.base_seed)
    options["ged_alpha"] = "auto" if config.ged_alpha is None else format(config.ged_alpha, "g")
    options["ged_max_length"] = str(config.ged_max_length)
    return options


def write_run_outputs(
    out_dir: str | Path,
    config: ExperimentConfig,
    records: Sequence,
    record_fields: Sequence[str],
    summary_rows: Sequence[SummaryRow],
    chart_rows_by_measure: Mapping[str, Sequence[SummaryRow]] | None = None,
) -> None:
    """Write config snapshot, records CSV, summary CSV, and per-measure charts."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    options = config_to_options(config)
    snapshot = "\n".join(f"{k}={options[k]}" for k in sorted(options)) + "\n"
    (out / "config.txt").write_text(snapshot, encoding="utf8")
    emit_csv(records, out / "records.csv", record_fields)
    table, fields = summary_table(summary_rows)
    emit_csv(table, out / "summary.csv", fields)
    if chart_rows_by_measure:
        for kind, rows in chart_rows_by_measure.items():
            if rows:
                emit_bar_chart(rows, out / f"chart_{kind}.svg", title=kind)
