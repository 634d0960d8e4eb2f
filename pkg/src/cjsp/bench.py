"""Benchmark harness: direct order-k solving vs. the repetition baseline.

For every instance and order k the harness expands the instance,
anneals it with a batch of derived seeds, and compares the best result
against k times the instance's best-known order-1 makespan (the cost of
simply repeating an optimal one-consignment plan k times).  The gain
is reported as

    dif_percent = 100 * (baseline - sa_value) / baseline

which is positive when solving the cyclic problem directly beats the
repetition baseline.  Negative values are kept as-is: at order 1 the
annealer may simply miss the best-known value.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping

from .cyclic import expand
from .errors import EmptyReport, ZeroBaseline
from .instance import Instance
from .sa import SAConfig, anneal

#: Best-known order-1 makespans for the stock benchmark corpus.
BEST_KNOWN = {
    "abz6": 943.0,
    "ft06": 55.0,
    "ft10": 930.0,
    "ft20": 1165.0,
    "la01": 666.0,
    "la02": 655.0,
    "la03": 597.0,
    "la04": 590.0,
    "la05": 593.0,
    "la06": 926.0,
    "la07": 890.0,
    "la08": 863.0,
    "la09": 951.0,
    "la10": 958.0,
    "la11": 1222.0,
    "la12": 1039.0,
    "la13": 1150.0,
    "la14": 1292.0,
    "la15": 1207.0,
    "la16": 945.0,
    "la17": 784.0,
    "la18": 848.0,
    "la19": 842.0,
    "la20": 902.0,
    "la21": 1046.0,
    "Fig.1": 31.0,
    "sk": 657.55,
}


@dataclass(frozen=True)
class BestKnownRegistry:
    """Maps instance name to its best-known order-1 makespan."""

    values: Mapping[str, float]

    def __post_init__(self):
        for name, value in self.values.items():
            if value <= 0:
                raise ValueError(f"registry value for {name!r} must be positive, got {value}")

    @classmethod
    def default(cls) -> "BestKnownRegistry":
        return cls(dict(BEST_KNOWN))

    @classmethod
    def from_csv(cls, text: str) -> "BestKnownRegistry":
        values = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            name, _, value = line.partition(",")
            if not value:
                raise ValueError(f"registry line {lineno}: expected 'name,best1', got {raw!r}")
            try:
                values[name.strip()] = float(value)
            except ValueError:
                raise ValueError(f"registry line {lineno}: bad value {value!r}") from None
        return cls(values)

    def to_csv(self) -> str:
        lines = [f"{name},{_fmt_value(value)}" for name, value in sorted(self.values.items())]
        return "\n".join(lines) + "\n"

    def get(self, name: str) -> float | None:
        return self.values.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self.values


def compute_dif(baseline: float, sa_value: float) -> float:
    """Percentage improvement of sa_value over the repetition baseline."""
    if baseline <= 0:
        raise ZeroBaseline(f"baseline must be positive, got {baseline}")
    return 100.0 * (baseline - sa_value) / baseline


def round2(value: float) -> float:
    """Round half-up to two decimals, for display columns."""
    return float(Decimal(repr(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class BenchRow:
    instance: str
    order: int
    baseline: float | None  # k * best-known, None when unregistered
    sa_value: float         # best over seeds, display units
    dif_percent: float | None
    seeds_used: int
    elapsed: float
    per_seed: tuple[float, ...] = ()
    scale: int = 1
    error: str | None = None


@dataclass(frozen=True)
class BenchReport:
    rows: tuple[BenchRow, ...]
    orders: tuple[int, ...]
    seeds: int
    base_seed: int

    def instances(self) -> list[str]:
        seen = dict.fromkeys(row.instance for row in self.rows)
        return list(seen)

    def row(self, instance: str, order: int) -> BenchRow | None:
        for r in self.rows:
            if r.instance == instance and r.order == order:
                return r
        return None

    def difs(self, order: int | None = None) -> dict[str, float]:
        """dif_percent per instance at the given (default: highest) order."""
        k = order if order is not None else max(self.orders)
        return {
            r.instance: r.dif_percent
            for r in self.rows
            if r.order == k and r.dif_percent is not None
        }


@dataclass(frozen=True)
class Summary:
    mean_dif: float
    max_dif: float
    rows: int
    filtered_mean_dif: float | None = None
    filtered_max_dif: float | None = None
    filtered_rows: int = 0


def summarize(difs: Mapping[str, float], filter_names: Iterable[str] | None = None) -> Summary:
    """Mean/max dif; optionally also over the named subset of instances."""
    if not difs:
        raise EmptyReport("no dif values to summarize")
    values = list(difs.values())
    summary = Summary(
        mean_dif=sum(values) / len(values),
        max_dif=max(values),
        rows=len(values),
    )
    if filter_names is not None:
        names = set(filter_names)
        kept = [difs[name] for name in difs if name in names]
        if kept:
            summary = replace(
                summary,
                filtered_mean_dif=sum(kept) / len(kept),
                filtered_max_dif=max(kept),
                filtered_rows=len(kept),
            )
    return summary


def names_with_min_machines(instances: Mapping[str, Instance], min_machines: int = 10) -> set[str]:
    return {name for name, inst in instances.items() if inst.m >= min_machines}


def _run_one(args: tuple[str, Instance, int, int, SAConfig]) -> tuple[str, int, int, float, float, str | None]:
    """One (instance, order, seed) task; failures come back as a message."""
    name, inst, order, seed, cfg = args
    try:
        expanded = expand(inst, order).expanded
        result = anneal(expanded, replace(cfg, seed=seed).resolved(order))
        value = result.best_makespan / inst.scale if inst.scale != 1 else result.best_makespan
        return name, order, seed, float(value), result.elapsed, None
    except Exception as exc:
        return name, order, seed, float("nan"), 0.0, f"{type(exc).__name__}: {exc}"


def run_benchmark(
    corpus: Mapping[str, Instance],
    orders: Iterable[int],
    seeds: int,
    cfg: SAConfig,
    registry: BestKnownRegistry | None = None,
    workers: int = 1,
) -> BenchReport:
    """Anneal every (instance, order) cell with `seeds` derived seeds.

    Seed i of every cell is cfg.seed + i, so cells are independent and
    the report is deterministic for fixed inputs regardless of worker
    count.  A failing cell becomes an error row instead of aborting the
    run.
    """
    registry = registry or BestKnownRegistry.default()
    orders = tuple(sorted(set(orders)))
    names = sorted(corpus)
    tasks = [
        (name, corpus[name], order, cfg.seed + i, cfg)
        for name in names
        for order in orders
        for i in range(seeds)
    ]
    outcomes: dict[tuple[str, int], list[tuple[int, float, float]]] = {}
    errors: dict[tuple[str, int], str] = {}

    def record(name: str, order: int, seed: int, value: float, elapsed: float, err: str | None) -> None:
        if err is not None:
            errors[(name, order)] = err
        else:
            outcomes.setdefault((name, order), []).append((seed, value, elapsed))

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(_run_one, tasks):
                record(*result)
    else:
        for task in tasks:
            record(*_run_one(task))

    rows = []
    for name in names:
        for order in orders:
            key = (name, order)
            if key in errors:
                rows.append(
                    BenchRow(
                        instance=name, order=order, baseline=None, sa_value=float("nan"),
                        dif_percent=None, seeds_used=0, elapsed=0.0, error=errors[key],
                    )
                )
                continue
            cell = sorted(outcomes.get(key, []))
            if not cell:
                continue
            per_seed = tuple(value for _, value, _ in cell)
            sa_value = min(per_seed)
            elapsed = sum(e for _, _, e in cell)
            best1 = registry.get(name)
            baseline = best1 * order if best1 is not None else None
            dif = compute_dif(baseline, sa_value) if baseline is not None else None
            rows.append(
                BenchRow(
                    instance=name, order=order, baseline=baseline, sa_value=sa_value,
                    dif_percent=dif, seeds_used=len(cell), elapsed=elapsed, per_seed=per_seed,
                    scale=corpus[name].scale,
                )
            )
    return BenchReport(rows=tuple(rows), orders=orders, seeds=seeds, base_seed=cfg.seed)


def _fmt_value(value: float | None, scale: int = 1) -> str:
    if value is None:
        return ""
    if scale > 1:
        return f"{value:.2f}"
    if value == int(value):
        return str(int(value))
    return f"{value:.2f}"


def _fmt_dif(dif: float | None) -> str:
    if dif is None:
        return ""
    return f"{round2(dif):.2f}"


def to_csv(report: BenchReport) -> str:
    """Machine-readable rows; stable bytes for identical inputs."""
    lines = ["instance,order,baseline,sa_value,dif_percent,seeds_used"]
    for r in report.rows:
        lines.append(
            ",".join(
                [
                    r.instance,
                    str(r.order),
                    _fmt_value(r.baseline, r.scale),
                    _fmt_value(r.sa_value, r.scale) if r.error is None else "error",
                    _fmt_dif(r.dif_percent),
                    str(r.seeds_used),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def to_json(report: BenchReport) -> str:
    """Full detail including per-seed values and timings."""
    doc = {
        "orders": list(report.orders),
        "seeds": report.seeds,
        "base_seed": report.base_seed,
        "rows": [
            {
                "instance": r.instance,
                "order": r.order,
                "baseline": r.baseline,
                "sa_value": None if r.error else r.sa_value,
                "dif_percent": r.dif_percent,
                "seeds_used": r.seeds_used,
                "elapsed": r.elapsed,
                "per_seed": list(r.per_seed),
                "error": r.error,
            }
            for r in report.rows
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def to_markdown(report: BenchReport) -> str:
    """Human layout: per-order pairs of baseline/SA columns plus Dif %.

    Single-instance reports use the order-scaling layout instead (one
    row per order with the absolute and relative gain).
    """
    instances = report.instances()
    if len(instances) == 1 and len(report.orders) > 1:
        return _scaling_markdown(report, instances[0])
    header = ["Task"]
    for k in report.orders:
        header += [f"Best {k}", f"SA {k}"]
    header.append("Dif. %")
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    top_order = max(report.orders)
    for name in instances:
        cells = [name]
        for k in report.orders:
            row = report.row(name, k)
            if row is None or row.error is not None:
                cells += ["", "error" if row is not None else ""]
            else:
                cells += [_fmt_value(row.baseline, row.scale), _fmt_value(row.sa_value, row.scale)]
        final = report.row(name, top_order)
        cells.append(_fmt_dif(final.dif_percent) if final else "")
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def _scaling_markdown(report: BenchReport, name: str) -> str:
    lines = [
        f"| Order | Reiteration baseline | Cyclic ({name}) | Difference | Difference, % |",
        "|---|---|---|---|---|",
    ]
    for r in report.rows:
        if r.error is not None:
            lines.append(f"| {r.order} | | error | | |")
            continue
        gain = "" if r.baseline is None else _fmt_value(r.baseline - r.sa_value, r.scale)
        lines.append(
            f"| {r.order} | {_fmt_value(r.baseline, r.scale)} | {_fmt_value(r.sa_value, r.scale)} "
            f"| {gain} | {_fmt_dif(r.dif_percent)} |"
        )
    return "\n".join(lines) + "\n"


def render_report_figure(report: BenchReport, path: str) -> None:
    """Write a matplotlib figure next to the delimited output.

    Multi-instance reports get a dif% bar chart at the highest order;
    single-instance reports get the baseline-vs-solver scaling curves.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    instances = report.instances()
    if len(instances) == 1 and len(report.orders) > 1:
        name = instances[0]
        rows = [r for r in report.rows if r.error is None]
        ks = [r.order for r in rows]
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
        ax1.plot(ks, [r.baseline for r in rows], "o-", label="repeat order-1 plan")
        ax1.plot(ks, [r.sa_value for r in rows], "s-", label="solve cyclic directly")
        ax1.set_xlabel("order k")
        ax1.set_ylabel("makespan")
        ax1.set_title(name)
        ax1.legend()
        ax2.plot(ks, [r.dif_percent for r in rows], "d-", color="#59a14f")
        ax2.axhline(0.0, color="#888888", linewidth=0.8)
        ax2.set_xlabel("order k")
        ax2.set_ylabel("gain over repetition, %")
        ax2.set_title("relative benefit")
    else:
        difs = report.difs()
        names = [n for n in instances if n in difs]
        fig, ax = plt.subplots(figsize=(max(6, 0.5 * len(names) + 2), 4))
        ax.bar(range(len(names)), [difs[n] for n in names], color="#4e79a7")
        ax.axhline(0.0, color="#888888", linewidth=0.8)
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names, rotation=60, ha="right")
        ax.set_ylabel(f"gain over repetition at order {max(report.orders)}, %")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
