"""Batch experiments on random Prüfer trees, written out as CSV.

Every cell is a (size, agents) pair evaluated on ``samples`` trees; tree ``i``
of a cell uses seed ``seed ^ i``, so the same trees are reused across agent
counts. Hubs of random trees are vertex 0. A tree that breaches a resource
guard marks its cell as skipped (with a warning); any other failure marks the
cell as errored, which makes the CLI exit nonzero.
"""
from __future__ import annotations

import csv
import io
import logging
import time
from dataclasses import dataclass, field
from statistics import mean
from typing import Optional

import numpy as np

from .core import Instance
from .efficiency import exists_ef1_po, exists_ef1_so, exists_mms_so
from .errors import InvalidArgument, ResourceLimitError
from .frontier import find_pareto_frontier, frontier_stats
from .gen import random_tree_prufer

log = logging.getLogger(__name__)

EXISTENCE = ("existence-ef1-po", "existence-ef1-so", "existence-mms-so")
EXPERIMENTS = EXISTENCE + ("price-of-mms", "frontier-dist", "runtime")


@dataclass
class ExperimentConfig:
    experiment: str
    sizes: list
    agent_counts: list
    samples: int = 200
    seed: int = 42
    out: Optional[str] = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise InvalidArgument(f"unknown experiment {self.experiment!r}")
        if self.samples < 1:
            raise InvalidArgument("samples must be at least 1")
        if not self.sizes or min(self.sizes) < 2:
            raise InvalidArgument("sizes must be at least 2")
        if not self.agent_counts or min(self.agent_counts) < 1:
            raise InvalidArgument("agent counts must be at least 1")

    def cells(self):
        for size in self.sizes:
            for n in self.agent_counts:
                yield size, n

    def instances(self, size: int, n: int):
        for i in range(self.samples):
            yield i, Instance(n, random_tree_prufer(size, self.seed ^ i))


@dataclass
class ExperimentResult:
    columns: tuple
    rows: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    errors: int = 0
    header: str = ""

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.header:
            buf.write(f"# {self.header}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        writer.writerows(self.rows)
        return buf.getvalue()

    def write(self, path: str) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv())


def _header(config: ExperimentConfig) -> str:
    return (f"experiment={config.experiment} seed={config.seed} samples={config.samples} "
            f"trees=prufer-pcg64 hub=vertex0 sample_seed=seed^index")


class _Cell:
    """Runs a per-tree function, turning guard breaches and failures into cell states."""

    def __init__(self, result: ExperimentResult, size: int, n: int):
        self.result, self.size, self.n = result, size, n
        self.state = "ok"

    def run(self, fn, index, instance):
        if self.state != "ok":
            return None
        try:
            return fn(instance)
        except ResourceLimitError as exc:
            self.state = "skipped"
            self.result.warnings.append(
                f"size={self.size} agents={self.n} skipped at sample {index}: {exc}")
        except Exception as exc:  # isolate one bad tree from the sweep
            self.state = "error"
            self.result.errors += 1
            self.result.warnings.append(
                f"size={self.size} agents={self.n} failed at sample {index}: {exc!r}")
        return None


def _existence_check(experiment: str):
    if experiment == "existence-ef1-po":
        return lambda inst: exists_ef1_po(find_pareto_frontier(inst)).exists
    if experiment == "existence-ef1-so":
        return lambda inst: exists_ef1_so(inst).exists
    if experiment == "existence-mms-so":
        def check(inst):
            mms = find_pareto_frontier(inst).profiles[0][0]
            return exists_mms_so(inst, mms).exists
        return check
    raise InvalidArgument(f"{experiment!r} is not an existence experiment")


def run_existence(config: ExperimentConfig) -> ExperimentResult:
    """Fraction of sampled trees per cell admitting the queried allocation."""
    check = _existence_check(config.experiment)
    result = ExperimentResult(("experiment", "size", "agents", "samples", "seed", "probability"),
                              header=_header(config))
    for size, n in config.cells():
        cell = _Cell(result, size, n)
        hits = 0
        for i, instance in config.instances(size, n):
            hits += bool(cell.run(check, i, instance))
        value = f"{hits / config.samples:.4f}" if cell.state == "ok" else cell.state
        result.rows.append((config.experiment, size, n, config.samples, config.seed, value))
    return result


def price_of_mms(instance: Instance, frontier=None) -> float:
    """Cheapest total cost of an MMS allocation divided by the edge count."""
    frontier = frontier if frontier is not None else find_pareto_frontier(instance)
    mms = min(p[0] for p in frontier.profiles)
    best = min(sum(p) for p in frontier.profiles if p[0] <= mms)
    return best / instance.tree.edge_count


def run_price_of_mms(config: ExperimentConfig) -> ExperimentResult:
    result = ExperimentResult(("size", "agents", "sample_index", "ratio"), header=_header(config))
    for size, n in config.cells():
        cell = _Cell(result, size, n)
        ratios = []
        for i, instance in config.instances(size, n):
            ratio = cell.run(price_of_mms, i, instance)
            if cell.state != "ok":
                break
            ratios.append(ratio)
            result.rows.append((size, n, i, f"{ratio:.6f}"))
        if cell.state != "ok":
            result.rows.append((size, n, cell.state, ""))
            continue
        q1, median, q3 = np.percentile(ratios, [25, 50, 75])
        for label, value in (("median", median), ("q1", q1), ("q3", q3)):
            result.rows.append((size, n, label, f"{value:.6f}"))
    return result


def run_frontier_dist(config: ExperimentConfig) -> ExperimentResult:
    """Per tree and gap, the cheapest frontier total; plus per-gap means."""
    result = ExperimentResult(("size", "agents", "sample_index", "gap", "total_cost"),
                              header=_header(config))

    def stats(instance):
        return sorted((gap, total) for total, gap in frontier_stats(find_pareto_frontier(instance)))

    for size, n in config.cells():
        cell = _Cell(result, size, n)
        by_gap = {}
        for i, instance in config.instances(size, n):
            pairs = cell.run(stats, i, instance)
            if cell.state != "ok":
                break
            for gap, total in pairs:
                result.rows.append((size, n, i, gap, total))
                by_gap.setdefault(gap, []).append(total)
        if cell.state != "ok":
            result.rows.append((size, n, cell.state, "", ""))
            continue
        for gap in sorted(by_gap):
            result.rows.append((size, n, "mean", gap, f"{mean(by_gap[gap]):.4f}"))
    return result


def run_runtime(config: ExperimentConfig) -> ExperimentResult:
    """Mean wall-clock seconds of the frontier computation per cell."""
    result = ExperimentResult(("size", "agents", "samples", "mean_seconds"), header=_header(config))

    def timed(instance):
        start = time.perf_counter()
        find_pareto_frontier(instance)
        return time.perf_counter() - start

    for size, n in config.cells():
        cell = _Cell(result, size, n)
        times = []
        for i, instance in config.instances(size, n):
            times.append(cell.run(timed, i, instance))
        value = f"{mean(times):.6f}" if cell.state == "ok" else cell.state
        result.rows.append((size, n, config.samples, value))
    return result


def run(config: ExperimentConfig) -> ExperimentResult:
    if config.experiment in EXISTENCE:
        result = run_existence(config)
    else:
        result = {"price-of-mms": run_price_of_mms, "frontier-dist": run_frontier_dist,
                  "runtime": run_runtime}[config.experiment](config)
    for message in result.warnings:
        log.warning(message)
    if config.out:
        result.write(config.out)
    return result


def read_csv(text: str) -> list:
    """Rows of an experiment CSV as dicts, skipping the ``#`` header line."""
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(lines))
