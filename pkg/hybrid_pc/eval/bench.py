"""Benchmark grid: methods x datasets x alphas, averaged over seeds."""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
import yaml

from hybrid_pc import __version__
from hybrid_pc.dataset import Dataset
from hybrid_pc.exceptions import HybridPCError
from hybrid_pc.graph.io import load_graph, load_graph_file
from hybrid_pc.graph.models import CausalGraph, GraphFile
from hybrid_pc.manifest import file_digest
from hybrid_pc.pc import PriorKnowledge, negative_prior_from, perturb_prior
from hybrid_pc.pc.models import FORBID_MODES
from hybrid_pc.refine import DirectionResolver, PruneConfig, enforce_acyclicity, prune_edges
from hybrid_pc.scm import MechanismSpec, NoiseSpec, build_scm, random_dag, sample

from .exceptions import BenchConfigError
from .methods import MethodContext, get_method, get_supported_methods, prune_test_for
from .metrics import MATCHING_MODES, EvalReport, edge_metrics

logger = logging.getLogger(__name__)

MECHANISMS = ("linear", "mlp")

# field -> (accepted types, may be null)
_DATASET_FIELD_TYPES: dict[str, tuple[tuple[type, ...], bool]] = {
    "name": ((str,), False),
    "graph": ((str,), True),
    "random_nodes": ((int,), True),
    "edge_prob": ((int, float), False),
    "data": ((str,), True),
    "mechanism": ((str,), False),
    "n_samples": ((int,), False),
    "prior": ((str,), True),
    "prior_rewire": ((int, float), True),
    "forbid_from_prior": ((int, float), True),
}
_FRACTION_FIELDS = ("edge_prob", "prior_rewire", "forbid_from_prior")

CSV_COLUMNS = ["dataset", "method", "alpha", "precision", "recall", "f1"]
CSV_FLOAT_FORMAT = "%.6f"
MARKDOWN_FLOAT_FORMAT = "{:.2f}"


@dataclass(frozen=True)
class BenchDataset:
    """
    One dataset column of the grid.

    The truth is either a graph file (``graph``) or a random DAG drawn per
    seed (``random_nodes`` and ``edge_prob``). Data is read from ``data`` or
    sampled from the truth with the given mechanism, one draw per seed.
    The prior comes from a graph file (``prior``) or a rewired truth
    (``prior_rewire``); ``forbid_from_prior`` adds sampled negative edges.
    """

    name: str
    graph: str | None = None
    random_nodes: int | None = None
    edge_prob: float = 0.3
    data: str | None = None
    mechanism: str = "linear"
    n_samples: int = 1000
    prior: str | None = None
    prior_rewire: float | None = None
    forbid_from_prior: float | None = None


def _dataset_errors(i: int, entry: dict[str, Any]) -> list[str]:
    """Type and range problems of one dataset entry, named by field."""
    errors = []
    label = f"datasets[{i}]"
    for key, value in entry.items():
        types, nullable = _DATASET_FIELD_TYPES[key]
        if value is None and nullable:
            continue
        if isinstance(value, bool) or not isinstance(value, types):
            expected = " or ".join(t.__name__ for t in types)
            errors.append(f"{label}.{key} must be {expected}, got {value!r}")
            continue
        if key in _FRACTION_FIELDS and not 0 <= value <= 1:
            errors.append(f"{label}.{key} must be in [0, 1], got {value}")
        elif key in ("random_nodes", "n_samples") and value < 1:
            errors.append(f"{label}.{key} must be at least 1, got {value}")
        elif key == "mechanism" and value not in MECHANISMS:
            errors.append(f"{label}.mechanism must be one of {MECHANISMS}, got {value!r}")
        elif key == "name" and not value.strip():
            errors.append(f"{label}.name must not be empty")
    return errors


@dataclass(frozen=True)
class BenchConfig:
    """Parsed bench configuration; relative paths resolve against ``base_dir``."""

    name: str
    datasets: tuple[BenchDataset, ...]
    methods: tuple[str, ...]
    seeds: tuple[int, ...] = (0,)
    alphas: tuple[float, ...] = (0.05,)
    mode: str = "directed_strict"
    prune_fraction: float = 0.0
    forbid_mode: str = "skeleton"
    jobs: int = 1
    base_dir: Path = field(default=Path("."), compare=False)
    raw: dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def from_dict(cls, data: dict[str, Any], base_dir: Path = Path(".")) -> "BenchConfig":
        """
        Validate a configuration document.

        Raises:
            BenchConfigError: Listing every problem found
        """
        errors: list[str] = []
        if not isinstance(data, dict):
            raise BenchConfigError("Bench configuration must be a mapping")

        datasets: list[BenchDataset] = []
        raw_datasets = data.get("datasets") or []
        if not isinstance(raw_datasets, list) or not raw_datasets:
            errors.append("datasets must be a non-empty list")
            raw_datasets = []
        known = set(BenchDataset.__dataclass_fields__)
        for i, entry in enumerate(raw_datasets):
            if not isinstance(entry, dict) or "name" not in entry:
                errors.append(f"datasets[{i}] must be a mapping with a name")
                continue
            unknown = sorted(set(entry) - known)
            if unknown:
                errors.append(f"datasets[{i}] has unknown keys: {unknown}")
                continue
            type_errors = _dataset_errors(i, entry)
            if type_errors:
                errors.extend(type_errors)
                continue
            ds = BenchDataset(**{
                k: float(v) if k in _FRACTION_FIELDS and v is not None else v
                for k, v in entry.items()
            })
            if (ds.graph is None) == (ds.random_nodes is None):
                errors.append(f"dataset {ds.name}: give exactly one of graph or random_nodes")
            if ds.prior is not None and ds.prior_rewire is not None:
                errors.append(f"dataset {ds.name}: give at most one of prior or prior_rewire")
            datasets.append(ds)
        names = [d.name for d in datasets]
        if len(set(names)) != len(names):
            errors.append("dataset names must be unique")

        methods = data.get("methods") or []
        if not isinstance(methods, list) or not methods:
            errors.append("methods must be a non-empty list")
            methods = []
        supported = get_supported_methods()
        for m in methods:
            if m not in supported:
                errors.append(f"unknown method {m!r} (supported: {', '.join(supported)})")

        seeds = data.get("seeds", [0])
        if not isinstance(seeds, list) or not seeds or any(
            isinstance(s, bool) or not isinstance(s, int) or s < 0 for s in seeds
        ):
            errors.append("seeds must be a non-empty list of non-negative integers")
            seeds = [0]
        alphas = data.get("alphas", [0.05])
        if not isinstance(alphas, list) or not alphas or any(
            not isinstance(a, (int, float)) or not 0 < a < 1 for a in alphas
        ):
            errors.append("alphas must be a non-empty list of numbers in (0, 1)")
            alphas = [0.05]
        mode = data.get("mode", "directed_strict")
        if mode not in MATCHING_MODES:
            errors.append(f"mode must be one of {MATCHING_MODES}")
        forbid_mode = data.get("forbid_mode", "skeleton")
        if forbid_mode not in FORBID_MODES:
            errors.append(f"forbid_mode must be one of {FORBID_MODES}")
        prune_fraction = data.get("prune_fraction", 0.0)
        if not isinstance(prune_fraction, (int, float)) or not 0 <= prune_fraction <= 1:
            errors.append("prune_fraction must be a number in [0, 1]")
        jobs = data.get("jobs", 1)
        if not isinstance(jobs, int) or jobs < 1:
            errors.append("jobs must be a positive integer")

        if errors:
            raise BenchConfigError(
                "Bench configuration errors:\n" + "\n".join(f"  - {e}" for e in errors)
            )

        return cls(
            name=str(data.get("name", "bench")),
            datasets=tuple(datasets),
            methods=tuple(methods),
            seeds=tuple(seeds),
            alphas=tuple(float(a) for a in alphas),
            mode=mode,
            prune_fraction=float(prune_fraction),
            forbid_mode=forbid_mode,
            jobs=jobs,
            base_dir=base_dir,
            raw=data,
        )

    @classmethod
    def load(cls, path: str | Path) -> "BenchConfig":
        path = Path(path)
        try:
            data = yaml.safe_load(path.read_text())
        except OSError as e:
            raise BenchConfigError(f"Cannot read bench config {path}: {e}") from e
        except yaml.YAMLError as e:
            raise BenchConfigError(f"Invalid YAML in {path}: {e}") from e
        return cls.from_dict(data, base_dir=path.parent)

    def resolve(self, ref: str) -> str:
        """Path relative to the config file, or the ref unchanged (builtin graph names)."""
        candidate = self.base_dir / ref
        return str(candidate) if candidate.exists() else ref


@dataclass(frozen=True)
class RunRecord:
    """One (dataset, method, alpha, seed) run."""

    dataset: str
    method: str
    alpha: float
    seed: int
    report: EvalReport | None = None
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "dataset": self.dataset,
            "method": self.method,
            "alpha": self.alpha,
            "seed": self.seed,
            "status": "ok" if self.error is None else "error",
            "metrics": self.report.to_dict() if self.report else None,
            "error": self.error,
        }


@dataclass(frozen=True)
class BenchRow:
    """Seed-averaged scores of one grid cell; None when any seed failed."""

    dataset: str
    method: str
    alpha: float
    precision: float | None
    recall: float | None
    f1: float | None


@dataclass
class BenchResult:
    config: BenchConfig
    rows: list[BenchRow]
    runs: list[RunRecord]
    inputs: dict[str, str] = field(default_factory=dict)

    @property
    def errors(self) -> list[RunRecord]:
        return [r for r in self.runs if r.error is not None]


def _truth_for(cfg: BenchConfig, ds: BenchDataset, seed: int) -> GraphFile:
    if ds.graph is not None:
        return load_graph_file(cfg.resolve(ds.graph))
    assert ds.random_nodes is not None
    return GraphFile(random_dag(ds.random_nodes, ds.edge_prob, seed))


def _data_for(cfg: BenchConfig, ds: BenchDataset, truth: CausalGraph, seed: int) -> Dataset:
    if ds.data is not None:
        return Dataset.from_csv(cfg.resolve(ds.data))
    scm = build_scm(truth, MechanismSpec(kind=ds.mechanism), NoiseSpec(), seed)
    return sample(scm, ds.n_samples, sample_seed=seed)


def _prior_for(
    cfg: BenchConfig, ds: BenchDataset, truth_file: GraphFile, seed: int
) -> tuple[PriorKnowledge, CausalGraph | None]:
    truth = truth_file.graph
    prior_graph: CausalGraph | None = None
    if ds.prior is not None:
        prior_graph = load_graph(cfg.resolve(ds.prior))
    elif ds.prior_rewire is not None:
        prior_graph = perturb_prior(truth, ds.prior_rewire, seed)

    knowledge = PriorKnowledge(forbidden=frozenset(truth_file.forbidden_names()))
    if prior_graph is not None:
        if ds.forbid_from_prior is not None:
            knowledge = knowledge.merged(
                negative_prior_from(prior_graph, ds.forbid_from_prior, seed)
            )
        else:
            knowledge = knowledge.merged(PriorKnowledge.from_graph(prior_graph))
    return knowledge, prior_graph


def run_cell(
    cfg: BenchConfig, ds: BenchDataset, method: str, alpha: float, seed: int
) -> EvalReport:
    """
    Run one method on one dataset for one alpha and seed and score it.

    Raises:
        HybridPCError: Any domain failure of the run
    """
    truth_file = _truth_for(cfg, ds, seed)
    truth = truth_file.graph
    prior, prior_graph = _prior_for(cfg, ds, truth_file, seed)
    data = _data_for(cfg, ds, truth, seed) if method != "oracle" else None

    ctx = MethodContext(
        truth=truth,
        data=data,
        prior=prior,
        prior_graph=prior_graph,
        alpha=alpha,
        seed=seed,
        forbid_mode=cfg.forbid_mode,
    )
    pred = get_method(method)(ctx)

    if cfg.prune_fraction > 0:
        ci_test = prune_test_for(method)
        dag = enforce_acyclicity(pred, DirectionResolver(prior))
        source = truth if ci_test == "oracle" else ctx.require_data(method)
        pred, _ = prune_edges(
            dag,
            source,
            PruneConfig(remove_fraction=cfg.prune_fraction, ci_test=ci_test, kci_seed=seed),
        )
    return edge_metrics(pred, truth, cfg.mode)


def _run(cfg: BenchConfig, ds: BenchDataset, method: str, alpha: float, seed: int) -> RunRecord:
    try:
        report = run_cell(cfg, ds, method, alpha, seed)
    except HybridPCError as e:
        logger.warning(f"{ds.name}/{method}/alpha={alpha}/seed={seed} failed: {e.message}")
        return RunRecord(ds.name, method, alpha, seed, error=f"{type(e).__name__}: {e.message}")
    except Exception as e:
        logger.exception(f"{ds.name}/{method}/alpha={alpha}/seed={seed} crashed: {e}")
        return RunRecord(ds.name, method, alpha, seed, error=f"{type(e).__name__}: {e}")
    logger.info(
        f"{ds.name}/{method}/alpha={alpha}/seed={seed}: "
        f"P={report.precision:.3f} R={report.recall:.3f} F1={report.f1:.3f}"
    )
    return RunRecord(ds.name, method, alpha, seed, report=report)


def _input_digests(cfg: BenchConfig) -> dict[str, str]:
    digests = {}
    for ds in cfg.datasets:
        for ref in (ds.graph, ds.data, ds.prior):
            if ref is None:
                continue
            path = Path(cfg.resolve(ref))
            if path.is_file():
                digests[str(path)] = file_digest(path)
    return digests


def bench_matrix(cfg: BenchConfig) -> BenchResult:
    """
    Run the full grid and average every cell over the configured seeds.

    Runs may execute concurrently (``cfg.jobs``); rows and run records are
    always ordered by dataset, method, alpha and seed as configured. A cell
    with any failed seed is left blank and its errors are kept in ``runs``.
    """
    grid = [
        (ds, method, alpha, seed)
        for ds in cfg.datasets
        for method in cfg.methods
        for alpha in cfg.alphas
        for seed in cfg.seeds
    ]
    logger.info(f"Bench {cfg.name}: {len(grid)} run(s) with {cfg.jobs} worker(s)")
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            runs = list(pool.map(lambda job: _run(cfg, *job), grid))
    else:
        runs = [_run(cfg, *job) for job in grid]

    rows = []
    per_cell = len(cfg.seeds)
    for start in range(0, len(runs), per_cell):
        cell = runs[start:start + per_cell]
        first = cell[0]
        reports = [r.report for r in cell if r.report is not None]
        if len(reports) != per_cell:
            rows.append(BenchRow(first.dataset, first.method, first.alpha, None, None, None))
            continue
        rows.append(
            BenchRow(
                first.dataset,
                first.method,
                first.alpha,
                float(np.mean([r.precision for r in reports])),
                float(np.mean([r.recall for r in reports])),
                float(np.mean([r.f1 for r in reports])),
            )
        )
    return BenchResult(config=cfg, rows=rows, runs=runs, inputs=_input_digests(cfg))


def results_frame(result: BenchResult) -> pd.DataFrame:
    """Long table: one row per (dataset, method, alpha)."""
    return pd.DataFrame(
        [[r.dataset, r.method, r.alpha, r.precision, r.recall, r.f1] for r in result.rows],
        columns=CSV_COLUMNS,
    )


def results_csv(result: BenchResult) -> str:
    return str(
        results_frame(result).to_csv(
            index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n"
        )
    )


def _fmt(value: float | None) -> str:
    return "" if value is None else MARKDOWN_FLOAT_FORMAT.format(value)


def results_markdown(result: BenchResult) -> str:
    """
    Wide table with methods as rows and Pre/Rec/F1 columns per dataset.

    Columns are padded to a common width; failed cells are blank.
    """
    cfg = result.config
    header = ["Method"] + [
        f"{ds.name} {metric}" for ds in cfg.datasets for metric in ("Pre", "Rec", "F1")
    ]
    by_key = {(r.dataset, r.method, r.alpha): r for r in result.rows}
    body = []
    for method in cfg.methods:
        for alpha in cfg.alphas:
            label = method if len(cfg.alphas) == 1 else f"{method} (alpha={alpha:g})"
            cells = [label]
            for ds in cfg.datasets:
                row = by_key[(ds.name, method, alpha)]
                cells += [_fmt(row.precision), _fmt(row.recall), _fmt(row.f1)]
            body.append(cells)

    widths = [max(len(line[i]) for line in [header, *body]) for i in range(len(header))]

    def line(cells: list[str]) -> str:
        padded = [
            c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(cells, widths))
        ]
        return "| " + " | ".join(padded) + " |"

    rule = "|" + "|".join(
        "-" * (w + 1) + ":" if i else ":" + "-" * (w + 1) for i, w in enumerate(widths)
    ) + "|"
    return "\n".join([line(header), rule, *(line(b) for b in body)]) + "\n"


def provenance(result: BenchResult) -> dict[str, Any]:
    cfg = result.config
    return {
        "name": cfg.name,
        "version": __version__,
        "config": cfg.raw,
        "seeds": list(cfg.seeds),
        "alphas": list(cfg.alphas),
        "mode": cfg.mode,
        "inputs": result.inputs,
        "runs": [r.to_dict() for r in result.runs],
    }


def write_bench(result: BenchResult, out_dir: str | Path) -> dict[str, Path]:
    """
    Write results.csv, results.md, provenance.json and errors.json to out_dir.

    Returns:
        Mapping of artifact kind to path
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "csv": out / "results.csv",
        "markdown": out / "results.md",
        "provenance": out / "provenance.json",
        "errors": out / "errors.json",
    }
    paths["csv"].write_text(results_csv(result))
    paths["markdown"].write_text(results_markdown(result))
    paths["provenance"].write_text(json.dumps(provenance(result), indent=2) + "\n")
    paths["errors"].write_text(
        json.dumps([r.to_dict() for r in result.errors], indent=2) + "\n"
    )
    logger.info(f"Bench results written to {out} ({len(result.errors)} failed run(s))")
    return paths
