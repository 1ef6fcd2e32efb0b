#!/usr/bin/env python3
"""Main entry point for the hybrid-pc command line."""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from os import environ
from pathlib import Path
from typing import Any

from hybrid_pc import __version__
from hybrid_pc.ci_tests import get_supported_tests
from hybrid_pc.config import Config, load_config
from hybrid_pc.dataset import Dataset
from hybrid_pc.eval import (
    MATCHING_MODES,
    BenchConfig,
    bench_matrix,
    edge_metrics,
    negative_compliance,
    write_bench,
)
from hybrid_pc.exceptions import HybridPCError
from hybrid_pc.graph import graph_stats, load_graph, load_graph_file, save_graph
from hybrid_pc.graph.models import CausalGraph
from hybrid_pc.llm import (
    TASK_KINDS,
    CachedCompleter,
    LlmClient,
    PriorResponse,
    RateLimiter,
    ResponseCache,
    StrategyReport,
    bfs_prior,
    pairwise_prior,
    render_mem_prompt,
    render_recognition_prompt,
    score_mem,
    split_for_mem,
)
from hybrid_pc.manifest import RunManifest
from hybrid_pc.pc import PcConfig, PriorKnowledge, complete_prior, negative_prior_from, run_pc
from hybrid_pc.pc.models import FORBID_MODES
from hybrid_pc.refine import (
    DirectionResolver,
    ExpandConfig,
    PruneConfig,
    enforce_acyclicity,
    expand_edges,
    prune_edges,
)
from hybrid_pc.refine.models import PRUNE_ORDERS
from hybrid_pc.scm import Distribution, MechanismSpec, NoiseSpec, build_scm, random_dag, sample

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

METHOD_CI_TESTS = {"pc": "fisher_z", "pc-kci": "kci"}


def load_log_level() -> str:
    """LOG_LEVEL from the environment, INFO when unset or unknown."""
    level = environ.get("LOG_LEVEL", "INFO").upper()
    return level if level in LOG_LEVELS else "INFO"


def _write_json(data: Any, path: str | Path) -> None:
    Path(path).write_text(json.dumps(data, indent=2) + "\n")


def _manifest(argv: Sequence[str], args: argparse.Namespace) -> RunManifest:
    config = {k: v for k, v in vars(args).items() if k != "handler"}
    seeds = {"seed": args.seed} if hasattr(args, "seed") else {}
    return RunManifest(command=["hybrid-pc", *argv], config=config, seeds=seeds)


def _source(args: argparse.Namespace, manifest: RunManifest) -> Dataset | CausalGraph:
    """Dataset for sample-based tests, truth graph for the oracle."""
    if args.ci == "oracle":
        if not args.truth:
            raise HybridPCError("--ci oracle requires --truth")
        manifest.add_input(args.truth)
        return load_graph(args.truth)
    if not args.data:
        raise HybridPCError(f"--ci {args.ci} requires --data")
    manifest.add_input(args.data)
    return Dataset.from_csv(args.data)


def _prior(args: argparse.Namespace, manifest: RunManifest) -> PriorKnowledge | None:
    if not args.prior:
        return None
    manifest.add_input(args.prior)
    prior_file = load_graph_file(args.prior)
    knowledge = PriorKnowledge.from_graph_file(prior_file)
    if getattr(args, "complete_prior", False):
        return knowledge.merged(complete_prior(prior_file.graph))
    fraction = getattr(args, "forbid_from_prior", None)
    if fraction is not None:
        knowledge = knowledge.merged(negative_prior_from(prior_file.graph, fraction, args.seed))
    return knowledge


def _completer(config: Config) -> CachedCompleter:
    client = None
    if config.online:
        client = LlmClient(
            config.llm_endpoint,
            config.llm_api_key,
            config.model,
            temperature=config.temperature,
            timeout=config.timeout,
            max_retries=config.max_retries,
            max_concurrency=config.max_concurrency,
            rate_limiter=RateLimiter(config.rate_limit),
        )
    return CachedCompleter(
        ResponseCache(config.cache_dir),
        config.model,
        config.temperature,
        client=client,
        online=config.online,
    )


def _close(completer: CachedCompleter) -> None:
    if isinstance(completer.client, LlmClient):
        completer.client.close()


def cmd_gen_data(args: argparse.Namespace, manifest: RunManifest) -> int:
    if args.graph:
        manifest.add_input(args.graph)
        truth = load_graph(args.graph)
    elif args.random_nodes is not None:
        truth = random_dag(args.random_nodes, args.edge_prob, args.seed)
    else:
        raise HybridPCError("gen-data needs --graph or --random-nodes")

    mech = MechanismSpec(
        kind=args.mech,
        coef_dist=Distribution.parse(args.coef),
        depth=args.depth,
        width=args.width,
        activation=args.activation,
        init_dist=Distribution.parse(args.init),
    )
    scm = build_scm(truth, mech, NoiseSpec.parse(args.noise), args.seed)
    sample_seed = args.seed if args.sample_seed is None else args.sample_seed
    data = sample(scm, args.n, sample_seed, jobs=args.jobs)
    data.to_csv(args.out)
    manifest.seeds["sample_seed"] = sample_seed
    manifest.extra["mechanism"] = mech.describe()

    if args.graph_out:
        save_graph(truth, args.graph_out)
        manifest.add_output(args.graph_out)
    manifest.write(args.out)
    print(f"Wrote {data.n_samples} rows x {data.n_vars} columns to {args.out}")
    return 0


def cmd_discover(args: argparse.Namespace, manifest: RunManifest) -> int:
    if args.method:
        args.ci = METHOD_CI_TESTS[args.method]
    cfg = PcConfig(
        alpha=args.alpha,
        max_cond_size=args.max_cond,
        ci_test=args.ci,
        jobs=args.jobs,
        forbid_mode=args.forbid_mode,
        kci_seed=args.seed,
    )
    result = run_pc(_source(args, manifest), cfg, _prior(args, manifest))
    save_graph(result.graph, args.out)
    manifest.config["pc"] = cfg.to_dict()
    manifest.extra["orientation"] = result.report.to_dict()
    if args.report:
        _write_json(
            {"sepsets": result.sepsets.to_dict(), **result.report.to_dict()}, args.report
        )
        manifest.add_output(args.report)
    manifest.write(args.out)
    g = result.graph
    print(
        f"Wrote graph with {len(g.directed_edges)} directed and "
        f"{len(g.undirected_edges)} undirected edges to {args.out}"
    )
    return 0


def cmd_refine(args: argparse.Namespace, manifest: RunManifest) -> int:
    manifest.add_input(args.graph)
    g = load_graph(args.graph)
    source = _source(args, manifest)
    resolver = DirectionResolver(_prior(args, manifest))

    dag = enforce_acyclicity(g, resolver)
    if args.expand:
        dag = expand_edges(
            dag,
            source,
            ExpandConfig(alpha=args.alpha, ci_test=args.ci, kci_seed=args.seed, jobs=args.jobs),
            resolver,
        )
    cfg = PruneConfig(
        remove_fraction=args.prune,
        order=args.order,
        ci_test=args.ci,
        kci_seed=args.seed,
        jobs=args.jobs,
    )
    pruned, scores = prune_edges(dag, source, cfg)
    save_graph(pruned, args.out)
    if args.scores:
        _write_json(
            [
                {"edge": list(s.edge), "witness": sorted(s.witness), "p_value": s.p_value}
                for s in scores
            ],
            args.scores,
        )
        manifest.add_output(args.scores)
    manifest.write(args.out)
    print(f"Wrote DAG with {len(pruned.directed_edges)} edges to {args.out}")
    return 0


def cmd_prior(args: argparse.Namespace, manifest: RunManifest) -> int:
    manifest.add_input(args.variables)
    variables = load_graph(args.variables)
    completer = _completer(load_config(online=args.online))
    report = StrategyReport()
    name = args.name or variables.name
    try:
        if args.strategy == "pairwise":
            g = pairwise_prior(
                variables.nodes, completer, args.retries, args.jobs, name=name, report=report
            )
        else:
            g = bfs_prior(variables.nodes, completer, args.retries, name=name, report=report)
    finally:
        _close(completer)
    save_graph(g, args.out)
    manifest.extra["strategy"] = report.to_dict()
    manifest.extra["cache_keys"] = sorted(set(completer.keys))
    manifest.write(args.out)
    print(f"Wrote prior graph with {len(g.directed_edges)} edges to {args.out}")
    return 0


def cmd_memtest(args: argparse.Namespace, manifest: RunManifest) -> int:
    manifest.add_input(args.graph)
    g = load_graph(args.graph)
    dataset_name = args.dataset_name or g.name or str(args.graph)
    completer = _completer(load_config(online=args.online))
    try:
        if args.kind == "recognition":
            prompt = render_recognition_prompt(dataset_name)
            out: dict[str, Any] = {"kind": "recognition", "prompt": prompt}
            out["response"] = completer.complete(prompt)
        else:
            task = split_for_mem(g, args.kind, args.alpha, args.seed)
            prompt = render_mem_prompt(task, dataset_name)
            response = PriorResponse.parse(completer.complete(prompt), task.kind)
            score = score_mem(response, task, dataset_name)
            out = {
                "kind": task.kind,
                "alpha": task.alpha,
                "seed": task.seed,
                "revealed_nodes": list(task.revealed_nodes),
                "hidden_nodes": list(task.hidden_nodes),
                "revealed_edges": [list(e) for e in task.revealed_edges],
                "hidden_edges": [list(e) for e in task.hidden_edges],
                "prompt": prompt,
                "response": response.raw,
                "score": score.to_dict(),
            }
    finally:
        _close(completer)
    out["cache_keys"] = completer.keys
    _write_json(out, args.out)
    manifest.extra["cache_keys"] = completer.keys
    manifest.write(args.out)
    print(json.dumps(out.get("score", {"response": out["response"]}), indent=2))
    return 0


def cmd_evaluate(args: argparse.Namespace, manifest: RunManifest) -> int:
    pred = load_graph(args.pred)
    truth_file = load_graph_file(args.truth)
    report = edge_metrics(pred, truth_file.graph, args.mode)
    forbidden = truth_file.forbidden_names()
    if args.forbidden:
        forbidden += load_graph_file(args.forbidden).forbidden_names()
    out = {
        "metrics": report.to_dict(),
        "negative_compliance": negative_compliance(pred, forbidden).to_dict(),
    }
    text = json.dumps(out, indent=2)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")
        for path in (args.pred, args.truth, args.forbidden):
            if path:
                manifest.add_input(path)
        manifest.write(args.out)
    return 0


def cmd_stats(args: argparse.Namespace, manifest: RunManifest) -> int:
    g = load_graph(args.graph)
    s = graph_stats(g, unshielded_only=args.unshielded)
    print(f"nodes: {s.n_nodes}, edges: {s.n_edges}")
    print(f"colliders: {s.n_colliders}")
    print(f"in-degree: min {s.in_degree_min}, median {s.in_degree_median}, max {s.in_degree_max}")
    longest = "n/a" if s.longest_directed_path is None else s.longest_directed_path
    print(f"longest directed path: {longest}")
    return 0


def cmd_bench(args: argparse.Namespace, manifest: RunManifest) -> int:
    manifest.add_input(args.config)
    cfg = BenchConfig.load(args.config)
    result = bench_matrix(cfg)
    paths = write_bench(result, args.out)
    for kind in ("markdown", "provenance", "errors"):
        manifest.add_output(paths[kind])
    manifest.write(paths["csv"])
    print(paths["markdown"].read_text(), end="")
    return 0


def _add_source_args(p: argparse.ArgumentParser, with_method: bool = False) -> None:
    p.add_argument("--data", help="CSV dataset")
    p.add_argument("--truth", help="Truth graph (required by --ci oracle)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--ci", choices=get_supported_tests(), default="fisher_z")
    if with_method:
        group.add_argument("--method", choices=sorted(METHOD_CI_TESTS),
                           help="Shorthand for --ci: pc is fisher_z, pc-kci is kci")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    common.add_argument("--jobs", type=int, default=1, help="Worker threads (default: 1)")

    parser = argparse.ArgumentParser(
        prog="hybrid-pc",
        description="Causal discovery with language-model priors and the PC algorithm",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", choices=LOG_LEVELS, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-data", parents=[common], help="Sample a dataset from an SCM")
    p.add_argument("--graph", help="Graph file or builtin name")
    p.add_argument("--random-nodes", type=int, help="Draw a random DAG instead of --graph")
    p.add_argument("--edge-prob", type=float, default=0.3)
    p.add_argument("--graph-out", help="Where to save the truth graph")
    p.add_argument("--mech", choices=("linear", "mlp"), default="linear")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--sample-seed", type=int, help="Noise seed (default: --seed)")
    p.add_argument("--noise", default="gaussian(0,1)")
    p.add_argument("--coef", default="uniform(0,2)", help="Linear coefficient distribution")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--width", type=int, default=4)
    p.add_argument("--activation", choices=("relu", "tanh", "sigmoid"), default="relu")
    p.add_argument("--init", default="uniform(0,1)", help="MLP weight distribution")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_gen_data)

    p = sub.add_parser("discover", parents=[common], help="Run PC with an optional prior")
    _add_source_args(p, with_method=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--max-cond", type=int)
    p.add_argument("--prior", help="Prior graph file (edges required, forbidden_edges honored)")
    negative = p.add_mutually_exclusive_group()
    negative.add_argument("--forbid-from-prior", type=float, metavar="FRACTION",
                          help="Also forbid this share of the pairs absent from the prior")
    negative.add_argument("--complete-prior", action="store_true",
                          help="Forbid every pair absent from the prior")
    p.add_argument("--forbid-mode", choices=FORBID_MODES, default="skeleton")
    p.add_argument("--report", help="JSON file for separating sets and orientation conflicts")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_discover)

    p = sub.add_parser("refine", parents=[common], help="Make acyclic, expand and prune a graph")
    p.add_argument("--graph", required=True)
    _add_source_args(p)
    p.add_argument("--prior", help="Prior graph file used to orient edges")
    p.add_argument("--prune", type=float, default=0.0, metavar="FRACTION")
    p.add_argument("--order", choices=PRUNE_ORDERS, default="highest_p_first")
    p.add_argument("--expand", action="store_true", help="Add dependent edges before pruning")
    p.add_argument("--alpha", type=float, default=0.05, help="Expansion level")
    p.add_argument("--scores", help="JSON file for per-edge witness p-values")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_refine)

    p = sub.add_parser("prior", parents=[common], help="Query a language model for a prior")
    p.add_argument("--strategy", choices=("pairwise", "bfs"), required=True)
    p.add_argument("--variables", required=True, help="Graph file listing the variables")
    p.add_argument("--name", help="Name of the output graph")
    p.add_argument("--retries", type=int, default=1)
    p.add_argument("--online", action="store_true", help="Allow requests on cache misses")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_prior)

    p = sub.add_parser("memtest", parents=[common], help="Run a memorization test")
    p.add_argument("--graph", required=True)
    p.add_argument("--kind", choices=(*TASK_KINDS, "recognition"), required=True)
    p.add_argument("--alpha", type=float, default=0.5,
                   help="Revealed share for M1, M2, M3 and graph_completion")
    p.add_argument("--dataset-name", help="Name used in the prompt (default: graph name)")
    p.add_argument("--online", action="store_true", help="Allow requests on cache misses")
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_memtest)

    p = sub.add_parser("evaluate", help="Score a predicted graph against the truth")
    p.add_argument("--pred", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--mode", choices=MATCHING_MODES, default="directed_strict")
    p.add_argument("--forbidden", help="Graph file whose forbidden_edges are checked")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("stats", help="Print graph statistics")
    p.add_argument("graph")
    p.add_argument("--unshielded", action="store_true", help="Count unshielded colliders only")
    p.set_defaults(handler=cmd_stats)

    p = sub.add_parser("bench", help="Run a benchmark grid")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="Output directory")
    p.set_defaults(handler=cmd_bench)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    Main entry point.

    Returns:
        0 on success, 1 on domain errors, 2 on usage errors
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    level = args.log_level or load_log_level()
    logging.getLogger().setLevel(level)

    try:
        return int(args.handler(args, _manifest(argv, args)))
    except HybridPCError as e:
        logger.error(f"{type(e).__name__}: {e.message}")
        return 1
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
