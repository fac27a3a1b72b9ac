"""Command-line entry points.

Subcommands:

* ``generate``   -- build the graph of a graph-kind config, write its edge list
* ``pagerank``   -- solve PageRank for an edge-list file, write the CSV
* ``experiment`` -- full config-driven run with replications and artifacts
* ``analyze``    -- tail/ratio analysis of an existing PageRank CSV

Exit codes: 0 success, 2 validation failure, 3 numerical failure
(non-convergence or sample blow-up), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, generators, pagerank, tails
from .errors import NotConvergedError, OutOfRangeError, SampleSizeLimitError
from .experiments import (KINDS, ExperimentConfig, run_experiment,
                          validate_config)
from .graphs import read_directed_edge_list, read_edge_list, write_edge_list, \
    write_directed_edge_list
from .rng import stream

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pagerank-tails",
        description="Graph PageRank tail experiments: generators, solvers, "
                    "limit trees, and bound checks.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build a graph and write its edge list")
    gen.add_argument("--config", required=True, help="JSON experiment config")
    gen.add_argument("--seed", type=int, default=None, help="override config seed")
    gen.add_argument("--out", default="out", help="output directory")

    pr = sub.add_parser("pagerank", help="solve PageRank for an edge-list file")
    pr.add_argument("edges", help="edge-list file (header 'n m', lines 'u v')")
    pr.add_argument("--damping", type=float, default=0.85)
    pr.add_argument("--tol", type=float, default=1e-10)
    pr.add_argument("--method", default="auto",
                    choices=("auto", "power", "closed", "dense"))
    pr.add_argument("--directed", action="store_true",
                    help="treat the input as arcs of a digraph")
    pr.add_argument("--out", default="out", help="output directory")

    exp = sub.add_parser("experiment", help="run a config-driven experiment")
    exp.add_argument("kind", choices=KINDS)
    exp.add_argument("--config", required=True, help="JSON experiment config")
    exp.add_argument("--seed", type=int, default=None, help="override config seed")
    exp.add_argument("--out", default="out", help="output directory")
    exp.add_argument("--threads", type=int, default=1,
                     help="concurrent replications")

    ana = sub.add_parser("analyze", help="tail analysis of a PageRank CSV")
    ana.add_argument("csv", help="CSV written by the pagerank/experiment commands")
    ana.add_argument("--beta", default="auto",
                     help="threshold scale for the tail ratio, or 'auto'")
    ana.add_argument("--damping", type=float, default=0.85,
                     help="damping used for the auto beta threshold")
    ana.add_argument("--k-top", type=int, default=None,
                     help="order statistics for the Hill estimate")
    ana.add_argument("--out", default="out", help="output directory")
    return parser


def _load_config(args) -> ExperimentConfig:
    config = ExperimentConfig.from_file(args.config)
    if getattr(args, "kind", None):
        config.kind = args.kind
    if args.seed is not None:
        config.seed = args.seed
    return config


def _cmd_generate(args) -> int:
    config = _load_config(args)
    result = validate_config(config)
    graph_kinds = ("cm", "pa", "counterexample", "directed_ratio")
    if config.kind not in graph_kinds:
        result.violations.append(
            f"kind: generate supports graph kinds {graph_kinds}, got {config.kind!r}")
    if not result.ok:
        for line in result.violations:
            print(f"config error: {line}", file=sys.stderr)
        return EXIT_VALIDATION
    for line in result.warnings:
        print(f"warning: {line}", file=sys.stderr)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = stream(config.seed, config.kind, 0)
    if config.kind == "cm":
        dist = generators.DegreeDistribution.power_law(
            config.tau, config.k_min, config.k_max) if config.pmf is None \
            else generators.DegreeDistribution.from_pmf(config.pmf)
        graph = generators.configuration_model(
            generators.sample_degrees(dist, config.n, rng), rng)
    elif config.kind == "pa":
        graph = generators.preferential_attachment(config.n, config.m,
                                                   config.delta, rng)
    elif config.kind == "counterexample":
        dist = generators.DegreeDistribution.power_law(
            config.tau, config.k_min, config.k_max, even_only=True) \
            if config.pmf is None else generators.DegreeDistribution.from_pmf(config.pmf)
        graph, _ = generators.counterexample_graph(dist, config.n)
    else:
        if config.out_degree is not None:
            digraph = generators.random_out_digraph(config.n, config.out_degree, rng)
        else:
            dist = generators.DegreeDistribution.power_law(
                config.tau, config.k_min, config.k_max) if config.pmf is None \
                else generators.DegreeDistribution.from_pmf(config.pmf)
            digraph = generators.eulerian_digraph(
                generators.sample_degrees(dist, config.n, rng), rng)
        path = out / "digraph.edges"
        write_directed_edge_list(path, digraph)
        print(f"wrote {path} ({digraph.n} vertices, {digraph.num_edges} arcs)")
        return EXIT_OK
    path = out / "graph.edges"
    write_edge_list(path, graph)
    print(f"wrote {path} ({graph.n} vertices, {graph.num_edges} edges)")
    return EXIT_OK


def _cmd_pagerank(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.directed:
        digraph = read_directed_edge_list(args.edges)
        result = pagerank.solve_dense(digraph, args.damping) \
            if args.method == "dense" \
            else pagerank.solve_directed(digraph, args.damping, tol=args.tol)
        path = out / "pagerank.csv"
        pagerank.write_directed_pagerank_csv(path, digraph, result)
        print(f"wrote {path} (n={digraph.n}, method={result.method}, "
              f"residual={result.residual:.3e})")
        return EXIT_OK
    graph = read_edge_list(args.edges)
    if args.method == "power":
        result = pagerank.solve_power_iteration(graph, args.damping, tol=args.tol)
    elif args.method == "dense":
        result = pagerank.solve_dense(graph, args.damping)
    else:
        result = pagerank.solve_undirected_closed(graph, args.damping, tol=args.tol)
    path = out / "pagerank.csv"
    pagerank.write_pagerank_csv(path, graph, result)
    bound = pagerank.check_degree_bound(result, graph)
    print(f"wrote {path} (n={graph.n}, method={result.method}, "
          f"residual={result.residual:.3e}, "
          f"max R-d = {bound.max_violation:.3e})")
    return EXIT_OK


def _cmd_experiment(args) -> int:
    config = _load_config(args)
    result = validate_config(config)
    if not result.ok:
        for line in result.violations:
            print(f"config error: {line}", file=sys.stderr)
        return EXIT_VALIDATION
    for line in result.warnings:
        print(f"warning: {line}", file=sys.stderr)
    manifest = run_experiment(config, args.out, threads=args.threads)
    print(f"wrote {manifest.out_dir}/manifest.json "
          f"({config.replications} replication(s), {manifest.wall_time_s:.2f}s)")
    for key, value in sorted(manifest.summaries[0].items()):
        print(f"  {key}: {value}")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    data = pagerank.read_pagerank_csv(args.csv)
    values = data["pagerank"]
    degrees = data.get("degree", data.get("in_degree"))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    report = tails.empirical_ccdf(values)
    report.to_csv(out / "pagerank_tails.csv")
    payload = {"n": int(values.size), "mean": float(values.mean())}

    if args.k_top is None or args.k_top >= 2:
        try:
            hill = tails.hill_estimator(values, k_top=args.k_top)
            payload["hill_tail_index"] = hill.estimate
            payload["hill_std_error"] = hill.std_error
            payload["hill_k_top"] = hill.k_top
        except Exception as exc:  # degenerate tails are reported, not fatal
            payload["hill_error"] = str(exc)

    if degrees is not None:
        d = degrees.astype(np.float64)
        c = args.damping
        if not 0.0 < c < 1.0:
            raise OutOfRangeError(
                f"damping must lie strictly inside (0,1), got {c}")
        beta = float(args.beta) if args.beta != "auto" else \
            1.05 * 4.0 * float(d.mean()) / (c * (1.0 - c))
        ratio = tails.ratio_bound_report(values, d, beta)
        (out / "ratio_report.json").write_text(ratio.to_json() + "\n")
        payload["beta"] = beta
        payload["upper_ccdf_holds"] = ratio.upper_bound_holds
        payload["min_window_ratio"] = ratio.min_window_ratio

    (out / "analysis.json").write_text(
        json.dumps(payload, sort_keys=True) + "\n")
    print(f"wrote {out}/pagerank_tails.csv and {out}/analysis.json")
    for key, value in sorted(payload.items()):
        print(f"  {key}: {value}")
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "pagerank": _cmd_pagerank,
    "experiment": _cmd_experiment,
    "analyze": _cmd_analyze,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (NotConvergedError, SampleSizeLimitError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
