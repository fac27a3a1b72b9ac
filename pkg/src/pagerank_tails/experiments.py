"""Config-driven experiment runs producing deterministic artifacts.

A run is (config, seed) -> a directory of CSV/JSON files.  Replications draw
from disjoint sub-streams of the master seed and may execute concurrently;
every CSV is written by exactly one replication, so reruns of the same config
are byte-identical regardless of thread count.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import generators, limit_trees, pagerank, tails
from .errors import BadParametersError
from .graphs import (Digraph, Graph, high_degree_neighbor_counts,
                     write_directed_edge_list, write_edge_list)
from .rng import stream

__all__ = [
    "KINDS",
    "SolverSettings",
    "ExperimentConfig",
    "ValidationResult",
    "validate_config",
    "run_experiment",
    "RunManifest",
]

KINDS = ("cm", "pa", "counterexample", "polya_tree", "unimodular_tree",
         "directed_ratio")

_SOLVER_METHODS = ("auto", "power", "neumann", "closed", "dense")


@dataclass
class SolverSettings:
    method: str = "auto"
    tol: float = 1e-10
    series_depth: int | None = None


@dataclass
class ExperimentConfig:
    """Everything a run needs besides the output directory and thread count.

    Which fields matter depends on ``kind``:

    * cm / unimodular_tree: degree law via ``tau``/``k_min``/``k_max`` or an
      explicit ``pmf``;
    * pa / polya_tree: ``m`` and ``delta``;
    * counterexample: even-support degree law (``pmf`` or ``tau`` with the
      even restriction applied automatically);
    * directed_ratio: either a degree law (in-/out-paired digraph) or
      ``out_degree`` for the uniform k-out digraph;
    * trees additionally use ``depth`` and ``num_samples``.

    ``beta`` is a number or "auto" (1.05x the scale 4 E[D] / (c (1-c))
    above which the tail lower bound is guaranteed).  ``alpha`` defaults
    per kind when None.
    """

    kind: str
    c: float = 0.85
    n: int | None = None
    tau: float | None = None
    k_min: int = 1
    k_max: int = 1000
    pmf: dict[int, float] | None = None
    m: int | None = None
    delta: float = 0.0
    depth: int | None = None
    num_samples: int | None = None
    alpha: float | None = None
    epsilon: float = 0.4
    beta: float | str = "auto"
    out_degree: int | None = None
    max_tree_vertices: int | None = None
    solver: SolverSettings = field(default_factory=SolverSettings)
    seed: int = 0
    replications: int = 1

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        data = dict(data)
        solver = data.pop("solver", None)
        if isinstance(solver, dict):
            data["solver"] = SolverSettings(**solver)
        elif solver is not None:
            data["solver"] = solver
        pmf = data.get("pmf")
        if pmf is not None:
            data["pmf"] = {int(k): float(v) for k, v in pmf.items()}
        return cls(**data)

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        out = asdict(self)
        if out["pmf"] is not None:
            out["pmf"] = {str(k): v for k, v in out["pmf"].items()}
        return out


@dataclass(frozen=True)
class ValidationResult:
    violations: list[str]
    warnings: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def _degree_distribution(config: ExperimentConfig, even: bool = False):
    if config.pmf is not None:
        return generators.DegreeDistribution.from_pmf(config.pmf)
    return generators.DegreeDistribution.power_law(
        config.tau, k_min=config.k_min, k_max=config.k_max, even_only=even)


def _auto_alpha(config: ExperimentConfig, dist=None) -> float:
    """Default degree threshold for the neighbor condition, per model.

    Branching-process samples use twice the mean size-biased neighbor degree;
    the preferential-attachment limit uses the median point ceil(2m + delta)
    of the dominating neighbor-degree law.
    """
    if config.kind in ("pa", "polya_tree"):
        return float(math.ceil(2 * config.m + config.delta))
    if dist is not None:
        support, probs = limit_trees.size_biased_offspring(dist)
        return 2.0 * math.ceil(float(np.sum((support + 1.0) * probs)))
    return 2.0


def _auto_beta(config: ExperimentConfig, mean_degree: float) -> float:
    c = config.c
    if config.kind == "pa":
        threshold = 2.0 * math.ceil(2 * config.m + config.delta) / (c * (1.0 - c))
    else:
        threshold = 4.0 * mean_degree / (c * (1.0 - c))
    return 1.05 * threshold


def validate_config(config: ExperimentConfig) -> ValidationResult:
    bad: list[str] = []
    warn: list[str] = []

    if config.kind not in KINDS:
        bad.append(f"kind: unknown experiment kind {config.kind!r}; "
                   f"expected one of {', '.join(KINDS)}")
        return ValidationResult(bad, warn)

    if not 0.0 < config.c < 1.0:
        bad.append(f"c: damping must lie strictly inside (0,1), got {config.c}")
    if config.solver.method not in _SOLVER_METHODS:
        bad.append(f"solver.method: unknown method {config.solver.method!r}")
    if config.solver.tol <= 0:
        bad.append(f"solver.tol: must be positive, got {config.solver.tol}")
    if config.replications < 1:
        bad.append(f"replications: must be >= 1, got {config.replications}")
    if config.seed < 0:
        bad.append(f"seed: must be a nonnegative integer, got {config.seed}")
    if not 0.0 < config.epsilon < 1.0:
        bad.append(f"epsilon: must lie in (0,1), got {config.epsilon}")

    graph_kind = config.kind in ("cm", "pa", "counterexample", "directed_ratio")
    tree_kind = config.kind in ("polya_tree", "unimodular_tree")
    if graph_kind and (config.n is None or config.n < 2):
        bad.append(f"n: graph experiments need n >= 2, got {config.n}")
    if tree_kind:
        if config.depth is None or config.depth < 0:
            bad.append(f"depth: tree experiments need depth >= 0, got {config.depth}")
        if config.num_samples is None or config.num_samples < 1:
            bad.append(f"num_samples: need >= 1, got {config.num_samples}")

    needs_degrees = config.kind in ("cm", "counterexample", "unimodular_tree") or (
        config.kind == "directed_ratio" and config.out_degree is None)
    if needs_degrees:
        if config.pmf is None and config.tau is None:
            bad.append(f"{config.kind}: needs a degree law (tau or pmf)")
        elif config.pmf is not None:
            if any(p < 0 for p in config.pmf.values()) or sum(config.pmf.values()) <= 0:
                bad.append("pmf: probabilities must be nonnegative with positive sum")
            if any(k < 1 for k in config.pmf):
                bad.append("pmf: degrees must be >= 1")
            if config.kind == "counterexample" and any(k % 2 for k in config.pmf):
                odd = sorted(k for k in config.pmf if k % 2)
                bad.append(f"pmf: odd degree in support {odd}; the circulant-union "
                           "construction needs even degrees")
        else:
            if config.tau <= 1.0:
                bad.append(f"tau: tail exponent must exceed 1, got {config.tau}")
            if config.k_min < 1 or config.k_max < config.k_min:
                bad.append(f"degree range [{config.k_min}, {config.k_max}] is empty "
                           "or starts below 1")

    if config.kind in ("pa", "polya_tree"):
        if config.m is None or config.m < 1 or int(config.m) != config.m:
            bad.append(f"m: needs a positive integer, got {config.m}")
        elif config.delta <= -config.m:
            bad.append(f"delta: must exceed -m = {-config.m}, got {config.delta}")
        elif config.delta < 0 and config.kind == "polya_tree" \
                and config.max_tree_vertices is None:
            warn.append("delta < 0 puts the limit tree in the infinite-mean-size "
                        "regime; consider setting max_tree_vertices")

    if config.kind == "directed_ratio" and config.out_degree is not None \
            and config.out_degree < 1:
        bad.append(f"out_degree: must be >= 1, got {config.out_degree}")

    if not isinstance(config.beta, str):
        if config.beta <= 0:
            bad.append(f"beta: must be positive, got {config.beta}")
        elif not bad and config.kind in ("cm", "pa"):
            if config.kind == "pa":
                mean_degree = 2.0 * config.m
            else:
                mean_degree = _degree_distribution(config).mean()
            threshold = _auto_beta(config, mean_degree) / 1.05
            if config.beta < threshold:
                warn.append(f"beta = {config.beta} is below the guarantee "
                            f"threshold {threshold:.4g}; the lower-bound ratio "
                            "is not guaranteed there")
    elif config.beta != "auto":
        bad.append(f"beta: must be a number or \"auto\", got {config.beta!r}")

    return ValidationResult(bad, warn)


@dataclass(frozen=True)
class RunManifest:
    out_dir: str
    artifacts: dict[str, list[str]]
    summaries: list[dict]
    wall_time_s: float
    seed: int


def _solve(graph, config: ExperimentConfig):
    method = config.solver.method
    tol = config.solver.tol
    if isinstance(graph, Digraph):
        if method == "dense":
            return pagerank.solve_dense(graph, config.c)
        return pagerank.solve_directed(graph, config.c, tol=tol)
    if method in ("auto", "closed"):
        return pagerank.solve_undirected_closed(graph, config.c, tol=tol)
    if method == "power":
        return pagerank.solve_power_iteration(graph, config.c, tol=tol)
    if method == "dense":
        return pagerank.solve_dense(graph, config.c)
    depth = config.solver.series_depth
    if depth is None:
        depth = math.ceil(math.log(1e-12 / graph.n) / math.log(config.c))
    return pagerank.solve_neumann(graph, config.c, series_depth=depth)


def _graph_artifacts(graph: Graph, pr, config: ExperimentConfig, rep_dir: Path,
                     write_edges: bool = True) -> tuple[dict, dict]:
    files = {}
    if write_edges:
        write_edge_list(rep_dir / "graph.edges", graph)
        files["edges"] = "graph.edges"
    pagerank.write_pagerank_csv(rep_dir / "pagerank.csv", graph, pr)
    files["pagerank"] = "pagerank.csv"

    degrees = graph.degrees.astype(np.float64)
    tails.empirical_ccdf(pr.values).to_csv(rep_dir / "pagerank_tails.csv")
    tails.empirical_ccdf(degrees).to_csv(rep_dir / "degree_tails.csv")
    files["pagerank_tails"] = "pagerank_tails.csv"
    files["degree_tails"] = "degree_tails.csv"

    mean_degree = float(degrees.mean())
    beta = config.beta if not isinstance(config.beta, str) \
        else _auto_beta(config, mean_degree)
    report = tails.ratio_bound_report(pr.values, degrees, beta)
    (rep_dir / "ratio_report.json").write_text(report.to_json() + "\n")
    files["ratio_report"] = "ratio_report.json"

    bound = pagerank.check_degree_bound(pr, graph)
    summary = {
        "n": graph.n,
        "num_edges": graph.num_edges,
        "mean_degree": mean_degree,
        "beta": float(beta),
        "solver": pr.method,
        "residual": pr.residual,
        "mass": float(pr.values.sum()),
        "degree_bound_max_violation": bound.max_violation,
        "degree_bound_holds": bound.holds,
        "upper_ccdf_holds": report.upper_bound_holds,
        "min_window_ratio": report.min_window_ratio,
    }
    return files, summary


def _run_cm(config: ExperimentConfig, rng, rep_dir: Path):
    dist = _degree_distribution(config)
    degrees = generators.sample_degrees(dist, config.n, rng)
    graph = generators.configuration_model(degrees, rng)
    pr = _solve(graph, config)
    return _graph_artifacts(graph, pr, config, rep_dir)


def _run_pa(config: ExperimentConfig, rng, rep_dir: Path):
    graph = generators.preferential_attachment(config.n, config.m, config.delta, rng)
    pr = _solve(graph, config)
    files, summary = _graph_artifacts(graph, pr, config, rep_dir)
    degrees = graph.degrees.astype(np.float64)
    hill = tails.hill_estimator(degrees, k_top=max(2, min(1000, graph.n // 10)))
    summary["hill_tail_index"] = hill.estimate
    summary["hill_std_error"] = hill.std_error
    summary["tail_index_target"] = config.delta / config.m + 2.0
    return files, summary


def _run_counterexample(config: ExperimentConfig, rng, rep_dir: Path):
    del rng  # the construction is deterministic
    dist = _degree_distribution(config, even=True)
    graph, info = generators.counterexample_graph(dist, config.n)
    pr = _solve(graph, config)
    files, summary = _graph_artifacts(graph, pr, config, rep_dir)

    alpha = config.alpha if config.alpha is not None else float(max(info.component_degrees))
    probe = tails.condition_probe(
        graph.degrees, high_degree_neighbor_counts(graph, alpha),
        alpha, config.epsilon,
        thresholds=np.arange(0, max(info.component_degrees)))
    (rep_dir / "condition_probe.json").write_text(probe.to_json() + "\n")
    files["condition_probe"] = "condition_probe.json"

    deviation = np.abs(pr.values - 1.0)
    summary.update({
        "components": [[int(k), int(s)] for k, s in
                       zip(info.component_degrees, info.component_sizes)],
        "n_built": info.n_built,
        "frac_pagerank_off_one": float((deviation > 0.1).mean()),
        "max_pagerank_deviation": float(deviation.max()),
    })
    (rep_dir / "structure.json").write_text(json.dumps({
        "component_degrees": [int(k) for k in info.component_degrees],
        "component_sizes": [int(s) for s in info.component_sizes],
        "offsets": [int(o) for o in info.offsets],
        "bridges": [[int(u), int(v)] for u, v in info.bridges],
        "threshold": int(info.threshold),
        "n_built": int(info.n_built),
    }, sort_keys=True) + "\n")
    files["structure"] = "structure.json"
    return files, summary


def _run_tree(config: ExperimentConfig, rng, rep_dir: Path):
    if config.kind == "polya_tree":
        params = limit_trees.PolyaParams(config.m, config.delta)
        dist = None

        def draw():
            return limit_trees.sample_polya_point_tree(
                params, config.depth, seed=rng,
                max_vertices=config.max_tree_vertices)
    else:
        dist = _degree_distribution(config)

        def draw():
            return limit_trees.sample_unimodular_tree(dist, config.depth, seed=rng)

    alpha = config.alpha if config.alpha is not None else _auto_alpha(config, dist)
    rows = []
    root_degrees = np.empty(config.num_samples, dtype=np.int64)
    high_counts = np.empty(config.num_samples, dtype=np.int64)
    lowers = np.empty(config.num_samples)
    for i in range(config.num_samples):
        tree = draw()
        lower = limit_trees.root_pagerank_on_tree(tree, config.c)
        bound = limit_trees.truncation_tail_bound(tree, config.c)
        rows.append((i, tree.root_degree, lower, bound))
        root_degrees[i] = tree.root_degree
        high_counts[i] = limit_trees.root_high_degree_count(tree, alpha)
        lowers[i] = lower

    limit_trees.write_root_statistics_csv(rep_dir / "root_statistics.csv", rows)
    files = {"root_statistics": "root_statistics.csv"}

    grid = 2 ** np.arange(0, max(1, int(math.log2(max(1, root_degrees.max()))) + 1))
    probe = tails.condition_probe(root_degrees, high_counts, alpha,
                                  config.epsilon, thresholds=grid)
    (rep_dir / "condition_probe.json").write_text(probe.to_json() + "\n")
    files["condition_probe"] = "condition_probe.json"

    mean = float(lowers.mean())
    se = float(lowers.std(ddof=1) / math.sqrt(lowers.size)) if lowers.size > 1 else 0.0
    summary = {
        "num_samples": config.num_samples,
        "depth": config.depth,
        "alpha": float(alpha),
        "mean_root_pagerank_lower": mean,
        "std_error": se,
        "series_mean_target": 1.0 - config.c ** (config.depth + 1),
        "mean_bound_ok": mean <= 1.0 + 3.0 * se,
        "probe_decay_factor": probe.decay_factor(),
    }
    return files, summary


def _run_directed(config: ExperimentConfig, rng, rep_dir: Path):
    if config.out_degree is not None:
        digraph = generators.random_out_digraph(config.n, config.out_degree, rng)
    else:
        dist = _degree_distribution(config)
        degrees = generators.sample_degrees(dist, config.n, rng)
        digraph = generators.eulerian_digraph(degrees, rng)
    pr = pagerank.solve_dense(digraph, config.c) if config.solver.method == "dense" \
        else pagerank.solve_directed(digraph, config.c, tol=config.solver.tol)

    write_directed_edge_list(rep_dir / "digraph.edges", digraph)
    pagerank.write_directed_pagerank_csv(rep_dir / "pagerank.csv", digraph, pr)
    files = {"edges": "digraph.edges", "pagerank": "pagerank.csv"}

    check = pagerank.check_directed_ratio_bound(digraph, pr, config.c)
    summary = {
        "n": digraph.n,
        "degree_ratio": check.degree_ratio,
        "min_in_degree": check.min_in_degree,
        "hypothesis_met": check.hypothesis_met,
        "bound_max_violation": check.max_violation,
        "bound_holds": check.holds,
        "mass": float(pr.values.sum()),
    }
    (rep_dir / "ratio_check.json").write_text(json.dumps(
        summary, sort_keys=True) + "\n")
    files["ratio_check"] = "ratio_check.json"
    return files, summary


_RUNNERS = {
    "cm": _run_cm,
    "pa": _run_pa,
    "counterexample": _run_counterexample,
    "polya_tree": _run_tree,
    "unimodular_tree": _run_tree,
    "directed_ratio": _run_directed,
}


def run_experiment(config: ExperimentConfig, out_dir,
                   threads: int = 1) -> RunManifest:
    """Execute all replications of ``config`` into ``out_dir``.

    Raises ``BadParametersError`` listing every validation violation when the
    config is invalid; validation warnings are recorded in the manifest.
    """
    result = validate_config(config)
    if not result.ok:
        raise BadParametersError("; ".join(result.violations))

    t0 = time.perf_counter()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    reps = config.replications
    rep_dirs = [out if reps == 1 else out / f"rep{i:03d}" for i in range(reps)]
    for d in rep_dirs:
        d.mkdir(parents=True, exist_ok=True)

    runner = _RUNNERS[config.kind]

    def one(i: int):
        rng = stream(config.seed, config.kind, i)
        return runner(config, rng, rep_dirs[i])

    if threads > 1 and reps > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(one, range(reps)))
    else:
        outcomes = [one(i) for i in range(reps)]

    artifacts = {}
    summaries = []
    for i, (files, summary) in enumerate(outcomes):
        prefix = "" if reps == 1 else f"rep{i:03d}/"
        for name, rel in files.items():
            artifacts.setdefault(name, []).append(prefix + rel)
        summaries.append(summary)

    wall = time.perf_counter() - t0
    manifest = RunManifest(out_dir=str(out), artifacts=artifacts,
                           summaries=summaries, wall_time_s=wall,
                           seed=config.seed)
    (out / "manifest.json").write_text(json.dumps({
        "config": config.to_dict(),
        "artifacts": artifacts,
        "summaries": summaries,
        "validation_warnings": result.warnings,
        "wall_time_s": wall,
    }, sort_keys=True, indent=1) + "\n")
    return manifest
