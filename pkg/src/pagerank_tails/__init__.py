"""Graph-normalized PageRank versus degree tails.

The package builds random multigraphs (configuration model, preferential
attachment, a circulant-union construction), their limiting rooted trees,
and PageRank solvers, plus the empirical tooling to compare the PageRank
distribution against the degree distribution: the pointwise upper bound
R_i <= d_i on undirected graphs, tail-ratio lower-bound reports, and the
high-degree-neighbors condition that separates the models where the lower
bound holds from the construction where it fails.
"""

__version__ = "0.1.0"

from .errors import (BadParametersError, DanglingVertexError, EmptySampleError,
                     InfiniteMeanError, InsufficientSampleError,
                     IsolatedVertexError, NotConvergedError, OddStubCountError,
                     OutOfRangeError, SampleSizeLimitError,
                     UnreachableScheduleError)
from .graphs import (Digraph, Graph, RootSample, degree_at_least,
                     digraph_from_edge_list, from_edge_list,
                     high_degree_neighbor_counts, read_directed_edge_list,
                     read_edge_list, uniform_root, uniform_roots,
                     write_directed_edge_list, write_edge_list)
from .pagerank import (Damping, DegreeBoundReport, DirectedRatioReport,
                       PageRankVector, check_degree_bound,
                       check_directed_ratio_bound, read_pagerank_csv,
                       solve_dense, solve_directed, solve_neumann,
                       solve_power_iteration, solve_undirected_closed,
                       write_directed_pagerank_csv, write_pagerank_csv)
from .generators import (CounterexampleInfo, DegreeDistribution, circulant,
                         configuration_model, counterexample_graph,
                         eulerian_digraph, preferential_attachment,
                         random_out_digraph, sample_degrees)
from .limit_trees import (LABEL_NONE, LABEL_OLD, LABEL_YOUNG, PolyaParams,
                          TruncatedRootedTree, root_children,
                          root_high_degree_count, root_pagerank_on_tree,
                          sample_polya_point_tree, sample_unimodular_tree,
                          size_biased_offspring, tilde_degree_pmf,
                          tilde_degree_tail, truncation_tail_bound,
                          write_root_statistics_csv, younger_age_cdf,
                          older_age_cdf)
from .tails import (ConditionProbe, HillEstimate, RatioReport, TailReport,
                    condition_probe, empirical_ccdf, hill_estimator,
                    ratio_bound_report)
from .experiments import (ExperimentConfig, RunManifest, SolverSettings,
                          ValidationResult, run_experiment, validate_config)
from . import rng

__all__ = [
    "__version__",
    # errors
    "BadParametersError", "DanglingVertexError", "EmptySampleError",
    "InfiniteMeanError", "InsufficientSampleError", "IsolatedVertexError",
    "NotConvergedError", "OddStubCountError", "OutOfRangeError",
    "SampleSizeLimitError", "UnreachableScheduleError",
    # graphs
    "Graph", "Digraph", "RootSample", "from_edge_list",
    "digraph_from_edge_list", "degree_at_least", "high_degree_neighbor_counts",
    "uniform_root", "uniform_roots", "read_edge_list", "write_edge_list",
    "read_directed_edge_list", "write_directed_edge_list",
    # pagerank
    "Damping", "PageRankVector", "DegreeBoundReport", "DirectedRatioReport",
    "solve_power_iteration", "solve_neumann", "solve_undirected_closed",
    "solve_directed", "solve_dense", "check_degree_bound",
    "check_directed_ratio_bound", "write_pagerank_csv",
    "write_directed_pagerank_csv", "read_pagerank_csv",
    # generators
    "DegreeDistribution", "CounterexampleInfo", "sample_degrees",
    "configuration_model", "preferential_attachment", "circulant",
    "counterexample_graph", "eulerian_digraph", "random_out_digraph",
    # limit trees
    "LABEL_NONE", "LABEL_YOUNG", "LABEL_OLD", "TruncatedRootedTree",
    "PolyaParams", "size_biased_offspring", "sample_unimodular_tree",
    "sample_polya_point_tree", "root_pagerank_on_tree",
    "truncation_tail_bound", "tilde_degree_pmf", "tilde_degree_tail",
    "root_children", "root_high_degree_count", "write_root_statistics_csv",
    # tails
    "TailReport", "HillEstimate", "RatioReport", "ConditionProbe",
    "empirical_ccdf", "hill_estimator", "ratio_bound_report",
    "condition_probe",
    # experiments
    "ExperimentConfig", "SolverSettings", "ValidationResult", "RunManifest",
    "validate_config", "run_experiment",
    # seeding
    "rng",
]
