"""Scattered rich clubs of high-centrality vertices, snowball-sampling
prediction, and sampling-based edge-removal attacks on centrality rankings."""

from .attack import AttackConfig, AttackReport, candidate_edges, jaccard, run_attack
from .centrality import (
    CentralityScores,
    HighCentralitySet,
    RankedSet,
    betweenness_all,
    closeness_all,
    ground_truth,
    top_k,
)
from .cores import CoreDecomposition, core_decompose, high_core_vertices
from .graph import (
    Graph,
    ParseError,
    bfs_distances,
    clustering_all,
    clustering_coefficient,
    format_edge_list,
    neighbors,
    parse_edge_list,
    read_edge_list,
)
from .richclub import ClusterSet, ScatterednessReport, build_clusters, scatteredness
from .sampler import (
    PredictionResult,
    SamplerConfig,
    expansion_ratio,
    pick_seed,
    predict_high_centrality,
    score_prediction,
    snowball_sample,
)

__version__ = "0.1.0"
