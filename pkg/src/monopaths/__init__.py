"""Monochromatic path, cycle and connected-matching partitions of 2-edge-coloured complete multipartite graphs."""

from .graph import *  # noqa: F401,F403
from .kernels import BACKEND
from .bipartite import (
    SplitDistanceReport,
    SplitWitness,
    detect_split,
    is_proper_split,
    partition_bipartite_paths,
    partition_two_monochromatic_paths,
    split_distance,
    split_three_paths,
)
from .paths import complete_graph_partition, find_cross_edge_on_path, partition_path_cycle, partition_paths
from .matchings import (
    ConnectedMatching,
    RobustParams,
    cover_matchings_exact,
    cover_matchings_robust_bipartite,
    cover_matchings_robust_tripartite,
    half_degree_subgraph,
)
from .cycles import split_three_cycle_cover, two_cycle_partition_search

__version__ = "0.1.0"
