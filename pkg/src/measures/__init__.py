"""Network measures: centrality, influence diffusion, community detection and concealment."""

from .centrality import (
    CentralityKind,
    Ranking,
    RankEntry,
    betweenness_centrality,
    centralities,
    centrality_of,
    closeness_centrality,
    degree_centrality,
    rank_values,
    ranking,
    select_source_node,
    source_ranks,
)
from .community import (
    CommunityError,
    CommunityStructure,
    Detector,
    DetectorKind,
    detect,
    girvan_newman,
    greedy_cnm,
    louvain,
    modularity,
)
from .concealment import ConcealmentParams, HiddenGroup, mu, mu_double_prime, mu_prime
from .influence import (
    CascadeResult,
    InfluenceConfig,
    InfluenceError,
    InfluenceEstimate,
    InfluenceModel,
    estimate_influence,
    exact_influence_ic,
    exact_influence_lt,
    relative_influence,
    simulate_cascade,
)

__all__ = [
    "CascadeResult",
    "CentralityKind",
    "CommunityError",
    "CommunityStructure",
    "ConcealmentParams",
    "Detector",
    "DetectorKind",
    "HiddenGroup",
    "InfluenceConfig",
    "InfluenceError",
    "InfluenceEstimate",
    "InfluenceModel",
    "RankEntry",
    "Ranking",
    "betweenness_centrality",
    "centralities",
    "centrality_of",
    "closeness_centrality",
    "degree_centrality",
    "detect",
    "estimate_influence",
    "exact_influence_ic",
    "exact_influence_lt",
    "girvan_newman",
    "greedy_cnm",
    "louvain",
    "modularity",
    "mu",
    "mu_double_prime",
    "mu_prime",
    "rank_values",
    "ranking",
    "relative_influence",
    "select_source_node",
    "simulate_cascade",
    "source_ranks",
]
