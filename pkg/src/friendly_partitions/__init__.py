"""Internal (friendly) partitions, cohesive sets and Cayley graph classification."""
from .cayley import (
    ClassificationOutcome,
    CyclicSpec5,
    abelian_internal_partition,
    classify_near_complete,
    cyclic5_internal,
    enumerate_abelian_cayley,
    paley_scan,
    power_of_two_scan,
)
from .certificate import Certificate
from .cohesion import (
    BoundedSubgraph,
    IntersectionReport,
    augment_to_min_degree,
    bounded_degree_dense_subgraph,
    f_lower_bound,
    min_intersection_pair,
    mu_root,
)
from .engine import (
    BudgetExhausted,
    ban_linial_cohesive,
    exhaustive_internal,
    extend_to_partition,
    km_bisection,
    local_switch,
    search_internal,
    verify_cohesive,
    verify_internal,
)
from .estimators import CohesiveSetFinder, InternalPartition, KMBisection, MinIntersectionPair, check_graph
from .generators import (
    CayleySpec,
    gen_abelian_cayley,
    gen_circulant,
    gen_paley,
    gen_random_regular,
    gen_standard,
    gen_switching_hard,
)
from .graph import Bipartition, ContractError, Graph, GraphFormatError, k_core, load_graph, save_graph

__all__ = [
    "abelian_internal_partition",
    "augment_to_min_degree",
    "ban_linial_cohesive",
    "Bipartition",
    "bounded_degree_dense_subgraph",
    "BoundedSubgraph",
    "BudgetExhausted",
    "CayleySpec",
    "Certificate",
    "check_graph",
    "ClassificationOutcome",
    "classify_near_complete",
    "CohesiveSetFinder",
    "ContractError",
    "cyclic5_internal",
    "CyclicSpec5",
    "enumerate_abelian_cayley",
    "exhaustive_internal",
    "extend_to_partition",
    "f_lower_bound",
    "gen_abelian_cayley",
    "gen_circulant",
    "gen_paley",
    "gen_random_regular",
    "gen_standard",
    "gen_switching_hard",
    "Graph",
    "GraphFormatError",
    "InternalPartition",
    "IntersectionReport",
    "k_core",
    "km_bisection",
    "KMBisection",
    "load_graph",
    "local_switch",
    "min_intersection_pair",
    "MinIntersectionPair",
    "mu_root",
    "paley_scan",
    "power_of_two_scan",
    "save_graph",
    "search_internal",
    "verify_cohesive",
    "verify_internal",
]

__version__ = "0.1.0"
