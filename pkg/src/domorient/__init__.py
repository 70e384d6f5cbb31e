"""Strong orientations of bridgeless graphs whose directed diameter is
bounded by a function of the domination number.

The main entry point is :func:`domorient.orient.orient`; the exact oracles
live in :mod:`domorient.oracle`.
"""

from .altfind import (
    AlternativeSubgraph,
    brute_force_alternative,
    classify_h01_h02,
    find_alternative_from,
    max_alternative,
    maximal_typed_path,
)
from .domination import (
    DominatingSet,
    Provenance,
    StandardPair,
    minimum_dominating_set,
    pull_back,
    standardize,
)
from .graph import (
    Orientation,
    Role,
    UndirectedMultigraph,
    blocks,
    bridges,
    directed_distance,
    is_strong,
    strong_orientation,
    subdivide_edge,
)
from .metrics import (
    DistanceReport,
    class_distances,
    distance_report,
    lemma1_check,
    m_value,
    strong_distance,
    theta,
)
from .oracle import (
    ExactResult,
    exact_oriented_diameter,
    exact_oriented_strong_diameter,
    gen_extremal,
    gen_random_bridgeless,
    probe_two_connected,
)
from .orient import BoundReport, OrientationPlan, extend_cover, formula_bound, orient
from .quotient import QuotientMap, compose, s_quotient, sdiam_compose_bound

__all__ = [
    "AlternativeSubgraph",
    "BoundReport",
    "DistanceReport",
    "DominatingSet",
    "ExactResult",
    "Orientation",
    "OrientationPlan",
    "Provenance",
    "QuotientMap",
    "Role",
    "StandardPair",
    "UndirectedMultigraph",
    "blocks",
    "bridges",
    "brute_force_alternative",
    "class_distances",
    "classify_h01_h02",
    "compose",
    "directed_distance",
    "distance_report",
    "exact_oriented_diameter",
    "exact_oriented_strong_diameter",
    "extend_cover",
    "find_alternative_from",
    "formula_bound",
    "gen_extremal",
    "gen_random_bridgeless",
    "is_strong",
    "lemma1_check",
    "m_value",
    "max_alternative",
    "maximal_typed_path",
    "minimum_dominating_set",
    "orient",
    "probe_two_connected",
    "pull_back",
    "s_quotient",
    "sdiam_compose_bound",
    "standardize",
    "strong_distance",
    "strong_orientation",
    "subdivide_edge",
    "theta",
]
