"""Random mappings, functional-graph exploration, tree bijections, and
Monte Carlo verification around Cayley's formula.
"""

from .core import (
    NO_PARENT,
    CycleStructure,
    Mapping,
    RootedTree,
    cycle_structure,
    iterate,
    mapping_to_dot,
    tree_to_dot,
    unique_cyclic_vertex,
)
from .exploration import (
    Closure,
    ExplorationTrace,
    FixedOrder,
    RoundRecord,
    SeededRandomOrder,
    SelectionStrategy,
    SmallestLabel,
    conditional_event_probabilities,
    cycle_count_from_trace,
    explore,
    has_unique_cyclic_from_trace,
    reconstruct_mapping,
    telescoping_probability,
    trace_to_dot,
)
from .bijection import (
    DoublyRootedTree,
    PruferSequence,
    joyal_decode,
    joyal_encode,
    mapping_to_rooted_tree,
    prufer_decode,
    prufer_encode,
    rooted_tree_to_mapping,
    tree_edges,
)
from .enumeration import (
    ExactCounts,
    enumerate_mappings,
    exact_collision_pmf,
    exact_counts,
    exact_height_pmf,
)
from .montecarlo import (
    Estimate,
    Histogram,
    RngStream,
    check_round_conditionals,
    chi_square_statistic,
    estimate_unique_cyclic,
    make_estimate,
    sample_mapping,
    two_sample_chi_square,
    wilson_interval,
)
from .heights import (
    HeightSample,
    LawEqualityReport,
    law_equality_report,
    sample_collision_count,
    sample_height_plus_one,
    sample_rooted_tree_prufer,
    sample_rooted_tree_rejection,
)

__version__ = "0.1.0"

__all__ = [
    "NO_PARENT",
    "CycleStructure",
    "Mapping",
    "RootedTree",
    "cycle_structure",
    "iterate",
    "mapping_to_dot",
    "tree_to_dot",
    "unique_cyclic_vertex",
    "Closure",
    "ExplorationTrace",
    "FixedOrder",
    "RoundRecord",
    "SeededRandomOrder",
    "SelectionStrategy",
    "SmallestLabel",
    "conditional_event_probabilities",
    "cycle_count_from_trace",
    "explore",
    "has_unique_cyclic_from_trace",
    "reconstruct_mapping",
    "telescoping_probability",
    "trace_to_dot",
    "DoublyRootedTree",
    "PruferSequence",
    "joyal_decode",
    "joyal_encode",
    "mapping_to_rooted_tree",
    "prufer_decode",
    "prufer_encode",
    "rooted_tree_to_mapping",
    "tree_edges",
    "ExactCounts",
    "enumerate_mappings",
    "exact_collision_pmf",
    "exact_counts",
    "exact_height_pmf",
    "Estimate",
    "Histogram",
    "RngStream",
    "check_round_conditionals",
    "chi_square_statistic",
    "estimate_unique_cyclic",
    "make_estimate",
    "sample_mapping",
    "two_sample_chi_square",
    "wilson_interval",
    "HeightSample",
    "LawEqualityReport",
    "law_equality_report",
    "sample_collision_count",
    "sample_height_plus_one",
    "sample_rooted_tree_prufer",
    "sample_rooted_tree_rejection",
    "__version__",
]
