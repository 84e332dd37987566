"""Placement delivery arrays for centralized coded caching.

Build base arrays from subset-graph colorings, combine them with the
same-colors, star, tensor, and cycle products, check every result against the
brute-force validators, and run the placement/delivery/decoding protocol on
bytes to prove the scheme works.
"""

from .analytics import (
    SchemeRow,
    TableRow,
    binary_entropy,
    binomial,
    block_code_cycle_params,
    block_code_params,
    cycle_family_params,
    render_csv,
    restricted_family_params,
    star_intersection_params,
    stirling_binomial_estimate,
    table_report,
)
from .combinators import (
    CombineError,
    combine_same_colors,
    combine_same_colors_fold,
    cycle_product,
    same_colors_claimed_params,
    star_product,
    tensor_product,
)
from .core import (
    EquivalenceResult,
    InvalidPdaError,
    ParamRecord,
    PdaArray,
    PdaError,
    PdaFormatError,
    ValidationReport,
    Violation,
    equivalent,
    params,
    read_pda,
    validate,
    write_pda,
)
from .families import (
    FamilyParameterError,
    FamilySpec,
    disjoint_union_coloring,
    intersection_t_coloring,
    restricted_combined_family,
    star_graph_coloring,
    subsets,
    trivial_pda,
)
from .graphs import (
    ColoredBipartiteGraph,
    ColoredGraph,
    Graph,
    GraphError,
    NonConstantDegreeError,
    NotStrongError,
    Orientation,
    VertexColoring,
    as_general_graph,
    coloring_to_pda,
    cycle,
    cycle_strong_coloring,
    cycle_vertex_coloring,
    is_strong_coloring,
    opposing_orientations,
    pda_to_coloring,
    split_bipartite,
    two_coloring,
)
from .scheme import (
    BroadcastLog,
    CacheState,
    DecodingError,
    FileLibrary,
    SchemeError,
    Slot,
    decode,
    deliver,
    exhaustive_demands,
    place,
    random_demands,
    verify_roundtrip,
)

__version__ = "0.1.0"
