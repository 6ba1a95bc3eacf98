"""Exact tree-width with witness tree-decompositions and dual bramble
certificates, plus independent verifiers and PACE-format I/O."""

from ._kernels import BACKEND
from .bramble import (
    Bramble,
    CoverWitness,
    find_covering_bag,
    min_cover,
    parse_br,
    verify_bramble,
    write_br,
)
from .decomposition import (
    Flap,
    PartialDecomposition,
    TreeDecomposition,
    Violation,
    as_partial,
    flaps,
    glue,
    parse_td,
    realize_flap,
    star_decomposition,
    verify_td,
    width,
    write_td,
)
from .duality import (
    DualityCertificates,
    FlapFamily,
    condition_i_holds,
    duality_certificates,
    extract_bramble,
    flap_universe,
    is_k_flap,
    minimalize,
    synthesize_bramble,
    treewidth,
    treewidth_dp_oracle,
)
from .graph import (
    Graph,
    bit_list,
    bits,
    components,
    is_connected_set,
    mask_of,
    neighborhood,
    parse_gr,
    popcount,
    touches,
    write_gr,
)
from .separation import (
    DisjointPaths,
    Separation,
    disjoint_paths_to_separator,
    merge_flaps_lemma1,
    min_xy_separator,
    restrict_to_side,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Bramble",
    "CoverWitness",
    "DisjointPaths",
    "DualityCertificates",
    "Flap",
    "FlapFamily",
    "Graph",
    "PartialDecomposition",
    "Separation",
    "TreeDecomposition",
    "Violation",
    "as_partial",
    "bit_list",
    "bits",
    "components",
    "condition_i_holds",
    "disjoint_paths_to_separator",
    "duality_certificates",
    "extract_bramble",
    "find_covering_bag",
    "flap_universe",
    "flaps",
    "glue",
    "is_connected_set",
    "is_k_flap",
    "mask_of",
    "merge_flaps_lemma1",
    "min_cover",
    "min_xy_separator",
    "minimalize",
    "neighborhood",
    "parse_br",
    "parse_gr",
    "parse_td",
    "popcount",
    "realize_flap",
    "restrict_to_side",
    "star_decomposition",
    "synthesize_bramble",
    "touches",
    "treewidth",
    "treewidth_dp_oracle",
    "verify_bramble",
    "verify_td",
    "width",
    "write_br",
    "write_gr",
    "write_td",
]
