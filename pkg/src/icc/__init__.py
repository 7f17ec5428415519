"""Index-coding toolkit built around the interlinked-cycle-cover scheme.

The library models a unicast index-coding instance as a side-information
digraph, constructs scalar linear codes with the interlinked-cycle-cover
scheme and its competitors (clique cover, cycle cover, partial-clique cover,
fractional and super-vertex extensions), computes the MAIS lower bound,
certifies optimality where the bound is met, and verifies every constructed
code with an independent decodability oracle.
"""

from .bounds import (
    OptimalityCertificate,
    certify_optimal,
    find_figure_of_eight,
    mais,
    minimal_partial_clique_check,
    three_ic_from_figure_eight,
)
from .codec import (
    CodedSymbol,
    IndexCode,
    MessageBlock,
    clique_decode,
    clique_encode,
    cycle_decode,
    cycle_encode,
    decodability_oracle,
    decode_graph,
    decode_with_side_info,
    encode_graph,
    eicc_encode,
    icc_decode,
    icc_encode,
    partial_clique_decode,
    partial_clique_encode,
    random_block,
)
from .errors import BidirectionalArcError, CapExceededError, SchemeInvariantError
from .families import (
    FamilySpec,
    gen_class_a,
    gen_example4,
    gen_fig2a,
    gen_fig8,
    gen_random,
    generate,
)
from .galois import MdsMatrix, field_inv, field_mul, field_pow, solve_linear, vandermonde_mds
from .graphs import Digraph, GraphFormatError, format_graph_text, parse_graph_text
from .schemes import (
    FractionalSolution,
    Partition,
    SchemeReport,
    clique_cover_number,
    cycle_cover_number,
    eicc_length,
    flcn_bidirection_free,
    fractional_icc,
    full_report,
    icc_length,
    partial_clique_number,
)
from .structures import (
    ICStructure,
    IcViolation,
    RootedTree,
    StructureSearch,
    collapse_super_vertices,
    enumerate_i_paths,
    extract_tree,
    find_ic_structures,
    find_super_vertices,
    validate_ic,
)

__version__ = "0.1.0"
