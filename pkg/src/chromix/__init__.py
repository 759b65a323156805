"""Homomorphisms of (n, m)-coloured mixed graphs."""

__version__ = "0.1.0"

from .core import (
    DuplicateAdjacencyError,
    FormatSyntaxError,
    GraphBuilder,
    GraphError,
    LoopError,
    NmGraph,
    Signature,
    TypeRangeError,
    UndirectedGraph,
    dual,
    neighbors,
    parse,
    parse_undirected,
    serialize,
    serialize_undirected,
    set_adjacency,
    underlying,
)
from .generators import GenSpec, kclique_gadget, random_low_mad, random_partial_2tree
from .solver import (
    BudgetExhausted,
    QuotientCertificate,
    SearchConfig,
    chromatic_oracle,
    circular_hom,
    elimination_order,
    exact_chromatic,
    find_hom,
    two_tree_hom,
)
from .sparsity import (
    Coloring,
    ForestDecomposition,
    acyclic_coloring_construct,
    arboricity,
    check_arb_bound,
    digit_graphs,
    mad,
)
from .targets import complete_augment, t03, t11, walecki_cycle, walecki_target
from .verify import (
    ConflictRelation,
    Homomorphism,
    Verdict,
    conflict_relation,
    expansion_ok,
    forbidden_config_free,
    has_p21,
    is_acyclic_coloring,
    is_homomorphism,
    regularity_check,
)
