"""Prime ideal sum graphs of small finite commutative rings.

Build rings from a tiny spec language, enumerate their ideals, form the
prime ideal sum graph, and decide whether it is a line graph (or the
complement of one) by two independent algorithms.
"""

from .classifier import Prediction, Report, census, classify, classify_coline, classify_line, load_catalog, verify, verify_spec
from .graph import Graph, complement, induced, is_isomorphic_small, line_graph, make_named_graph, pis_graph
from .lattice import (
    Ideal,
    IdealLattice,
    LocalProfile,
    decompose_local,
    enumerate_ideals,
    ideal_product,
    ideal_sum,
    is_prime_ideal,
    local_profile,
    principal_ideal,
)
from .recognition import (
    LineVerdict,
    find_forbidden_induced,
    forbidden_library,
    is_complement_line_graph,
    is_line_graph,
    krausz_partition,
    root_graph_from_partition,
)
from .ring import FiniteRing, build_ring, load_table_ring, units
from .ringspec import format_ring_spec, parse_ring_spec

__version__ = "0.1.0"

__all__ = [
    "FiniteRing",
    "Graph",
    "Ideal",
    "IdealLattice",
    "LineVerdict",
    "LocalProfile",
    "Prediction",
    "Report",
    "build_ring",
    "census",
    "classify",
    "classify_coline",
    "classify_line",
    "complement",
    "decompose_local",
    "enumerate_ideals",
    "find_forbidden_induced",
    "forbidden_library",
    "format_ring_spec",
    "ideal_product",
    "ideal_sum",
    "induced",
    "is_complement_line_graph",
    "is_isomorphic_small",
    "is_line_graph",
    "is_prime_ideal",
    "krausz_partition",
    "line_graph",
    "load_catalog",
    "load_table_ring",
    "local_profile",
    "make_named_graph",
    "parse_ring_spec",
    "pis_graph",
    "principal_ideal",
    "root_graph_from_partition",
    "units",
    "verify",
    "verify_spec",
]
