"""Voronoi cells of the integer flow and cut lattices of a multigraph, their
face posets, quotients and covering radii, computed in exact arithmetic."""

from .config import DEFAULT_CAPS, Caps
from .covering import (ExcessFunction, covering_number_cut, covering_number_flow, excess_feasible,
                       realizable_excesses, well_balanced_search)
from .cut_voronoi import CutCell, cut_face_poset_combinatorial, cut_face_poset_geometric, verify_cut_side
from .errors import (DisconnectedGraphError, GraphError, GraphSyntaxError, LatflowError, ResourceLimitError,
                     VerificationError)
from .graph import Circuit, Multigraph, OrientedSubgraph, cycle_basis, genus
from .graphio import parse_graph_file, parse_graph_text
from .orientations import enumerate_cac, enumerate_sc, quotient_cac, quotient_sc
from .polytope import RationalPolytope, double_description
from .posets import GradedPoset, check_isomorphism, poset_isomorphic
from .voronoi import FlowCell, face_poset_combinatorial, face_poset_geometric, verify_flow_side

__all__ = [
    "Caps", "DEFAULT_CAPS",
    "ExcessFunction", "covering_number_cut", "covering_number_flow", "excess_feasible", "realizable_excesses",
    "well_balanced_search",
    "CutCell", "cut_face_poset_combinatorial", "cut_face_poset_geometric", "verify_cut_side",
    "DisconnectedGraphError", "GraphError", "GraphSyntaxError", "LatflowError", "ResourceLimitError",
    "VerificationError",
    "Circuit", "Multigraph", "OrientedSubgraph", "cycle_basis", "genus",
    "parse_graph_file", "parse_graph_text",
    "enumerate_cac", "enumerate_sc", "quotient_cac", "quotient_sc",
    "RationalPolytope", "double_description",
    "GradedPoset", "check_isomorphism", "poset_isomorphic",
    "FlowCell", "face_poset_combinatorial", "face_poset_geometric", "verify_flow_side",
]
