"""Contact loci and monodromy Floer census of plane curve singularities.

The pipeline: parse a branch-parametrized curve germ, build the dual
graph of its minimal embedded resolution, refine it until adjacent
multiplicities exceed a chosen contact order m, census both the
restricted contact locus and the fixed families of the deformed
monodromy iterate, and compare the two graded dimension tables under
the degree shift 2m + 1.
"""

from .census import (
    ContactComponent,
    EndCell,
    GradedDims,
    RuptureCell,
    TrunkCell,
    contact_components,
    euler_characteristic_c,
    hc_graded_dims,
)
from .correspondence import (
    PipelineResult,
    VerificationReport,
    piecewise_check,
    run_pipeline,
    verify,
)
from .curves import (
    BranchInvariants,
    CurveError,
    CurveSpec,
    CurveSyntaxError,
    NonReducedError,
    PuiseuxBranch,
    TruncationError,
    characteristic_data,
    contact_order,
    contact_profile,
    intersection_multiplicity,
    parse_curve,
    parse_curve_file,
)
from .decomposition import End, GraphDecomposition, Trunk, classify
from .floer import (
    FiberPiece,
    FixedFamily,
    fiber_pieces,
    fixed_families,
    hf_graded_dims,
    lefschetz_number,
    milnor_number,
    relative_homology_dims,
)
from .resolution import (
    DivisorLabel,
    DivisorNode,
    DualGraph,
    belongs_to_branch,
    branch_multiplicity,
    build_minimal_graph,
    euclid_label,
    graph_from_json_dict,
    iota,
    m_separating_refinement,
    nu_from_pairs,
    to_dot,
)

__version__ = "1.0.0"

__all__ = [
    "BranchInvariants",
    "ContactComponent",
    "CurveError",
    "CurveSpec",
    "CurveSyntaxError",
    "DivisorLabel",
    "DivisorNode",
    "DualGraph",
    "End",
    "EndCell",
    "FiberPiece",
    "FixedFamily",
    "GradedDims",
    "GraphDecomposition",
    "NonReducedError",
    "PipelineResult",
    "PuiseuxBranch",
    "RuptureCell",
    "TruncationError",
    "Trunk",
    "TrunkCell",
    "VerificationReport",
    "belongs_to_branch",
    "branch_multiplicity",
    "build_minimal_graph",
    "characteristic_data",
    "classify",
    "contact_components",
    "contact_order",
    "contact_profile",
    "euclid_label",
    "euler_characteristic_c",
    "fiber_pieces",
    "fixed_families",
    "graph_from_json_dict",
    "hc_graded_dims",
    "hf_graded_dims",
    "intersection_multiplicity",
    "iota",
    "lefschetz_number",
    "m_separating_refinement",
    "milnor_number",
    "nu_from_pairs",
    "parse_curve",
    "parse_curve_file",
    "piecewise_check",
    "relative_homology_dims",
    "run_pipeline",
    "to_dot",
    "verify",
]
