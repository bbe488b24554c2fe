"""Exact line-bundle cohomology and q-ample cones of simplicial projective toric varieties."""
from .asymptotic import AsymptoticValue, VanishingReport, hhat, hhat_homogeneity_check, vanishing_equivalence_check
from .cohomology import CohomologyTable, cech_oracle, cohomology, support_pattern, weight_cohomology
from .cones import ConeUnion, POCone, closure, complement, interior, member, orthant, project, vertices, volume
from .exactcore import StrictSystem, lp_feasible, rational_rank, smith_normal_form
from .exceptions import (
    InvalidDegree,
    InvalidQ,
    NotCartier,
    NotComplete,
    NotProjective,
    NotSimplicial,
    ToricError,
    TooManyRays,
    Unbounded,
    UnboundedChamber,
    UnboundedContribution,
    UnsupportedRank,
)
from .fan import (
    ClassLattice,
    Fan,
    blowup_projective_space,
    class_lattice,
    class_of,
    find_ample,
    is_ample,
    is_cartier,
    load_fan,
    product_of_lines,
    projective_space,
    validate,
    weighted_projective_plane,
)
from .estimators import AmplenessLevel, AsymptoticCohomology, LineBundleCohomology, QAmpleClassifier
from .figure import emit_figure
from .nerve import ObstructionTable, SimplicialComplex, boundary_complex, induced, obstruction_table, reduced_cohomology
from .qample import QAmpleCone, ampleness_level, effective_cone, is_q_ample, obstruction_region, q_ample_cone
from .validation import check_fan, check_rational_array, format_rational, parse_vector

__version__ = "0.1.0"

__all__ = [
    "AmplenessLevel",
    "AsymptoticCohomology",
    "AsymptoticValue",
    "ClassLattice",
    "CohomologyTable",
    "ConeUnion",
    "Fan",
    "InvalidDegree",
    "InvalidQ",
    "LineBundleCohomology",
    "NotCartier",
    "NotComplete",
    "NotProjective",
    "NotSimplicial",
    "ObstructionTable",
    "POCone",
    "QAmpleClassifier",
    "QAmpleCone",
    "SimplicialComplex",
    "StrictSystem",
    "TooManyRays",
    "ToricError",
    "Unbounded",
    "UnboundedChamber",
    "UnboundedContribution",
    "UnsupportedRank",
    "VanishingReport",
    "ampleness_level",
    "blowup_projective_space",
    "boundary_complex",
    "cech_oracle",
    "check_fan",
    "check_rational_array",
    "class_lattice",
    "class_of",
    "closure",
    "cohomology",
    "complement",
    "effective_cone",
    "emit_figure",
    "find_ample",
    "format_rational",
    "hhat",
    "hhat_homogeneity_check",
    "induced",
    "interior",
    "is_ample",
    "is_cartier",
    "is_q_ample",
    "load_fan",
    "lp_feasible",
    "member",
    "obstruction_region",
    "obstruction_table",
    "orthant",
    "parse_vector",
    "product_of_lines",
    "project",
    "projective_space",
    "q_ample_cone",
    "rational_rank",
    "reduced_cohomology",
    "smith_normal_form",
    "support_pattern",
    "validate",
    "vanishing_equivalence_check",
    "vertices",
    "volume",
    "weight_cohomology",
    "weighted_projective_plane",
]
