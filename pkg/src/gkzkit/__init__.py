"""gkzkit: exact analysis of GKZ-hypergeometric data.

Integer matrices in, exact answers out: toric ideals, cone and face
geometry, quasi-degree decompositions, strongly resonant parameter sets,
duality parameters, Smith factorizations with their index sets, and
normally ordered Weyl-algebra presentations.
"""

from .cones import (
    Face,
    FaceLattice,
    SupportFunction,
    face_lattice,
    is_saturated,
    saturation_contains,
    semigroup_contains,
    semigroup_witness,
    support_functions,
)
from .errors import GkzError
from .family import (
    FamilyData,
    IndexSet,
    PsiImage,
    factor_B,
    i_e_classes,
    index_sets,
    psi_image,
    psi_kernel_sections,
    psi_lambda_derivative,
)
from .intlinalg import (
    IntMatrix,
    SmithDecomposition,
    homogeneity_vector,
    homogenize,
    lattice_kernel,
    parse_matrix,
    parse_rational_vector,
    smith_decompose,
)
from .report import DiagramSpec, classify_point, render_diagram, run_report
from .resonance import (
    ResonanceComponent,
    ResonanceSet,
    delta_A,
    delta_valid,
    dsres_contains,
    dual_parameter,
    n_beta,
    resonance_set,
    sres_contains,
    sres_witness,
)
from .toric import (
    DegreePair,
    QuasiDegreeSet,
    ToricIdeal,
    quasi_degrees,
    toric_ideal,
    toric_normal_form,
    true_degree_contains,
)
from .weyl import (
    GKZPresentation,
    MembershipCertificate,
    WeylElement,
    euler_decomposition,
    gkz_presentation,
    ideal_member_bounded,
    parse_weyl,
    restrict_presentation,
    weyl_mul,
)

__version__ = "0.1.0"

__all__ = [
    "DegreePair",
    "DiagramSpec",
    "Face",
    "FaceLattice",
    "FamilyData",
    "GKZPresentation",
    "GkzError",
    "IndexSet",
    "IntMatrix",
    "MembershipCertificate",
    "PsiImage",
    "QuasiDegreeSet",
    "ResonanceComponent",
    "ResonanceSet",
    "SmithDecomposition",
    "SupportFunction",
    "ToricIdeal",
    "WeylElement",
    "classify_point",
    "delta_A",
    "delta_valid",
    "dsres_contains",
    "dual_parameter",
    "euler_decomposition",
    "face_lattice",
    "factor_B",
    "gkz_presentation",
    "homogeneity_vector",
    "homogenize",
    "i_e_classes",
    "ideal_member_bounded",
    "index_sets",
    "is_saturated",
    "lattice_kernel",
    "n_beta",
    "parse_matrix",
    "parse_rational_vector",
    "parse_weyl",
    "psi_image",
    "psi_kernel_sections",
    "psi_lambda_derivative",
    "quasi_degrees",
    "render_diagram",
    "resonance_set",
    "restrict_presentation",
    "run_report",
    "saturation_contains",
    "semigroup_contains",
    "semigroup_witness",
    "smith_decompose",
    "sres_contains",
    "sres_witness",
    "support_functions",
    "toric_ideal",
    "toric_normal_form",
    "true_degree_contains",
    "weyl_mul",
]
