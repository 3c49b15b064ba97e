"""Bivariate orthogonal polynomials on triangles under the bubble weight.

Tools for the complement spaces of degree n - 1 inside degree n, the
dimension of their intersections across shared-edge triangle pairs and
triangle fans, and the injectivity constants of the piecewise projection
onto lower degree. Exact rational and float arithmetic throughout, with
the mode inferred from the inputs.
"""

from .errors import (
    BadBaseIndex,
    DegenerateConfiguration,
    DegenerateTriangle,
    DivideByZero,
    EmptyFamily,
    InconsistentParams,
    IndexOutOfRange,
    InvalidPatch,
    ModeMismatch,
    NoSharedEdge,
    NotDivisible,
    ParseError,
    SingularMap,
    TriorthoError,
    ZeroNormalizer,
)
from .scalar import EXACT, FLOAT, Scalar, mode_of, to_float
from .polynomial import (
    BivarPoly,
    UnivarPoly,
    affine_substitute,
    bubble_weight,
    inner_product,
    integrate_T1,
)
from .jacobi import JacobiParams, jacobi_eval, jacobi_poly
from .orthobasis import (
    ComplementBasis,
    TriangleWeights,
    W111,
    complement_basis,
    pnk,
    proriol,
    six_variant,
)
from .geometry import (
    AffineMap,
    CriticalClass,
    Point,
    Triangle,
    TrianglePatch,
    barycenters_collinear,
    classify_fourth_vertex,
    lemma_barycenter_moment,
    map_from_unit,
    map_to_unit,
    pair_cd,
    pair_critical_class,
    patch_theorem_check,
    predicted_pair_dim,
    ring_vertex_convex,
    unit_triangle,
    validate_patch,
)
from .intersection import (
    CdParams,
    IntersectionResult,
    alpha_recursion_dc_minus1,
    cd_forward_map,
    complement_basis_cd,
    det3,
    det3_closed,
    f_coefficient,
    f_rrm_closed,
    f_shift_closed_dc1,
    intersect_cd,
    intersect_many,
    intersect_pair,
    predicted_cd_dim,
    q_poly,
    reduced_system,
    reduced_system_nullity,
    triangle_cd,
)
from .projection import (
    ConstantsReport,
    PatchParams,
    c_check,
    c_doubleprime,
    c_prime,
    constants_report,
    orthonormal_reference_basis,
    params_from_patch,
    patch_from_params,
    project,
    reference_unweighted_gram,
    reference_weighted_gram,
    sweep_X,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "BadBaseIndex",
    "BivarPoly",
    "CdParams",
    "ComplementBasis",
    "ConstantsReport",
    "CriticalClass",
    "DegenerateConfiguration",
    "DegenerateTriangle",
    "DivideByZero",
    "EXACT",
    "EmptyFamily",
    "FLOAT",
    "InconsistentParams",
    "IndexOutOfRange",
    "IntersectionResult",
    "InvalidPatch",
    "JacobiParams",
    "ModeMismatch",
    "NoSharedEdge",
    "NotDivisible",
    "ParseError",
    "PatchParams",
    "Point",
    "Scalar",
    "SingularMap",
    "Triangle",
    "TrianglePatch",
    "TriangleWeights",
    "TriorthoError",
    "UnivarPoly",
    "W111",
    "ZeroNormalizer",
    "affine_substitute",
    "alpha_recursion_dc_minus1",
    "barycenters_collinear",
    "bubble_weight",
    "c_check",
    "c_doubleprime",
    "c_prime",
    "cd_forward_map",
    "classify_fourth_vertex",
    "complement_basis",
    "complement_basis_cd",
    "constants_report",
    "det3",
    "det3_closed",
    "f_coefficient",
    "f_rrm_closed",
    "f_shift_closed_dc1",
    "inner_product",
    "integrate_T1",
    "intersect_cd",
    "intersect_many",
    "intersect_pair",
    "jacobi_eval",
    "jacobi_poly",
    "lemma_barycenter_moment",
    "map_from_unit",
    "map_to_unit",
    "mode_of",
    "pair_cd",
    "pair_critical_class",
    "orthonormal_reference_basis",
    "params_from_patch",
    "patch_from_params",
    "patch_theorem_check",
    "pnk",
    "predicted_cd_dim",
    "predicted_pair_dim",
    "project",
    "proriol",
    "q_poly",
    "reduced_system",
    "reduced_system_nullity",
    "reference_unweighted_gram",
    "reference_weighted_gram",
    "ring_vertex_convex",
    "six_variant",
    "sweep_X",
    "to_float",
    "triangle_cd",
    "unit_triangle",
    "validate_patch",
]
