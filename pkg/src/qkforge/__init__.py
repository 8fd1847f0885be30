"""qkforge: palindromic polynomial transforms, CM-order arithmetic, and
iterated-splitting sequence generation over odd prime fields."""

__version__ = "0.1.0"

from .errors import (
    InternalConsistencyError,
    MalformedInputError,
    QkforgeError,
    ResourceCapError,
    TheoremViolationError,
    UnsupportedPrimeError,
    UsageError,
)
from .cm_arith import (
    CURVE_DISC4,
    CURVE_DISC7,
    CurveParams,
    DepthPair,
    QuadInt,
    count_points,
    depths,
    frobenius_pi,
    norm,
    quad_mul,
    rho0_select,
    rho_valuation,
)
from .extfield import ExtField, FqElem, batch_inverse, min_poly_of_element
from .ffpoly import (
    Poly,
    equal_degree_factorize,
    format_poly,
    format_poly_human,
    is_irreducible,
    is_prime,
    parse_poly,
    poly_gcd,
    poly_mod_pow,
    smallest_irreducible,
    sqrt_mod_p,
)
from .qk import (
    INFINITY,
    KClass,
    classify_k,
    find_k,
    is_palindromic,
    min_poly_theta,
    qk_transform,
    theta_eval,
)
from .seqgen import (
    ScheduleReport,
    SequenceRecord,
    Step,
    generate_sequence,
    is_periodic,
    next_poly,
    observed_flat_steps,
    predict_schedule,
    verify_against_schedule,
)
from .dynamics import (
    ComponentStats,
    FunctionalGraph,
    build_graph,
    check_lemma_kk,
    component_labels,
    component_stats,
    distances_to_cycle,
    export_dot,
)

__all__ = [
    "CURVE_DISC4",
    "CURVE_DISC7",
    "ComponentStats",
    "CurveParams",
    "DepthPair",
    "ExtField",
    "FqElem",
    "FunctionalGraph",
    "INFINITY",
    "InternalConsistencyError",
    "KClass",
    "MalformedInputError",
    "Poly",
    "QkforgeError",
    "QuadInt",
    "ResourceCapError",
    "ScheduleReport",
    "SequenceRecord",
    "Step",
    "TheoremViolationError",
    "UnsupportedPrimeError",
    "UsageError",
    "batch_inverse",
    "build_graph",
    "check_lemma_kk",
    "classify_k",
    "component_labels",
    "component_stats",
    "count_points",
    "depths",
    "distances_to_cycle",
    "equal_degree_factorize",
    "export_dot",
    "find_k",
    "format_poly",
    "format_poly_human",
    "frobenius_pi",
    "generate_sequence",
    "is_irreducible",
    "is_palindromic",
    "is_periodic",
    "is_prime",
    "min_poly_of_element",
    "min_poly_theta",
    "next_poly",
    "norm",
    "observed_flat_steps",
    "parse_poly",
    "poly_gcd",
    "poly_mod_pow",
    "predict_schedule",
    "qk_transform",
    "quad_mul",
    "rho0_select",
    "rho_valuation",
    "smallest_irreducible",
    "sqrt_mod_p",
    "theta_eval",
    "verify_against_schedule",
]
