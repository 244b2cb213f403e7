"""Exact error-bound analysis for systems of linear inequalities.

The package decides, with exact rational arithmetic, whether a system
`A x <= b` admits a global error bound (residuals bound distances to the
solution set), whether that bound is stable under small anchored tilts of
the data, and what the sharp constant is; negative verdicts come with
certificates checkable by substitution.  A seeded floating-point sampling
module cross-checks the exact engines but never feeds them.
"""

from .rational import (
    Rational,
    Vec,
    Mat,
    LinearSolution,
    to_rational,
    parse_rational,
    format_rational,
    rank,
    solve_linear,
    nullspace,
    affine_hull_dim,
)
from .lp import (
    LpStatus,
    LinearProgram,
    LpOutcome,
    FarkasCertificate,
    FeasibilityResult,
    solve_lp,
    feasible,
)
from .convex import (
    Trichotomy,
    MinMaxValue,
    minmax_sign,
    min_norm_point_sq,
    inradius_at_origin_sq,
    minmax_value_sq,
)
from .activesets import (
    IndexSet,
    InequalitySystem,
    Level,
    ActiveSetFamily,
    make_index_set,
    residuals,
    max_residual,
    active_set,
    realizability,
    enumerate_active_sets,
    maximal_sets,
)
from .analysis import (
    Certificate,
    ErrorBoundVerdict,
    StabilityVerdict,
    Perturbation,
    NoErrorBound,
    NO_ERROR_BOUND,
    check_error_bound,
    check_stability,
    hoffman_constant_sq,
    verify_certificate,
    convex_hull_multipliers,
    perturb,
    distance_sq_to_polyhedron,
    perturbation_ratio_sq,
    worst_case_system,
)
from .sampling import SampleConfig, sample_minmax, directional_derivative, estimate_hoffman
from .formats import (
    SystemFileError,
    parse_scalar_value,
    parse_vec_data,
    vec_to_data,
    parse_system_data,
    system_to_data,
    digest_of,
    load_system,
    save_system,
    parse_certificate_data,
    certificate_to_data,
    load_certificate,
    save_certificate,
    exact_field,
    sqrt_approx,
    make_report,
)

__version__ = "0.1.0"

__all__ = [
    "Rational",
    "Vec",
    "Mat",
    "LinearSolution",
    "to_rational",
    "parse_rational",
    "format_rational",
    "rank",
    "solve_linear",
    "nullspace",
    "affine_hull_dim",
    "LpStatus",
    "LinearProgram",
    "LpOutcome",
    "FarkasCertificate",
    "FeasibilityResult",
    "solve_lp",
    "feasible",
    "Trichotomy",
    "MinMaxValue",
    "minmax_sign",
    "min_norm_point_sq",
    "inradius_at_origin_sq",
    "minmax_value_sq",
    "IndexSet",
    "InequalitySystem",
    "Level",
    "ActiveSetFamily",
    "make_index_set",
    "residuals",
    "max_residual",
    "active_set",
    "realizability",
    "enumerate_active_sets",
    "maximal_sets",
    "Certificate",
    "ErrorBoundVerdict",
    "StabilityVerdict",
    "Perturbation",
    "NoErrorBound",
    "NO_ERROR_BOUND",
    "check_error_bound",
    "check_stability",
    "hoffman_constant_sq",
    "verify_certificate",
    "convex_hull_multipliers",
    "perturb",
    "distance_sq_to_polyhedron",
    "perturbation_ratio_sq",
    "worst_case_system",
    "SampleConfig",
    "sample_minmax",
    "directional_derivative",
    "estimate_hoffman",
    "SystemFileError",
    "parse_scalar_value",
    "parse_vec_data",
    "vec_to_data",
    "parse_system_data",
    "system_to_data",
    "digest_of",
    "load_system",
    "save_system",
    "parse_certificate_data",
    "certificate_to_data",
    "load_certificate",
    "save_certificate",
    "exact_field",
    "sqrt_approx",
    "make_report",
    "__version__",
]
