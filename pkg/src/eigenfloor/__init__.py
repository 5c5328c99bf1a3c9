"""Lower bounds for sums of eigenvalues of second- and fourth-order operators.

The package solves a gradient-constrained radial minimization problem in
closed form, instantiates it as eigenvalue-sum lower bounds for the
Dirichlet Laplacian, the Stokes operator, and the Dirichlet bi-Laplacian
on concrete domains, and verifies everything against independent oracles
(exact box spectra, adaptive quadrature, and a discretized LP).
"""

from .minimizer import (
    DimensionConstants,
    MinimizationInput,
    MinimizerProfile,
    asymptotic_moment,
    beta_moment_bound,
    closed_form_plateau,
    dimension_constants,
    liyau_moment,
    melas_moment_bound,
    minimizer_profile,
    optimal_moment,
    optimal_moment4,
    planar_closed_moment,
    planar_closed_moment4,
    power_diff,
    profile_moment,
    profile_moment_of,
    scaled_mass,
    shifted_root_expansion,
    solve_plateau,
)
from .geometry import (
    Ball,
    Box,
    BoxUnion,
    DomainShape,
    Ellipse2D,
    MomentCheck,
    Polygon2D,
    ShapeError,
    centroid,
    check_isoperimetric_moment,
    dimension,
    inertia_min,
    load_shape,
    scale,
    shape_from_dict,
    translate,
    volume,
)
from .bounds import (
    BoundReport,
    GeometrySummary,
    OperatorKind,
    bilaplace_leading,
    bound_exact,
    bound_liyau,
    bound_two_term,
    has_two_term,
    ml_constants,
    minimization_input,
    scaled_mass_floor,
    summarize_shape,
    weyl_asymptote,
)
from .verification import (
    AuditReport,
    AuditRow,
    LpInfeasibleError,
    RadialProfileGrid,
    RearrangementCheck,
    SpectrumSample,
    audit,
    box_spectrum,
    lp_minimize,
    lp_minimize_profile,
    quadrature_moment,
    rearrangement_moment_check,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "AuditRow",
    "Ball",
    "BoundReport",
    "Box",
    "BoxUnion",
    "DimensionConstants",
    "DomainShape",
    "Ellipse2D",
    "GeometrySummary",
    "LpInfeasibleError",
    "MinimizationInput",
    "MinimizerProfile",
    "MomentCheck",
    "OperatorKind",
    "Polygon2D",
    "RadialProfileGrid",
    "RearrangementCheck",
    "ShapeError",
    "SpectrumSample",
    "asymptotic_moment",
    "audit",
    "beta_moment_bound",
    "bilaplace_leading",
    "bound_exact",
    "bound_liyau",
    "bound_two_term",
    "box_spectrum",
    "centroid",
    "check_isoperimetric_moment",
    "closed_form_plateau",
    "dimension",
    "dimension_constants",
    "has_two_term",
    "inertia_min",
    "liyau_moment",
    "load_shape",
    "lp_minimize",
    "lp_minimize_profile",
    "melas_moment_bound",
    "minimization_input",
    "minimizer_profile",
    "ml_constants",
    "optimal_moment",
    "optimal_moment4",
    "planar_closed_moment",
    "planar_closed_moment4",
    "power_diff",
    "profile_moment",
    "profile_moment_of",
    "quadrature_moment",
    "rearrangement_moment_check",
    "scale",
    "scaled_mass",
    "scaled_mass_floor",
    "shape_from_dict",
    "shifted_root_expansion",
    "solve_plateau",
    "summarize_shape",
    "translate",
    "volume",
    "weyl_asymptote",
]
