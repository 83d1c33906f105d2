"""Lower bounds for the constants of the real polynomial Hardy-Littlewood inequality on l_p^2."""

__version__ = "0.1.0"

from .bounds import (  # noqa: E402
    BoundReport,
    HyperReport,
    ParameterFit,
    explore_degree,
    family_bound,
    hl_exponent,
    hyper_estimate,
    lower_bound,
    optimize_parameters,
    parameter_sweep,
)
from .norm import NormResult, OptConfig, sphere_point, sup_norm, sup_norm_oracle  # noqa: E402
from .poly import (  # noqa: E402
    FAMILIES,
    FamilySpec,
    HomoPoly2,
    build_family,
    coefficient_norm,
    evaluate,
    polynomial_power,
)
