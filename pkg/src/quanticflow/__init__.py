"""Covariants, syzygies, and Hamilton flows of binary quantics.

Exact rational arithmetic for the covariant bundle {H, G, S, T, (U,S),
(U,T)} of a binary form, verification of the four syzygies relating them,
Weierstrass-equation analysis of the rescaled Hessian, and numerical
integration of the quantic's Hamilton flow with algebraic monitors.
"""

from .algebra import (
    BinaryQuantic,
    HomogeneousPoly,
    Rational,
    add,
    as_rational,
    evaluate,
    evaluate_float,
    jacobian,
    mul,
    partial_p,
    partial_q,
    poisson,
    poly_pow,
    scale,
    source,
)
from .covariants import (
    CovariantSet,
    InternalConsistencyError,
    all_syzygy_residuals,
    covariant_g,
    covariant_s,
    covariant_t,
    emanant4,
    grad_s,
    grad_t,
    hessian,
    syzygy_gradient,
    syzygy_main,
    syzygy_switch,
    syzygy_three,
)
from .flow import (
    FlowReport,
    FlowSample,
    hamilton_rhs,
    integrate,
    monitor_properness,
    monitor_second_order,
)
from .weierstrass import (
    Category,
    Classification,
    SConstancy,
    WeierstrassData,
    build_weierstrass,
    classify,
    discriminant,
    pointwise_residual,
    wp_series,
    wp_series_deriv,
)

__version__ = "0.1.0"
