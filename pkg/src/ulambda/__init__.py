"""Numerical toolkit for the univalence class U(lambda)."""

from .series import (
    TruncatedSeries,
    series_add,
    series_sub,
    series_mul,
    series_reciprocal,
    series_compose,
    series_integrate,
    series_differentiate,
    series_eval,
)
from .diskfun import (
    Blaschke,
    DiskFunction,
    Monomial,
    MoebiusShift,
    ScaledPolynomial,
    antiderivative,
    diskfun_from_json,
    schwarz_pick_envelope,
)
from .geometry import BoundaryRegion
from .core import (
    GridSpec,
    MembershipReport,
    UCandidate,
    dilate,
    f_coefficient,
    julia_quotient,
    l_of_phi,
    obstruction_value,
    q_from_omega,
    q_from_phi,
    subordination_check,
    count_disk_zeros,
    sup_u,
    taylor_of_f,
    u_of_q,
)
from .bounds import (
    BoundTable,
    FixedPointResult,
    RegionA2,
    b_a,
    c_omega_curve,
    conjecture_bound,
    f_quadratic,
    f_root_in_unit_interval,
    fixed_point_zero,
    max_boundary_ba,
    r_star,
    rogosinski_check,
    sharpness_construction_thm6,
    sharpness_g_thm5,
    theorem2_bound,
    v_of_omega,
    v_of_x,
)

__version__ = "0.1.0"
