"""padeforge: Pade approximants of formal power series, compact exhaustions
of planar open sets, and machine-checkable density certificates."""

from .density import (
    DensityCertificate,
    VerificationReport,
    construct_general,
    construct_simply_connected,
    lemma22_delta_search,
    polynomial_surrogate,
    verify_certificate,
)
from .geometry import (
    CompactGrid,
    Region,
    disk,
    dist_to_complement,
    exhaustion_K,
    plane_minus_disks,
    pole_free_on,
    rect,
    rho_metric,
    sup_norm,
    whole_plane,
)
from .kernels import BACKEND
from .pade import (
    MembershipReport,
    PadeApproximant,
    PadeIndex,
    compute_pade,
    determinant_poly_in_d,
    hankel_determinant,
    order_condition_residual,
    select_d,
)
from .series import (
    ComplexPoly,
    RationalPair,
    TaylorSeries,
    default_truncation,
    partial_sum,
    series_from_rational,
    series_multiply,
)

__version__ = "0.1.0"
