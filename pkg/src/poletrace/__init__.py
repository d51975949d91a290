"""Branch-tracked continuation of spectral integrals with movable poles."""

from .continuation import (
    ContinuationResult,
    CorrectionTerm,
    branching_difference,
    continue_integral,
    continue_pole,
    verify_no_branching_planar,
)
from .eisenstein import (
    EisensteinParams,
    UpperHalfPoint,
    bessel_k,
    eisenstein_gl2,
    eisenstein_gl2_completed,
    eisenstein_product_numerator,
    zeta,
)
from .models import (
    GrossencharParams,
    ModelKind,
    PolePair,
    SpectralModel,
    branch_points,
    eigenvalue,
    eigenvalue_minparabolic_power,
    eigenvalue_minparabolic_root,
    grossenchar_from_unit,
    poles,
)
from .numerators import Numerator
from .paths import (
    BranchTrace,
    CurveSamples,
    WPath,
    crosses_origin,
    radicand_curve,
    radicand_curve_trivial,
    sample_path,
    track_sqrt,
)
from .planar import (
    circle_average,
    planar_direct_integral,
    planar_regularized_integral,
    planar_singular_integral,
)
from .quadrature import (
    LineIntegrandSpec,
    RegularizedResult,
    adaptive_line_quadrature,
    regularized_line_integral,
    singular_line_integral,
)

__version__ = "0.1.0"
