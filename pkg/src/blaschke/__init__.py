"""Finite Blaschke products with extreme boundary derivatives.

Exact hypergeometric polynomial machinery, certified derivative scans on
the unit circle, the two-parameter family of extremal products, and the
constructive solution of the prescribed-extrema problem.
"""

from .config import Tolerances, default_tolerances
from .errors import NumericFailure, ParameterError, VerificationFailure
from .polynomial import (
    ComplexPoly,
    RationalPoly,
    RootSet,
    conj_reciprocal,
    eval_poly,
    roots,
    wronskian_combo,
)
from .hypergeo import (
    HypergeoParams,
    HypergeoPoly,
    as_fraction,
    check_contiguous,
    check_gegenbauer_relation,
    check_reciprocal_transform,
    check_roots_in_disk,
    check_roots_on_circle,
    check_wronskian_identity,
    gegenbauer,
    hyper_at_one,
    hyper_poly,
    pochhammer,
    terminating_2f1,
)
from .products import (
    BlaschkeProduct,
    CircleMapClassification,
    ExtremaReport,
    MainInequalityReport,
    PreimageSet,
    boundary_values,
    check_main_inequality,
    check_semigroup_average,
    classify_circle_maps,
    deriv_modulus,
    deriv_modulus_direct,
    deriv_profile,
    extrema,
    from_zeros,
    poisson_kernel,
    preimages,
    residue_weights,
    scale_zeros,
    to_rational,
)
from .extremal import (
    ExtremalClassification,
    ExtremalSpec,
    classify_extremal,
    extremal_numerator,
    extremal_product,
    extremal_set,
    kappa_exact,
    kappa_from_pochhammer,
    key_identity_residual,
    ode_residual,
    predicted_extrema,
    psi_polynomial,
    symmetric_product,
    verify_uniqueness_structure,
)
from .prescribe import (
    FeasibilityReport,
    FeasibleTriple,
    HomotopyState,
    ZeroPaths,
    construct,
    feasibility,
    solve_lambda,
    solve_t,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
