"""Exact arithmetic in the shuffle algebra of formal power series over
prime fields: the p-homogeneous form and its inverse, its variant forms,
rationality and algebraicity analysis, orbit exploration, and the
free-variable generalization.
"""

from .errors import (
    BadConstantTerm,
    BadShift,
    CapExceeded,
    DivisionByZeroPoly,
    ModulusMismatch,
    NonConvergence,
    NonInvertibleConstantTerm,
    NonUnitDenominator,
    NotDivisible,
    NotPrime,
    OrderExhausted,
    OrderTooSmall,
    ParseError,
    ShapeMismatch,
    ShuffleError,
    SingularMatrix,
    Unsaturated,
    WrongModulus,
    ZeroFraction,
)
from .grammar import (
    parse_fraction,
    parse_nc_series,
    parse_poly,
    parse_word,
    print_fraction,
    print_nc_series,
    print_poly,
)
from .kernel import (
    ALGEBRAIC_CANDIDATE,
    RATIONAL_CANDIDATE,
    UNKNOWN,
    KernelBasis,
    classify,
    kernel_bound_check,
    kernel_closure,
    section,
    verify_poly_relation,
)
from .ncseries import (
    NCSeries,
    abelianize,
    geometric,
    gl_change_of_vars,
    nc_shuffle,
    nc_shuffle_inv,
    nc_shuffle_pow,
    nc_sigma,
    nc_sigma_inv,
    nc_str,
    shuffle_word_pair,
)
from .nchankel import (
    ClosureBasis,
    HankelSnapshot,
    closure_product_bound_check,
    hankel_rank,
    recursive_closure,
    rho_shift,
    sigma_complexity_bound_check,
)
from .orbit import (
    EXHAUSTED,
    FINITE,
    INFINITE_CERTIFIED,
    AuxSeries,
    OrbitRecord,
    aux_series,
    aux_series_law_check,
    degree_growth,
    iterate_sigma,
    orbit_cardinality,
    power_of_two_monomial_present,
    sigma_poly,
)
from .rational import (
    FpPoly,
    PolyFraction,
    certify_sigma_identity,
    frac_degree,
    poly_gcd,
    reconstruct,
    sigma_certification_order,
    sigma_inv_rational,
    sigma_rational,
)
from .rings import FpScalar, LiftScalar, PrimeModulus, as_modulus, binom_mod_p, carry_count, digit_sum, tm
from .series import (
    TruncSeries,
    cauchy_mul,
    frobenius,
    poly_str,
    psi,
    psi_inv,
    shuffle_inv,
    shuffle_mul,
    shuffle_pow,
    sigma,
    sigma_generic,
    sigma_inv,
    sigma_tilde,
    sigma_tilde_inv,
)

__version__ = "0.1.0"
