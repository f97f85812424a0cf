"""Exact zero-sum verification in F_p and F_p^2."""

__version__ = "0.1.0"

from .errors import DomainError, ResourceError, VerificationFailure, ZeroSumError
from .field import (
    CanonicalSet,
    Direction,
    FpElement,
    FpVector2,
    PrimeField,
    all_directions,
    canonicalize_covering_set,
    covers_all_directions,
    direction_of,
)
from .poly import (
    LinearForm,
    Monomial,
    Polynomial,
    coefficient_of,
    elementary_symmetric,
    expand_power,
    full_support_monomials,
    multilinear_reduce,
    multiply,
    partial_derivative_all,
)
from .integral import missing_variable_vanishes, signed_cube_sum_coeff, signed_cube_sum_eval
from .engine import (
    Group,
    OlsonResult,
    SubsetSumTable,
    Witness,
    balandraud_check,
    cw_witness_search,
    find_zero_sum_subset,
    is_zero_sum_free,
    olson_constant,
    sigma_sets,
    subset_sum_table,
    theorem4_check,
)
from .verifier import (
    ProofTrace,
    SurveyReport,
    build_P,
    build_Q,
    grt_report,
    proof_trace,
    proof_trace_for,
    verify_lemma5,
    verify_theorem1,
)
