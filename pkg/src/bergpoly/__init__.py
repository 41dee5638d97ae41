"""Exact Bergman kernels of monomial polyhedra.

Build the canonical rational kernel form of the bounded domain cut out
by an integer matrix, verify it coefficient-by-coefficient against an
independent series oracle, and cross-check the special-case formulas.
"""

from ._backend import backend_name, compiled_available
from .errors import (
    AllZeroRowError,
    BergpolyError,
    CanonicityViolationError,
    DimensionMismatchError,
    DivisionByZeroPolynomialError,
    EvaluationAtSingularityError,
    GcdViolationError,
    InputError,
    InvalidKError,
    MatrixTooLargeError,
    NonConvergentError,
    NotUnimodularError,
    PoleAtZeroError,
    SingularMatrixError,
    UnboundedDomainError,
    WindowTooSmallError,
    WrongDimensionError,
)
from .int_linalg import (
    IntMatrix,
    NormalizedMatrix,
    SignSplit,
    ValidatedMatrix,
    adjugate,
    determinant,
    normalize,
    parse_matrix,
    prepare,
    row_gcd,
    sign_split,
    validate_defining,
)
from .kernel import (
    BergmanKernelForm,
    ExponentBox,
    assemble_kernel,
    box_ceiling,
    canonicity_check,
    denominator_factors,
    eval_kernel,
    exponent_box,
    irreducibility_precondition,
    numerator_coefficient,
    numerator_polynomial,
    same_kernel,
)
from .laurent import LaurentPolynomial
from .oracle import (
    OracleReport,
    OracleSeries,
    Window,
    compare_with_closed_form,
    monomial_norm,
    numeric_spot_check,
    oracle_series,
)
from .special import (
    GeneralizedHartogsSpec,
    SignatureOneSpec,
    chain_weight,
    kernel_dim2,
    kernel_generalized_hartogs,
    kernel_signature_one,
    kernel_unimodular,
)
from .tent import tent, tent_coefficients

__version__ = "0.1.0"
