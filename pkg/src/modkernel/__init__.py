"""Weighted orthonormal-polynomial sums and their verification toolkit."""

__version__ = "0.1.0"

from .diffop import (
    DifferentialOperator,
    apply,
    eigenvalue_jacobi,
    eigenvalue_laguerre,
    jacobi_operator,
    laguerre_operator,
    verify_composed_equation,
    verify_kernel_image,
)
from .integralrep import (
    CutoffError,
    SeriesRangeError,
    SpecialFnConfig,
    bessel_j,
    f_n_partial_sum,
    hyp2f0_terminating,
    laguerre_via_bessel,
    pochhammer,
    sobolev_laguerre_closed_form,
    sobolev_laguerre_integral_rep,
)
from .kernels import (
    EigScaledKernel,
    ModifiedKernelSpec,
    PlainKernel,
    SecondKind,
    chebyshev_bounds_check,
    chebyshev_t,
    chebyshev_t_with_derivative,
    generate_weights,
    jacobi_sobolev_poly,
    kernel_poly,
    laguerre_sobolev_poly,
    modified_kernel,
    modified_kernel_values,
    quadratic_discriminant,
    second_kind_eval,
    second_kind_values,
)
from .pencil import (
    BandedMatrix,
    JacobiTypePencil,
    WeightSequence,
    associated_polynomials,
    associated_values,
    build_pencil_formulas,
    build_pencil_matrices,
    five_term_residual,
    path_equivalence_residual,
    pencil_to_banded,
)
from .polycore import (
    COEFF_DEGREE_CAP,
    Chebyshev1,
    DensePolynomial,
    FamilySpec,
    Jacobi,
    LaguerreNeg,
    RecurrenceCoefficients,
    orthonormal_coeffs,
    orthonormal_eval2,
    orthonormal_values,
    poly_derivative,
    poly_eval,
    recurrence_coefficients,
)
from .quadrature import QuadratureRule, gauss_rule, integrate, weight_moments
from .sobolev import (
    MatrixWeight,
    gram_matrix,
    gram_offdiagonal_measures,
    jacobi_matrix_weight,
    laguerre_matrix_weight,
    rank_one_factorization_check,
    sobolev_inner,
)
