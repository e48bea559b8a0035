"""skewdet: valuations of Dieudonne determinants over split DVSFs.

Three independent engines compute the valuation zeta(A) of the Dieudonne
determinant of a square matrix given by pi-adic coefficient matrices:
combinatorial relaxation, matrix expansion, and a Smith-McMillan
diagonalization oracle.  On top of them sit deg Det / ord Det of skew
polynomial matrices and dimension formulas for linear differential and
difference systems.
"""

from .errors import (
    ContractViolationError,
    EngineDisagreementError,
    ParseError,
    PrecisionError,
    SkewdetError,
    SpecMismatchError,
    UnsupportedTwistError,
)
from .field import (
    Commutative,
    Differential,
    FieldSpec,
    PrimeField,
    QShift,
    RationalFunctions,
    Rationals,
    Scalar,
    Shift,
    apply_delta,
    apply_sigma,
    apply_sigma_inv,
    format_scalar,
    higher_delta,
    make_scalar,
    parse_scalar,
    scalar_arith,
    scalar_from_int,
    scalar_one,
    scalar_t,
    scalar_zero,
)
from .series import (
    AtLeast,
    Known,
    Series,
    invert_unit,
    left_mul_pi,
    left_mul_pi_generic,
    right_div,
    right_shift,
    scalar_left_mul,
    series_add,
    series_from_coeffs,
    series_mul,
    series_zero,
    truncate,
    valuation,
)
from .linalg import (
    Finite,
    ScalarMatrix,
    SeriesMatrix,
    SingularOrBeyond,
    coeff_matrix,
    diag_scale,
    mat_mul_scalar_series,
    rank,
    scalar_identity,
    scalar_matrix,
    series_diagonalize,
    series_mat_mul,
    series_matrix,
    series_matrix_from_coeffs,
    zero_row_transform,
)
from .matching import (
    DualSolution,
    ExceedsThreshold,
    Infinite,
    WeightedBipartite,
    max_matching,
    min_weight_pm_dual,
    tight_subgraph,
    vertex_cover,
    weighted_bipartite,
)
from .outcomes import (
    Deg,
    Dim,
    InfiniteBeyond,
    InfiniteDimension,
    MinusInfinity,
    Ord,
    PlusInfinity,
    Zeta,
)
from .relax import RelaxState, support_weights, zeta_comb_relax
from .expansion import (
    ExpansionProfile,
    expanded_matrix,
    omega,
    omega_sequence,
    smith_exponents,
    zeta_expand,
    zeta_sequence,
)
from .skewapp import (
    SkewPolyMatrix,
    deg_det,
    ord_det,
    run_zeta_engines,
    skew_mat_mul,
    skew_poly_matrix,
    skew_poly_mul,
    smith_data,
    solution_dimension,
    zeta_oracle,
)

__version__ = "0.1.0"
