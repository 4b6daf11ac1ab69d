"""Matrix algebra over an associative division algebra.

Quaternion matrices with the two products (row-column and column-row),
non-commutative Gaussian elimination, quasideterminants, the four
left/right eigenvalue notions with their verification equalities, and
closed-form exponential solutions of linear differential systems.
"""

from .eigen import (
    EigenPair,
    NotDiagonalizableError,
    SpectrumEntry,
    SpectrumReport,
    basis_change_endo,
    conjugate_eigen,
    construct_diagonalizable,
    construction_vectors,
    diagonalize_via,
    eigen_check,
    eigen_residual,
    eigenspace,
    independent,
    is_matrix_eigenvalue,
    pair_eigen_check,
    pair_g_for_construction,
    scaling_preserves,
    similarity_matrix,
    spectrum_of_construction,
    vector_shape,
)
from .matrices import (
    Matrix,
    NoSolutionError,
    ProductKind,
    ShapeError,
    Side,
    SingularMatrixError,
    SolveResult,
    inverse,
    matrices_close,
    matrix_power,
    max_entry_distance,
    mul,
    rank,
    solve,
)
from .ode import (
    ClosedFormSolution,
    LinearSystem,
    RejectedSolutionError,
    SolutionForm,
    UnsupportedModeError,
    build_solution,
    center_condition,
    conj_exp_residuals,
    eigencolumn_center_condition,
    exp_scalar,
    exp_scalar_series,
    residual_grid,
    rk4_integrate,
    scalar_conj_solution,
    solution_residual,
    transform_solution,
)
from .quasidet import (
    UNDEFINED,
    UndefinedQuasideterminantError,
    quasidet,
    quasidet_matrix,
)
from .scalars import (
    DEFAULT_TOL,
    Cplx,
    Quaternion,
    Real,
    Scalar,
    centralizer_basis,
    in_center,
    scalars_close,
    similar_witness,
)

__version__ = "0.1.0"
