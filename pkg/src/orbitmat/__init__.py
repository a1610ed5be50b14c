"""Iteration matrices of fixed-point-free integer functions.

For a function ``phi`` on the non-negative integers with ``phi(0) = 0`` and no
positive fixed point, ``M_n`` is the n x n 0/1 matrix whose column ``j`` is
``e_{phi_n(j)}``. ``det(I - M_n)`` is 0 when ``phi_n`` has a cycle and 1
otherwise; in the cycle-free case ``M_n`` is nilpotent and the inverse of
``I - M_n`` has a closed form built from orbits.
"""

from .errors import (
    CyclePresentError,
    DimensionMismatch,
    EmptyBranchError,
    EmptyInput,
    FixedPointError,
    IndexOutOfRange,
    IntegralityError,
    NotACycleError,
    NotNilpotentError,
    OracleError,
    OrbitmatError,
    SizeLimitExceeded,
    SpecError,
    SpecSyntaxError,
)
from .exact_oracle import (
    DenseIntMatrix,
    bareiss_det,
    cofactor_det,
    dense_from_sparse,
    dense_mul,
    dense_power,
    en_matrix,
    en_product,
    indicator_det,
    verify_inverse,
)
from .function_model import (
    FunctionSpec,
    Kind,
    LocalFunction,
    cycle_threshold,
    evaluate,
    localize,
    parse_spec,
)
from .matrix_engine import (
    EigenvectorCertificate,
    PartialMapMatrix,
    SparseSignMatrix,
    apply_basis,
    build_ihat,
    build_m,
    cycle_eigenvector,
    intersect_count,
    inverse_nnz,
    inverse_via_neumann,
    inverse_via_orbits,
    iter_powers,
    nilpotency_degree,
    nnz,
    power,
)
from .orbit_engine import (
    CycleReport,
    HeightProfile,
    OrbitDecomposition,
    decompose,
    detect_cycle,
    find_cycles,
    heights,
    j_nk,
    orbit,
)
from .report import AnalysisReport, render_svg, run_analyze, scan_for_cycle, svg_text

__version__ = "0.1.0"
