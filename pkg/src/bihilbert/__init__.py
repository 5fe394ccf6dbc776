"""Hilbert functions, Hilbert polynomials and mixed multiplicities of bigraded algebras
generated in bidegrees (1, 0) and (d_j, 1)."""

from .closed_forms import (
    ColonData,
    ColonEntry,
    HypothesisViolation,
    InvalidColonData,
    TopCoefficients,
    build_initial_ideal,
    complete_homogeneous,
    dseq_hilbert,
    dseq_mixed_mult,
    embedded_degree,
    ggh_hilbert,
    lemma14_leading,
    minors_mixed_mult,
    prop13_leading,
    regseq_mixed_mult,
    teissier_dseq,
)
from .diagonal import DiagonalSpec, EmbeddedDegreeCheck, UnivariateFit, check_embedded_degree, diagonal_fit
from .io import (
    PolynomialSyntaxError,
    PresentationDocument,
    PresentationError,
    emit_presentation,
    emit_report,
    format_polynomial,
    parse_polynomial,
    parse_presentation,
    parse_report,
)
from .linalg import RationalMatrix, SingularMatrixError, modular_rank, nullspace, rank, solve_square
from .oracle import (
    CellBudgetExceeded,
    CellOracle,
    GradingError,
    HilbertTable,
    OracleConfig,
    QuotientPresentation,
    ReesPresentation,
    graded_quotient_hilbert,
    hilbert_table,
    quotient_bigraded_hilbert,
    rees_hilbert,
)
from .polyfit import (
    BinomialBasisPolynomial,
    FitRegion,
    StabilizationError,
    extract_report,
    fit_bivariate,
    fit_presentation,
)
from .polynomials import BiMonomial, SparsePolynomial, bigraded_basis, count_monomials, monomials_of_degree
from .report import MixedMultReport

__version__ = "0.1.0"
