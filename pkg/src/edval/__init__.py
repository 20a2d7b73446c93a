"""Exact tools for essential dimension via monomial valuations.

``intmat``   integer matrices, rank, rank mod m, Smith normal form
``laurent``  Laurent polynomials over Q and the lex-min monomial valuation
``essdim``   essential/canonical dimension formulas, search oracle, certificates
``cli``      command line front end (``python -m edval``)
"""

from .intmat import (
    IntMatrix,
    MatrixParseError,
    ShapeError,
    SmithDecomposition,
    det,
    elementary_divisors,
    identity,
    matmul,
    parse_matrix,
    rank_mod,
    rank_rational,
    smith_normal_form,
    transpose,
)
from .laurent import (
    ExpressionError,
    LaurentPoly,
    RationalFunction,
    initial_exponent,
    parse_laurent,
    shift_center,
    substitute_monomials,
    uniformizer_change_matrix,
    valuation,
    valuation_in_parameters,
    valuation_matrix,
    valuation_rat,
)
from .essdim import (
    AbelianGroupSpec,
    CompressionWitness,
    FormsSpec,
    IndependenceCertificate,
    ObstructionReport,
    TorusActionSpec,
    abelian_obstruction_check,
    cd_torus,
    compression_search,
    construct_independent,
    ed_abelian,
    ed_forms,
    ed_hypersurface,
    ed_projective,
    ed_torus,
    extend_projective,
    forms_matrix,
    rank_lower_bound,
)

__version__ = "0.1.0"
