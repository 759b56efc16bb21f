"""Exact shuffle-algebra models of K-theoretic Hall algebras of symmetric quivers."""
from .errors import (
    AmbiguousPoleOrder,
    DegenerateWeight,
    DenominatorVanishes,
    DimensionMismatch,
    ExprSyntaxError,
    KHAError,
    NonBinomialDenominator,
    NonExpandableFactor,
    NonPolynomialProduct,
    NotSymmetric,
    NotSymmetricElement,
    PoleAtPEqualsQ,
    PoleOnContour,
    PotentialNotInvariant,
    SpecError,
    TruncationExceeded,
    UnknownSymbol,
)
from .extended import (
    ExtendedElement,
    antipode,
    coproduct_op,
    counit,
    ext_coproduct,
    ext_product,
    tensor_mul,
)
from .laurent import LaurentPoly
from .pairing import (
    gram_determinant,
    gram_matrix,
    pair_extended,
    pair_functions,
    pair_h,
    pair_shuffle,
    pair_tensor,
)
from .parse import ParseContext, parse_expr
from .quiver import Edge, PotentialWord, QuiverModel, dimvec, jordan_quiver, triple, validate
from .ratfunc import RatFunc
from .shuffle import ShuffleElement, brute_force_product, coproduct_raw, shuffle_product
from .tensor import GEQ, LEQ, TruncatedTensor
from .verify import (
    CheckResult,
    bialgebra_suite,
    check_antipode,
    check_coassociativity,
    check_counit,
    check_multiplicativity,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousPoleOrder",
    "antipode",
    "bialgebra_suite",
    "brute_force_product",
    "check_antipode",
    "check_coassociativity",
    "check_counit",
    "check_multiplicativity",
    "CheckResult",
    "coproduct_op",
    "coproduct_raw",
    "counit",
    "DegenerateWeight",
    "DenominatorVanishes",
    "DimensionMismatch",
    "dimvec",
    "Edge",
    "ExprSyntaxError",
    "ext_coproduct",
    "ext_product",
    "ExtendedElement",
    "GEQ",
    "gram_determinant",
    "gram_matrix",
    "jordan_quiver",
    "KHAError",
    "LaurentPoly",
    "LEQ",
    "NonBinomialDenominator",
    "NonExpandableFactor",
    "NonPolynomialProduct",
    "NotSymmetric",
    "NotSymmetricElement",
    "pair_extended",
    "pair_functions",
    "pair_h",
    "pair_shuffle",
    "pair_tensor",
    "parse_expr",
    "ParseContext",
    "PoleAtPEqualsQ",
    "PoleOnContour",
    "PotentialNotInvariant",
    "PotentialWord",
    "QuiverModel",
    "RatFunc",
    "shuffle_product",
    "ShuffleElement",
    "SpecError",
    "tensor_mul",
    "triple",
    "TruncatedTensor",
    "TruncationExceeded",
    "UnknownSymbol",
    "validate",
]
