"""pyFibCodes initialization file"""

from __future__ import annotations

from importlib.metadata import PackageNotFoundError, version

# Load the version
try:
    __version__ = version("pyFibCodes")
except PackageNotFoundError:
    __version__ = "0.1.0"  # Default version if not installed

# Import and expose key modules
from . import exceptions
from . import galois
from . import fibseq
from . import fibcodes
from . import sss

from .exceptions import FibCodesError

from .galois import (
    FieldModulus,
    PrimePoly,
    FpMatrix,
    ff_inv,
    ff_order,
    poly_mul,
    poly_divmod,
    poly_gcd,
    solve_linear,
    row_reduce,
    rank,
    vecmat,
)

from .fibseq import (
    SequenceProfile,
    ExtendedProfile,
    fib_period_sequence,
    pisano_period,
    wall_vajda_check,
    generalized_term,
    generalized_period_sequence,
    generalized_polynomial,
    extended_period_sequence,
    fibonacci_polynomial,
    extended_polynomial,
    pair_classes,
    table1,
)

from .fibcodes import (
    CyclicCode,
    WeightDistribution,
    CodeClassification,
    Regime,
    canonical_generator,
    build_cyclic_code,
    fibonacci_code,
    extended_fibonacci_code,
    generalized_fibonacci_code,
    dual_code,
    is_codeword,
    weight_distribution,
    macwilliams_transform,
    resolve_weight_distribution,
    min_distance,
    classify_code,
    predict_regime,
    predict_extended,
    predicted_weight_distribution,
    rs_check,
)

from .sss import (
    AccessStructure,
    ShareSet,
    ShareRNG,
    minimal_vectors,
    minimal_codewords,
    access_structure,
    predict_access_counts,
    massey_deal,
    deal_shares,
    reconstruct_secret,
    ab_minimality_check,
    write_share_file,
    read_share_file,
)

# Define what symbols to export when using "from pyFibCodes import *"
__all__ = [
    # Modules
    "exceptions",
    "galois",
    "fibseq",
    "fibcodes",
    "sss",
    "FibCodesError",
    # Field arithmetic
    "FieldModulus",
    "PrimePoly",
    "FpMatrix",
    "ff_inv",
    "ff_order",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
    "solve_linear",
    "row_reduce",
    "rank",
    "vecmat",
    # Sequences
    "SequenceProfile",
    "ExtendedProfile",
    "fib_period_sequence",
    "pisano_period",
    "wall_vajda_check",
    "generalized_term",
    "generalized_period_sequence",
    "generalized_polynomial",
    "extended_period_sequence",
    "fibonacci_polynomial",
    "extended_polynomial",
    "pair_classes",
    "table1",
    # Codes
    "CyclicCode",
    "WeightDistribution",
    "CodeClassification",
    "Regime",
    "canonical_generator",
    "build_cyclic_code",
    "fibonacci_code",
    "extended_fibonacci_code",
    "generalized_fibonacci_code",
    "dual_code",
    "is_codeword",
    "weight_distribution",
    "macwilliams_transform",
    "resolve_weight_distribution",
    "min_distance",
    "classify_code",
    "predict_regime",
    "predict_extended",
    "predicted_weight_distribution",
    "rs_check",
    # Secret sharing
    "AccessStructure",
    "ShareSet",
    "ShareRNG",
    "minimal_vectors",
    "minimal_codewords",
    "access_structure",
    "predict_access_counts",
    "massey_deal",
    "deal_shares",
    "reconstruct_secret",
    "ab_minimality_check",
    "write_share_file",
    "read_share_file",
]
