"""Certification engine for planar-monomial difference curves.

For an odd prime p and exponent t the package decides whether the
bivariate quotient curve attached to x^t has an absolutely irreducible
factor over F_p, which rules the monomial out as an exceptional planar
function.  Certificates are organised in groups of increasing cost;
small-field brute-force oracles provide independent ground truth.
"""

from .arith import (
    Decomposition,
    decompose,
    is_exceptional,
    is_prime,
    mult_order,
    reduce_exponent,
)
from .config import CapExceeded, RunConfig, default_config
from .criteria import ConditionResult, Verdict, check
from .gf import Fel, FieldCtx, build_field, roots_of_unity
from .oracle import (
    OracleReport,
    brute_pairs,
    distinct_point_search,
    exhaustive_bifactor,
    is_planar,
    is_pp,
)
from .poly import BiPoly, UniPoly, build_ft_gt, divides_x_plus_y_plus_1
from .sing import BezoutReport, SingSummary, bezout_audit, caseB_enum, omega_census

__version__ = "0.1.0"

__all__ = [
    "BezoutReport",
    "BiPoly",
    "CapExceeded",
    "ConditionResult",
    "Decomposition",
    "Fel",
    "FieldCtx",
    "OracleReport",
    "RunConfig",
    "SingSummary",
    "UniPoly",
    "Verdict",
    "bezout_audit",
    "brute_pairs",
    "build_field",
    "build_ft_gt",
    "caseB_enum",
    "check",
    "decompose",
    "default_config",
    "distinct_point_search",
    "divides_x_plus_y_plus_1",
    "exhaustive_bifactor",
    "is_exceptional",
    "is_planar",
    "is_pp",
    "is_prime",
    "mult_order",
    "omega_census",
    "reduce_exponent",
    "roots_of_unity",
    "__version__",
]
