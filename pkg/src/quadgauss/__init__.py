"""quadgauss: exact evaluation and verification of quadratic Gauss sums,
their alternating, odd-indexed and upper-limit-extended variants, and a
reciprocity-based O(log k) evaluator."""

from .exact import (ClosedFormValue, GaussianRational, HighPrecComplex,
                    RationalAngle, SurdValue, cf_equal, cf_to_complex,
                    cf_to_text, surd_normalize)
from .sums import (CyclotomicElement, Kind, QuadraticArg, ReductionStep,
                   SumSpec, cyclotomic_sum, direct_sum, period_reduce,
                   split_even_odd, spec)
from .catalog import (IdentityEntry, RHSExpr, Status, VerificationRecord,
                      catalog_entries, catalog_to_json, closed_form, verify)
from .engine import (ExtendedGaussParams, ParityError, QuadExpSum, gauss_fast,
                     gauss_naive, ls_transform, quad_exp_naive)
from .integrals import (IntegralSpec, QuadratureResult, check_integral,
                        eval_integral, rhs_sum)
from .harness import GridConfig, Report, bench, run_grid

__version__ = "0.1.0"

__all__ = [
    "ClosedFormValue", "GaussianRational", "HighPrecComplex", "RationalAngle",
    "SurdValue", "cf_equal", "cf_to_complex", "cf_to_text", "surd_normalize",
    "CyclotomicElement", "Kind", "QuadraticArg", "ReductionStep", "SumSpec",
    "cyclotomic_sum", "direct_sum", "period_reduce", "split_even_odd", "spec",
    "IdentityEntry", "RHSExpr", "Status", "VerificationRecord",
    "catalog_entries", "catalog_to_json", "closed_form", "verify",
    "ExtendedGaussParams", "ParityError", "QuadExpSum", "gauss_fast",
    "gauss_naive", "ls_transform", "quad_exp_naive",
    "IntegralSpec", "QuadratureResult", "check_integral", "eval_integral",
    "rhs_sum", "GridConfig", "Report", "bench", "run_grid",
]
