"""Incomplete beta integrals over the ordered simplex.

B(a; b | z) integrates prod x_i^(a_i-1) (1-x_i)^(b_i-1) over the chain
0 <= x_1 <= ... <= x_n <= z.  Two independent engines compute it (a lifted
Taylor series and a Chebyshev coefficient recursion), a reduction identity
extends both from z <= 1/2 to the full interval, and the same machinery
powers the ordered beta distribution (densities, marginals, moments,
conjugate updates, samplers).  Slow oracles for verification live in
`oracle`.
"""

from .errors import (
    DimensionTooLarge,
    DomainError,
    LengthMismatch,
    MomentDomainError,
    NonFiniteParameter,
    NonPositiveParameter,
    OrderedBetaError,
    OverflowDomain,
    PrecisionWarning,
    RejectionStall,
)
from .params import ParamVector, PochhammerRow, pochhammer_row, reverse_swap, validate_params
from .oracle import OracleEstimate, classical_beta, oracle_montecarlo, oracle_quadrature
from .taylor import (
    PrecisionConfig,
    TaylorTable,
    taylor_base_coeffs,
    taylor_eval,
    taylor_lift,
    taylor_pipeline,
)
from .chebyshev import (
    ChebNodes,
    ChebTable,
    cheb_analysis,
    cheb_assemble,
    cheb_backward_recursion,
    cheb_eval,
    cheb_nodes,
    cheb_pipeline,
    cheb_synthesis,
)
from .evaluate import (
    EvalRequest,
    EvalResult,
    IdentityResiduals,
    PrefixEvaluator,
    beta_complete,
    beta_scaled,
    evaluate,
    identity_residuals,
    incomplete_beta,
)
from .distribution import ObservationBatch, OrderedBetaDist, SampleBatch, SimplexPoint

__all__ = [
    "OrderedBetaError",
    "NonPositiveParameter",
    "LengthMismatch",
    "NonFiniteParameter",
    "DomainError",
    "MomentDomainError",
    "OverflowDomain",
    "DimensionTooLarge",
    "RejectionStall",
    "PrecisionWarning",
    "ParamVector",
    "PochhammerRow",
    "validate_params",
    "reverse_swap",
    "pochhammer_row",
    "OracleEstimate",
    "classical_beta",
    "oracle_quadrature",
    "oracle_montecarlo",
    "PrecisionConfig",
    "TaylorTable",
    "taylor_base_coeffs",
    "taylor_lift",
    "taylor_pipeline",
    "taylor_eval",
    "ChebNodes",
    "ChebTable",
    "cheb_nodes",
    "cheb_synthesis",
    "cheb_analysis",
    "cheb_backward_recursion",
    "cheb_assemble",
    "cheb_pipeline",
    "cheb_eval",
    "EvalRequest",
    "EvalResult",
    "PrefixEvaluator",
    "IdentityResiduals",
    "beta_scaled",
    "beta_complete",
    "incomplete_beta",
    "evaluate",
    "identity_residuals",
    "OrderedBetaDist",
    "SimplexPoint",
    "ObservationBatch",
    "SampleBatch",
]

__version__ = "0.1.0"
