"""Positive definite matrix kernels, majorization orders and inequality checks.

Matrices are passed as 2-D float arrays. Verdicts and reports come back as
plain dicts with the same layout as the command-line JSON output.
"""

from ._core import (
    PdineqError,
    check_order,
    cholesky,
    det_exact,
    det_pd,
    eig_pd_product,
    evaluate,
    fuzz,
    geometric_mean,
    hyperbolic_power,
    inequality_ids,
    jacobi_eigen,
    loewner_le,
    pd_inverse,
    pd_sqrt,
    power_mean,
    singular_values,
    verify_paper,
)

__all__ = [
    "PdineqError",
    "check_order",
    "cholesky",
    "det_exact",
    "det_pd",
    "eig_pd_product",
    "evaluate",
    "fuzz",
    "geometric_mean",
    "hyperbolic_power",
    "inequality_ids",
    "jacobi_eigen",
    "loewner_le",
    "pd_inverse",
    "pd_sqrt",
    "power_mean",
    "singular_values",
    "verify_paper",
]
