"""Certified gamma / q-gamma evaluation and numerical claim verification.

The package has four layers: ``specfun`` (series evaluators returning
Enclosures with certified truncation error), ``bounds`` (closed-form
two-sided bounds and auxiliary functions), ``cm_engine`` (complete
monotonicity / chained inequality checking over grids), and ``corpus``
(the registry of verifiable claims).  ``cli`` exposes everything as the
``qgk`` command.
"""

from .errors import ConvergenceError, DomainError, PreconditionError, UsageError
from .specfun import (
    DEFAULT_POLICY,
    EULER_GAMMA,
    Enclosure,
    LogMeanOrder,
    QParam,
    TruncationPolicy,
    digamma,
    digamma_series,
    kernel_derivative,
    kernel_h,
    ln_gamma,
    log_mean,
    polygamma,
    polygamma_series,
    q_digamma,
    q_gamma,
    q_ln_gamma,
    q_polygamma,
    unit_ball_volume,
)
from .bounds import (
    BoundPair,
    PolyProductSpec,
    alzer_u,
    alzer_v,
    a_poly,
    a_poly_root,
    auxiliary_function,
    ball_ratio_bounds,
    cor5_inequality,
    cor51_expr,
    g_q_function,
    gamma_ratio,
    keckic_vasic_bounds,
    lemma10_lhs_rhs,
    poly_constants,
    poly_product,
    psi_pair_inequality,
    ratio_bounds,
    w_qn,
)
from .cm_engine import (
    GridSpec,
    VerificationReport,
    Violation,
    check_chain,
    check_majorization,
    check_sign_pattern,
    make_target,
    monotonicity_probe,
    nth_derivative,
)
from . import corpus

__version__ = "0.1.0"
