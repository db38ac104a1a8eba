"""Finite-sample bounds on the distribution of the likelihood ratio statistic
for categorical (multinomial) models, with exact and Monte Carlo oracles."""

from .bounds import (
    BoundResult,
    ComparatorResult,
    RateProfile,
    TableOneValues,
    comparator_t1_t2,
    corollary_compact,
    delta_fn,
    epsilon_bound,
    h_of_theta,
    omega_nu,
    rate_probe,
    spokoiny_shift,
    t1_value,
    t2_value,
    table_one,
    theorem_bounds,
)
from .errors import (
    ConditionViolated,
    DegenerateDeltaS,
    DomainError,
    EigenFailure,
    InfeasibleGrid,
    NonPositiveProbability,
    NotNormalized,
    PreconditionViolated,
    SingularEmpiricalInfo,
    TooLarge,
    WilksBoundError,
)
from .llr import (
    Counts,
    DrawDiagnostics,
    counts,
    diagnostics,
    empirical_info,
    g_sup,
    gbar_upper,
    hessian_deviation,
    l_vector,
    llr,
    llr_counts,
    log_likelihood,
    sample_counts,
    sample_counts_batch,
    score,
)
from .model import Model, fisher, fisher_inv_sqrt, fisher_inverse, new_model, spectral_norm
from .optimizer import OptResult, optimize_k, optimize_mu, optimize_theorem
from .oracle import (
    CdfEstimate,
    ValidationCase,
    ValidationReport,
    WilksRow,
    dkw_half_width,
    exact_cdf,
    llr_distribution,
    mc_cdf,
    validate_bounds,
    wilks_curve,
)
from .special import chi2_cdf, regularized_gamma_p, regularized_gamma_q

__version__ = "0.1.0"
