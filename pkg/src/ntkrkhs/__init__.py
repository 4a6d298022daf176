"""Maclaurin coefficients and RKHS inclusion certificates for zonal kernels on the sphere."""

from .asymptotics import (
    AsymptoticPrediction,
    RatioDiagnostics,
    asymptotic_form,
    minus_one_product,
    predicted_exp_ratio,
    predicted_ratio,
    ratio_diagnostics,
)
from .errors import (
    ConfigError,
    DegenerateInputError,
    DomainError,
    IndeterminateError,
    KernelToolsError,
    NonConvergenceError,
    NumericalHealthError,
    ParameterError,
    PoleError,
    PrecisionLossError,
    UnsupportedKernelError,
)
from .inclusion import (
    CertificatePair,
    InclusionCertificate,
    SchoenbergReport,
    certify_kernels,
    domination_certificate,
    schoenberg_check,
    theorem1_report,
    verify_certificate,
)
from .kernels import ZonalKernel, eval_kappa0, eval_kappa1, eval_kappa1_iterate, eval_ntk, eval_zonal
from .series import (
    DEFAULT_CONFIG,
    ExtractionConfig,
    FormalSeries,
    SeriesCoefficients,
    abel_sum,
    cauchy_coefficients,
    closed_form_series,
    remainder_bound,
)
from .special import gamma_real, log_abs_gamma
from .stable import (
    CMCertificate,
    DensityEvaluation,
    cm_certificate,
    density_closed_form_half,
    density_scaled,
    density_series,
    resolvable_t_min,
    tail_constant,
    verify_cm_certificate,
)

__version__ = "0.1.0"
