"""Stable distributions: densities, samplers, EM estimation, spectral
measures, and goodness of fit, with an HTTP service and CLI on top."""

from ._errors import (ComponentCollapse, DegenerateEcf, DimensionMismatch,
                      DomainError, EmptyTruncationRegion, IllConditioned,
                      MaxIterations, NotPositiveDefinite, NumericalFailure,
                      ParseError, RankDeficientData, StableKitError,
                      UnsupportedAlpha)
from .datasets import (Dataset, Source, abbey_returns, load_embedded,
                       read_csv)
from .density import (cdf_mixture, cdf_univariate, loglik, pdf_elliptical,
                      pdf_mixture, pdf_positive_stable, pdf_univariate)
from .emfit import (EmConfig, FitReport, PosteriorWeights, estep_weights,
                    fit_cauchy, fit_cauchy_mixture, fit_elliptical,
                    fit_skewed, fit_symmetric, fit_symmetric_mixture)
from .gof import GofResult, ad_statistic, gof_report, ks_statistic
from .params import (EllipticalParams, Form, MixtureSpec, SpecialCase,
                     SpectralMeasure, StableParams, convert_form,
                     special_case, validate)
from .simulate import (RngStream, rstable, rstable_elliptical,
                       rstable_positive, rstable_spectral, rstable_truncated)
from .spectral import (NnlsProblem, ProjectionGrid, estimate_spectral_measure,
                       estimate_symmetric_ecf, nnls_solve)

__version__ = "0.1.0"

__all__ = [
    "ComponentCollapse", "DegenerateEcf", "DimensionMismatch", "DomainError",
    "EmptyTruncationRegion", "IllConditioned", "MaxIterations",
    "NotPositiveDefinite", "NumericalFailure", "ParseError", "StableKitError",
    "RankDeficientData", "UnsupportedAlpha",
    "Dataset", "Source", "abbey_returns", "load_embedded", "read_csv",
    "cdf_mixture", "cdf_univariate", "loglik", "pdf_elliptical",
    "pdf_mixture", "pdf_positive_stable", "pdf_univariate",
    "EmConfig", "FitReport", "PosteriorWeights", "estep_weights",
    "fit_cauchy", "fit_cauchy_mixture", "fit_elliptical", "fit_skewed",
    "fit_symmetric", "fit_symmetric_mixture",
    "GofResult", "ad_statistic", "gof_report", "ks_statistic",
    "EllipticalParams", "Form", "MixtureSpec", "SpecialCase",
    "SpectralMeasure", "StableParams", "convert_form", "special_case",
    "validate",
    "RngStream", "rstable", "rstable_elliptical", "rstable_positive",
    "rstable_spectral", "rstable_truncated",
    "NnlsProblem", "ProjectionGrid", "estimate_spectral_measure",
    "estimate_symmetric_ecf", "nnls_solve",
    "__version__",
]
