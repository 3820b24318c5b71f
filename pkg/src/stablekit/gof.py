"""Goodness-of-fit statistics for fitted stable models."""

from dataclasses import dataclass

import numpy as np

from ._errors import DomainError
from .density import cdf_mixture, cdf_univariate
from .params import MixtureSpec, StableParams

_CDF_CLAMP = 1e-12


def _model_cdf(data: np.ndarray, model) -> np.ndarray:
    if isinstance(model, StableParams):
        return np.asarray(cdf_univariate(data, model))
    if isinstance(model, MixtureSpec):
        return np.asarray(cdf_mixture(data, model))
    raise DomainError(f"no distribution function for {type(model).__name__}")


def ks_statistic(data, model) -> float:
    """Kolmogorov-Smirnov distance between the empirical and model
    distribution functions."""
    y = np.sort(np.asarray(data, dtype=float))
    n = y.size
    if n == 0:
        raise DomainError("need at least one observation")
    F = _model_cdf(y, model)
    i = np.arange(1, n + 1)
    return float(np.max(np.maximum(i / n - F, F - (i - 1) / n)))


def ad_statistic(data, model) -> float:
    """Anderson-Darling statistic, with the model distribution function
    clamped away from 0 and 1 so the logarithms stay finite."""
    y = np.sort(np.asarray(data, dtype=float))
    n = y.size
    if n == 0:
        raise DomainError("need at least one observation")
    F = np.clip(_model_cdf(y, model), _CDF_CLAMP, 1.0 - _CDF_CLAMP)
    i = np.arange(1, n + 1)
    s = (2 * i - 1) * (np.log(F) + np.log(1.0 - F[::-1]))
    return float(-n - s.sum() / n)


@dataclass(frozen=True)
class GofResult:
    n: int
    ks: float
    ad: float


def gof_report(data, model) -> GofResult:
    """Both statistics for one data/model pair."""
    y = np.asarray(data, dtype=float)
    return GofResult(n=y.size, ks=ks_statistic(y, model), ad=ad_statistic(y, model))
