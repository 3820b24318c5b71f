"""Parameter containers, validation, S0/S1 conversion, special-case detection.

Conventions
-----------
Univariate laws carry (alpha, beta, sigma, mu) plus a parameterization form:

* S1 is the classical form: for alpha != 1 the chf is
  exp{-|sigma t|^alpha [1 - i beta sgn(t) tan(pi alpha/2)] + i t mu}.
* S0 is the continuous-in-parameters form; its location relates to S1 by
  mu1 = mu0 - beta sigma tan(pi alpha/2)   (alpha != 1)
  mu1 = mu0 - beta (2/pi) sigma log sigma  (alpha = 1).

Both forms coincide when beta = 0. alpha = 2 is Gaussian for any beta, so
beta is normalized to 0 there; |alpha - 1| < 1e-9 is snapped to 1 to avoid
the tan(pi alpha/2) pole.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._errors import DomainError, NotPositiveDefinite

ALPHA_SNAP = 1e-9


class Form(enum.IntEnum):
    """Parameterization label; integer values match the CLI --param flag."""

    S0 = 0
    S1 = 1


class SpecialCase(enum.Enum):
    GAUSSIAN = "gaussian"
    CAUCHY = "cauchy"
    LEVY = "levy"
    POSITIVE_STABLE = "positive_stable"
    GENERAL = "general"


@dataclass(frozen=True)
class StableParams:
    """Univariate stable parameter vector.

    :param alpha: stability index in (0, 2]
    :param beta: skewness in [-1, 1]
    :param sigma: scale, > 0
    :param mu: location
    :param form: parameterization, Form.S0 or Form.S1
    """

    alpha: float
    beta: float
    sigma: float
    mu: float
    form: Form = Form.S1

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "sigma", float(self.sigma))
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "form", Form(self.form))
        if abs(self.alpha - 1.0) < ALPHA_SNAP and self.alpha != 1.0:
            object.__setattr__(self, "alpha", 1.0)
        if self.alpha == 2.0 and self.beta != 0.0:
            object.__setattr__(self, "beta", 0.0)


@dataclass(frozen=True, eq=False)
class EllipticalParams:
    """Elliptically contoured stable vector: (alpha, dispersion Sigma, mu)."""

    alpha: float
    Sigma: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "Sigma", np.array(self.Sigma, dtype=float))
        object.__setattr__(self, "mu", np.atleast_1d(np.array(self.mu, dtype=float)))

    @property
    def dim(self) -> int:
        return self.mu.shape[0]


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    """Discretized spectral measure: masses gamma_j at unit vectors s_j."""

    alpha: float
    points: np.ndarray
    masses: np.ndarray
    mu: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "points", np.atleast_2d(np.array(self.points, dtype=float)))
        object.__setattr__(self, "masses", np.atleast_1d(np.array(self.masses, dtype=float)))
        object.__setattr__(self, "mu", np.atleast_1d(np.array(self.mu, dtype=float)))

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class MixtureSpec:
    """Finite stable mixture: weights omega_j over StableParams components."""

    weights: tuple = field(default_factory=tuple)
    components: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def K(self) -> int:
        return len(self.weights)


def _check(cond, fieldname, message):
    if not cond:
        raise DomainError(f"{fieldname}: {message}")


def cholesky_dispersion(Sigma: np.ndarray) -> np.ndarray:
    """Lower Cholesky factor of the symmetrized dispersion matrix.

    User-supplied matrices are often semidefinite only up to rounding, so
    the factorization is retried once with a 1e-12 relative diagonal jitter
    before giving up with NotPositiveDefinite.
    """
    S = 0.5 * (Sigma + Sigma.T)
    try:
        return np.linalg.cholesky(S)
    except np.linalg.LinAlgError:
        pass
    jitter = 1e-12 * max(1.0, float(np.trace(S)) / S.shape[0])
    try:
        return np.linalg.cholesky(S + jitter * np.eye(S.shape[0]))
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("Sigma: must be positive definite") from None


def validate(params) -> None:
    """Check invariants; raise DomainError naming the offending field.

    Accepts any of the parameter containers defined in this module.
    """
    if isinstance(params, StableParams):
        a, b, s, m = params.alpha, params.beta, params.sigma, params.mu
        _check(math.isfinite(a) and 0.0 < a <= 2.0, "alpha", "must lie in (0, 2]")
        _check(math.isfinite(b) and -1.0 <= b <= 1.0, "beta", "must lie in [-1, 1]")
        _check(math.isfinite(s) and s > 0.0, "sigma", "must be positive and finite")
        _check(math.isfinite(m), "mu", "must be finite")
        return
    if isinstance(params, EllipticalParams):
        _check(math.isfinite(params.alpha) and 0.0 < params.alpha <= 2.0,
               "alpha", "must lie in (0, 2]")
        S, mu = params.Sigma, params.mu
        _check(S.ndim == 2 and S.shape[0] == S.shape[1], "Sigma", "must be square")
        _check(S.shape[0] == mu.shape[0], "mu", "length must match Sigma dimension")
        _check(np.all(np.isfinite(S)) and np.all(np.isfinite(mu)),
               "Sigma/mu", "must be finite")
        if not np.allclose(S, S.T, atol=1e-10 * max(1.0, float(np.abs(S).max()))):
            raise NotPositiveDefinite("Sigma: must be symmetric")
        cholesky_dispersion(S)
        return
    if isinstance(params, SpectralMeasure):
        a = params.alpha
        _check(math.isfinite(a) and 0.0 < a < 2.0 and a != 1.0,
               "alpha", "must lie in (0, 2) and differ from 1")
        pts, g = params.points, params.masses
        _check(pts.ndim == 2 and pts.shape[0] == g.shape[0],
               "points", "one unit vector per mass")
        _check(np.all(np.isfinite(pts)) and np.all(np.isfinite(g)),
               "points/masses", "must be finite")
        norms = np.linalg.norm(pts, axis=1)
        _check(np.all(np.abs(norms - 1.0) <= 1e-12), "points", "must be unit vectors")
        _check(np.all(g >= 0.0), "masses", "must be non-negative")
        _check(np.any(g > 0.0), "masses", "at least one must be positive")
        _check(params.mu.shape[0] == pts.shape[1], "mu", "length must match point dimension")
        return
    if isinstance(params, MixtureSpec):
        _check(len(params.weights) >= 1, "weights", "need at least one component")
        _check(len(params.weights) == len(params.components),
               "components", "one per weight")
        w = np.asarray(params.weights)
        _check(np.all(np.isfinite(w)) and np.all(w >= 0.0), "weights", "must be non-negative")
        _check(abs(float(w.sum()) - 1.0) <= 1e-12, "weights", "must sum to one")
        for comp in params.components:
            validate(comp)
        return
    raise TypeError(f"cannot validate object of type {type(params).__name__}")


def location_shift(alpha: float, beta: float, sigma: float) -> float:
    """Shift taking an S0 location to the S1 location: mu1 = mu0 - shift."""
    if alpha == 1.0:
        return beta * (2.0 / math.pi) * sigma * math.log(sigma)
    return beta * sigma * math.tan(math.pi * alpha / 2.0)


def convert_form(params: StableParams, target) -> StableParams:
    """Re-express the same distribution in the target parameterization."""
    validate(params)
    target = Form(target)
    if params.form == target:
        return params
    shift = location_shift(params.alpha, params.beta, params.sigma)
    if target == Form.S1:
        mu = params.mu - shift
    else:
        mu = params.mu + shift
    return StableParams(params.alpha, params.beta, params.sigma, mu, target)


def special_case(params: StableParams) -> SpecialCase:
    """Detect closed-form families; General otherwise."""
    validate(params)
    a, b = params.alpha, params.beta
    if a == 2.0:
        return SpecialCase.GAUSSIAN
    if a == 1.0 and b == 0.0:
        return SpecialCase.CAUCHY
    if a == 0.5 and abs(b) == 1.0:
        return SpecialCase.LEVY
    if b == 1.0 and a < 1.0:
        return SpecialCase.POSITIVE_STABLE
    return SpecialCase.GENERAL
