"""Random variate generation for stable laws.

All samplers draw from counter-based Philox streams keyed by (seed, stream),
so a given RngStream always reproduces the same variates regardless of what
was drawn elsewhere.  The univariate generator is the exact
trigonometric-exponential construction; the multivariate ones combine it with
Gaussian draws through the scale-mixture and discrete spectral
representations.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._errors import DomainError, EmptyTruncationRegion, UnsupportedAlpha
from .density import cdf_univariate
from .params import (EllipticalParams, Form, SpectralMeasure, StableParams,
                     cholesky_dispersion, convert_form, validate)

_DEGENERATE_A = 0.995   # matches the density-side point-mass threshold


@dataclass(frozen=True)
class RngStream:
    """Reproducible random source: same (seed, stream_id) -> same draws."""
    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed % 2 ** 64, self.stream_id % 2 ** 64],
                       dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def child(self, offset: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id + offset)


def _cms_standard(g: np.random.Generator, n: int, alpha: float, beta: float):
    """Standardized S1(alpha, beta, 1, 0) draws."""
    U = g.uniform(-np.pi / 2, np.pi / 2, size=n)
    W = np.maximum(g.standard_exponential(size=n), 1e-300)
    if alpha == 1.0:
        half = np.pi / 2
        arg = half + beta * U
        return (arg * np.tan(U)
                - beta * np.log(half * W * np.cos(U) / arg)) / half
    tanp = math.tan(math.pi * alpha / 2.0)
    B = math.atan(beta * tanp) / alpha
    S = (1.0 + beta ** 2 * tanp ** 2) ** (1.0 / (2.0 * alpha))
    cU = np.cos(U)
    cShift = np.maximum(np.cos(U - alpha * (U + B)), 1e-300)
    return (S * np.sin(alpha * (U + B)) / cU ** (1.0 / alpha)
            * (cShift / W) ** ((1.0 - alpha) / alpha))


def rstable(n: int, params: StableParams, rng: RngStream) -> np.ndarray:
    """n independent draws from a univariate stable law."""
    validate(params)
    if n < 0:
        raise DomainError("sample size must be nonnegative")
    g = rng.generator()
    x = _cms_standard(g, n, params.alpha, params.beta)
    alpha, beta, sigma = params.alpha, params.beta, params.sigma
    if params.form == Form.S1:
        if alpha == 1.0:
            return sigma * x + (2.0 / math.pi) * beta * sigma * math.log(sigma) \
                + params.mu
        return sigma * x + params.mu
    if alpha == 1.0:
        return sigma * x + params.mu
    return sigma * x + params.mu - sigma * beta * math.tan(math.pi * alpha / 2.0)


def rstable_positive(n: int, alpha_half: float, rng: RngStream) -> np.ndarray:
    """Draws from the one-sided law with Laplace transform exp(-s^alpha_half)."""
    a = float(alpha_half)
    if not 0.0 < a < 1.0 - 1e-9:
        raise DomainError("alpha_half must lie in (0, 1)")
    g = rng.generator()
    return _positive_from(g, n, a)


def _positive_from(g: np.random.Generator, n: int, a: float) -> np.ndarray:
    x = _cms_standard(g, n, a, 1.0)
    return math.cos(math.pi * a / 2.0) ** (1.0 / a) * x


def rstable_truncated(n: int, params: StableParams, a: float, b: float,
                      rng: RngStream) -> np.ndarray:
    """Draws conditioned on the interval (a, b), by inverting the
    distribution function on uniform variates."""
    validate(params)
    if not a < b:
        raise EmptyTruncationRegion(f"empty interval ({a:g}, {b:g})")
    F_lo = 0.0 if a == -np.inf else float(cdf_univariate(a, params))
    F_hi = 1.0 if b == np.inf else float(cdf_univariate(b, params))
    mass = F_hi - F_lo
    if mass <= 1e-12:
        raise EmptyTruncationRegion(
            f"interval ({a:g}, {b:g}) carries no probability mass")
    g = rng.generator()
    u = F_lo + mass * g.random(n)
    if n == 0:
        return np.empty(0)
    p1 = convert_form(params, Form.S1)
    scale = max(p1.sigma, 1.0)
    lo = a if np.isfinite(a) else _expand_bracket(p1, u.min(), -1)
    hi = b if np.isfinite(b) else _expand_bracket(p1, u.max(), +1)
    bl = np.full(n, lo)
    bh = np.full(n, hi)
    for _ in range(200):
        if np.max(bh - bl) <= 1e-10 * scale:
            break
        mid = 0.5 * (bl + bh)
        below = np.asarray(cdf_univariate(mid, params)) < u
        bl = np.where(below, mid, bl)
        bh = np.where(below, bh, mid)
    x = 0.5 * (bl + bh)
    # midpoint rounding must not land draws on a finite endpoint
    if np.isfinite(a):
        x = np.maximum(x, np.nextafter(a, b))
    if np.isfinite(b):
        x = np.minimum(x, np.nextafter(b, a))
    return x


def _expand_bracket(p1: StableParams, u_edge: float, side: int) -> float:
    x = p1.mu + side * 4.0 * p1.sigma
    step = 4.0 * p1.sigma
    for _ in range(2000):
        F = float(cdf_univariate(x, p1))
        if (side < 0 and F < u_edge) or (side > 0 and F > u_edge):
            return x
        step *= 2.0
        x += side * step
    raise EmptyTruncationRegion("could not bracket the requested quantiles")


def rstable_elliptical(n: int, params: EllipticalParams,
                       rng: RngStream) -> np.ndarray:
    """Draws from an elliptically contoured stable law, via the Gaussian
    scale-mixture representation."""
    validate(params)
    g = rng.generator()
    a = params.alpha / 2.0
    if a >= _DEGENERATE_A:
        P = np.ones(n)
    else:
        P = _positive_from(g, n, a)
    N = g.standard_normal(size=(n, params.dim))
    L = cholesky_dispersion(params.Sigma)
    return np.sqrt(P)[:, None] * (N @ L.T) + params.mu[None, :]


def rstable_spectral(n: int, params: SpectralMeasure,
                     rng: RngStream) -> np.ndarray:
    """Draws from the multivariate stable law with a discrete spectral
    measure: one totally skewed standard factor per atom, weighted by
    mass^(1/alpha) and sent along its anchor."""
    if params.alpha == 1.0:
        raise UnsupportedAlpha("spectral sampler requires alpha != 1")
    validate(params)
    g = rng.generator()
    m = params.points.shape[0]
    V = np.empty((n, m))
    for j in range(m):
        V[:, j] = _cms_standard(g, n, params.alpha, 1.0)
    w = params.masses ** (1.0 / params.alpha)
    return (V * w[None, :]) @ params.points + params.mu[None, :]
