"""Fast evaluation of the positive-stable mixing law and its E-step integrals.

The mixing variable P of the normal scale-mixture representation has Laplace
transform E exp(-s P) = exp(-s^a) with a = alpha/2.  Its density is evaluated
two ways depending on the argument: the convergent power series in 1/p for
p beyond the series threshold, and the Zolotarev/Kanter single-integral form

    f(p) = a/(1-a) * p^{-1/(1-a)} * (1/pi) Int_0^pi A(u) exp(-A(u) p^{-a/(1-a)}) du

below it.  The integrand is positive and non-oscillatory, so a fixed
Gauss-Legendre rule evaluated in log space is accurate and vectorizes; values
are cached on a log-grid per a and interpolated.  Correctness against the
public density route is pinned by tests.
"""

import math
from collections import OrderedDict

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import gammaln

from ._quad import gl_nodes

_SERIES_K = 150
_DEGENERATE_A = 0.995       # beyond this the law is treated as the point mass at 1
_cache: OrderedDict = OrderedDict()
_CACHE_MAX = 128


def _tail_threshold(a: float) -> float:
    """Smallest p at which the k=150 inverse-power series is accurate."""
    k = _SERIES_K
    return (a * math.exp(gammaln(k * a + a) - gammaln(k * a + 1.0))) ** (1.0 / a) + a


def _series_logpdf(p: np.ndarray, a: float) -> np.ndarray:
    i = np.arange(1, _SERIES_K + 1)
    coef = np.exp(gammaln(i * a + 1.0) - gammaln(i + 1.0)) * np.sin(i * np.pi * a)
    sign = np.where(i % 2 == 1, 1.0, -1.0)
    lp = np.log(p)
    terms = (sign * coef)[None, :] * np.exp(-np.outer(lp, i * a))
    s = terms.sum(axis=1)
    s = np.maximum(s, 1e-300)
    return np.log(s) - np.log(np.pi) - lp


def _kanter_logpdf(p: np.ndarray, a: float) -> np.ndarray:
    """Log-density via the Kanter integral, stable in log space."""
    x, w = gl_nodes(160)
    u = 0.5 * np.pi * (x + 1.0)
    wu = 0.5 * np.pi * w
    lnA = (a / (1.0 - a)) * np.log(np.sin(a * u) / np.sin(u)) \
        + np.log(np.sin((1.0 - a) * u) / np.sin(u))
    lp = np.log(p)[:, None]
    expo = lnA[None, :] - (a / (1.0 - a)) * lp
    ln_terms = lnA[None, :] - np.exp(np.clip(expo, None, 700.0))
    m = ln_terms.max(axis=1)
    inner = np.einsum("ij,j->i", np.exp(ln_terms - m[:, None]), wu)
    out = np.log(a / (1.0 - a)) - (1.0 / (1.0 - a)) * lp[:, 0] + m + np.log(inner / np.pi)
    return np.where(np.isfinite(out), out, -np.inf)


class MixingLaw:
    """Cached evaluator for the mixing density at a fixed a = alpha/2."""

    def __init__(self, a: float):
        if not 0.0 < a < 1.0:
            raise ValueError("a must lie in (0, 1)")
        self.a = a
        self.p_tail = _tail_threshold(a)
        # left cutoff: ln f ~ -(1-a) a^{a/(1-a)} p^{-a/(1-a)} reaches -745
        B = (1.0 - a) * a ** (a / (1.0 - a))
        p_left = (B / 745.0) ** ((1.0 - a) / a)
        self.p_left = min(p_left * 0.5, self.p_tail * 0.5)
        grid = np.geomspace(self.p_left, self.p_tail * 1.05, 700)
        vals = _kanter_logpdf(grid, a)
        good = np.isfinite(vals)
        self._lo = float(np.log(grid[good][0]))
        self._hi = float(np.log(grid[good][-1]))
        self._spl = CubicSpline(np.log(grid[good]), vals[good])
        # a second spline keeps bulk tail evaluation off the series; knots
        # cluster just past the threshold where the log-density still bends
        # before settling onto its power-law asymptote
        tl = math.log(self.p_tail)
        tgrid = np.concatenate([np.linspace(tl, tl + 40.0, 1601)[:-1],
                                np.linspace(tl + 40.0, tl + 400.0, 601)])
        self._tail_hi = tgrid[-1]
        self._tail_spl = CubicSpline(tgrid, _series_logpdf(np.exp(tgrid), a))

    def logpdf(self, p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        out = np.full(p.shape, -np.inf)
        pos = p > 0
        ln_p = np.log(np.maximum(p, 1e-300))
        tail = pos & (p >= self.p_tail)
        near = tail & (ln_p <= self._tail_hi)
        far = tail & ~near
        mid = pos & ~tail & (ln_p >= self._lo)
        if near.any():
            out[near] = self._tail_spl(ln_p[near])
        if far.any():
            out[far] = _series_logpdf(p[far], self.a)
        if mid.any():
            out[mid] = self._spl(ln_p[mid])
        return out


def get_mixing_law(a: float) -> MixingLaw:
    key = round(float(a), 12)
    law = _cache.get(key)
    if law is None:
        law = MixingLaw(a)
        _cache[key] = law
        if len(_cache) > _CACHE_MAX:
            _cache.popitem(last=False)
    else:
        _cache.move_to_end(key)
    return law


def kernel_integrals(q, a: float, d: int = 1, extra_inverse_powers=(1,)):
    """Integrals I_k(q) = Int p^{-d/2-k} exp(-q/(2p)) f_P(p) dp for k in (0,)+extra.

    Shared by the scale-mixture density (k=0) and E-step weights
    (E[P^{-k} | q] = I_k / I_0).  Vectorized over q; per-point integration
    windows on the log-p axis, 96 Gauss-Legendre nodes each.

    Returns a list of arrays, one per power, ordered (0,) + extra.
    """
    q = np.atleast_1d(np.asarray(q, dtype=float))
    powers = (0,) + tuple(extra_inverse_powers)
    if a >= _DEGENERATE_A:
        base = np.exp(-q / 2.0)
        return [base.copy() for _ in powers]
    law = get_mixing_law(a)
    # coarse scan to locate per-q integration windows
    u_lo = math.log(law.p_left)
    u_hi = max(math.log(law.p_tail), np.log(np.maximum(q.max(), 1.0))) + 60.0
    n_scan = 320
    u = np.linspace(u_lo, u_hi, n_scan)
    lf = law.logpdf(np.exp(u))
    ln_h = -0.5 * d * u[None, :] - 0.5 * q[:, None] * np.exp(-u)[None, :] \
        + lf[None, :] + u[None, :]
    m = ln_h.max(axis=1)
    keep = ln_h >= (m[:, None] - 46.0)
    idx = np.arange(n_scan)
    first = np.where(keep, idx[None, :], n_scan).min(axis=1)
    last = np.where(keep, idx[None, :], -1).max(axis=1)
    du = u[1] - u[0]
    win_lo = u[np.maximum(first - 1, 0)] - du
    win_hi = u[np.minimum(last + 1, n_scan - 1)] + du
    x, w = gl_nodes(96)
    half = 0.5 * (win_hi - win_lo)
    mid = 0.5 * (win_hi + win_lo)
    nodes = mid[:, None] + half[:, None] * x[None, :]
    wts = half[:, None] * w[None, :]
    lf_n = law.logpdf(np.exp(nodes))
    base_ln = -0.5 * d * nodes - 0.5 * q[:, None] * np.exp(-nodes) + lf_n + nodes
    mref = m
    out = []
    for k in powers:
        integ = np.exp(base_ln - k * nodes - mref[:, None])
        out.append(np.einsum("ij,ij->i", integ, wts) * np.exp(mref))
    return out
