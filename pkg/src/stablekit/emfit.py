"""EM-type estimation for stable laws and their mixtures.

The driving structure is the normal scale mixture: a stable draw is a
Gaussian whose variance is inflated by a latent positive stable factor P.
The E-step reduces to posterior moments of 1/P (plus one extra latent
variable in the skewed and Cauchy decompositions), and the M-step splits
into closed-form weighted updates for location and scale together with
bounded one-dimensional searches on the observed log-likelihood for the
shape parameters.  Proposed steps are kept only when the observed
log-likelihood does not decrease, so reported traces are monotone by
construction even though the E-step is numerical.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import solve_triangular

from ._errors import (ComponentCollapse, DimensionMismatch, DomainError,
                      NumericalFailure, RankDeficientData)
from ._mixing import kernel_integrals
from ._quad import gl_nodes
from .density import pdf_elliptical, pdf_univariate
from .gof import GofResult, gof_report
from .params import (EllipticalParams, Form, MixtureSpec, StableParams,
                     cholesky_dispersion, convert_form, validate)
from .simulate import RngStream, rstable_positive

_ALPHA_LO = 0.3
_ALPHA_HI = 2.0
_BETA_EDGE = 0.999
_BETA_WIDE = 0.99999
_MC_STREAM = 1_000_003
_FLOOR = 1e-300


@dataclass(frozen=True)
class EmConfig:
    """Iteration and quadrature controls shared by all fit operations."""

    max_iter: int = 500
    tol: float = 1e-6
    quad_nodes: int = 96
    mc_fallback_draws: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if self.max_iter < 1:
            raise DomainError("max_iter: must be positive")
        if not self.tol > 0.0:
            raise DomainError("tol: must be positive")
        if self.quad_nodes < 8:
            raise DomainError("quad_nodes: need at least 8")
        if self.mc_fallback_draws < 1:
            raise DomainError("mc_fallback_draws: must be positive")
        if self.seed < 0:
            raise DomainError("seed: must be non-negative")


@dataclass(frozen=True, eq=False)
class PosteriorWeights:
    """Per-observation latent moments w_i = E[1/P | y_i]; tau carries the
    mixture membership matrix when one exists."""

    w: np.ndarray
    tau: np.ndarray | None = None


@dataclass(frozen=True, eq=False)
class FitReport:
    """Outcome of one fit: estimates, the observed log-likelihood trace,
    and convergence bookkeeping.

    sigma_trace holds the per-iteration dispersion iterates for the
    multivariate fit (empty otherwise).
    """

    estimates: object
    loglik_trace: np.ndarray
    iterations: int
    converged: bool
    tol: float
    gof: GofResult | None = None
    sigma_trace: tuple = ()


# ---------------------------------------------------------------------------
# latent-moment machinery


def _kernel_moments(q, a, d, cfg, rng_mc):
    """Mixing-kernel integrals (I_0, I_1) against the positive stable law,
    with a seeded Monte-Carlo fallback when the quadrature path fails."""
    q = np.asarray(q, dtype=float)
    try:
        I0, I1 = kernel_integrals(q, a, d=d, extra_inverse_powers=(1,))
        if np.all(np.isfinite(I0)) and np.all(np.isfinite(I1)) \
                and np.all(I0 >= 0.0):
            return I0, I1
    except NumericalFailure:
        pass
    P = rstable_positive(cfg.mc_fallback_draws, a, rng_mc)
    ln_p = np.log(P)
    I0 = np.empty(q.size)
    I1 = np.empty(q.size)
    flat = q.reshape(-1)
    for lo in range(0, flat.size, 256):
        qc = flat[lo:lo + 256][:, None]
        ln_h = -0.5 * d * ln_p[None, :] - qc / (2.0 * P[None, :])
        top = ln_h.max(axis=1, keepdims=True)
        h = np.exp(ln_h - top)
        I0[lo:lo + 256] = np.exp(top[:, 0]) * h.mean(axis=1)
        I1[lo:lo + 256] = np.exp(top[:, 0]) * (h / P[None, :]).mean(axis=1)
    return I0.reshape(q.shape), I1.reshape(q.shape)


def estep_weights(data, params: StableParams, cfg: EmConfig | None = None) -> PosteriorWeights:
    """Posterior mean of the inverse mixing factor, w_i = E[1/P | y_i], for
    a symmetric law.  Fixed-node quadrature on the mixing density; falls
    back to seeded Monte Carlo if the quadrature reports failure."""
    cfg = cfg or EmConfig()
    validate(params)
    if params.beta != 0.0:
        raise DomainError("beta: scale-mixture weights require a symmetric law")
    if not params.alpha < 2.0:
        raise DomainError("alpha: must lie in (0, 2)")
    y = np.asarray(data, dtype=float).reshape(-1)
    if not np.all(np.isfinite(y)):
        raise DomainError("data must be finite")
    r = (y - params.mu) / params.sigma
    I0, I1 = _kernel_moments(0.5 * r * r, 0.5 * params.alpha, 1, cfg,
                             RngStream(cfg.seed, stream_id=_MC_STREAM))
    return PosteriorWeights(I1 / np.maximum(I0, _FLOOR))


_T_LAW = StableParams(1.0, 1.0, 1.0, 0.0, Form.S1)
_T_SPLINE_CACHE: list = []


def _t_spline():
    """Log-density interpolant for the fully skewed alpha=1 latent law on
    an asinh-stretched axis, with a quadratic-decay continuation past the
    right knot.  Built once per process."""
    if not _T_SPLINE_CACHE:
        from scipy.interpolate import CubicSpline
        probe = np.linspace(-8.0, 0.0, 81)
        fp = np.asarray(pdf_univariate(probe, _T_LAW))
        v_left = float(probe[np.argmax(fp > 1e-12)])
        x_lo = math.asinh((v_left - 1.0) / 2.0)
        x_md = math.asinh((200.0 - 1.0) / 2.0)
        x_hi = math.asinh((1500.0 - 1.0) / 2.0)
        # the density is near power-law past the dense range, so knots thin out
        xg = np.concatenate([np.linspace(x_lo, x_md, 900)[:-1],
                             np.linspace(x_md, x_hi, 60)])
        vg = 1.0 + 2.0 * np.sinh(xg)
        fg = np.asarray(pdf_univariate(vg, _T_LAW))
        spl = CubicSpline(xg, np.log(np.maximum(fg, _FLOOR)))
        _T_SPLINE_CACHE.append((x_lo, x_hi, spl, float(vg[-1]),
                                float(np.log(fg[-1]))))
    return _T_SPLINE_CACHE[0]


def _t_logpdf(v):
    x_lo, x_hi, spl, v_hi, lf_hi = _t_spline()
    x = np.arcsinh((v - 1.0) / 2.0)
    out = np.full(np.shape(v), -np.inf)
    mid = (x >= x_lo) & (x <= x_hi)
    out[mid] = spl(x[mid])
    far = x > x_hi
    if np.any(far):
        out[far] = lf_hi - 2.0 * (np.log(v[far]) - math.log(v_hi))
    return out


def _cauchy_post(y, beta, sigma, mu0, nodes):
    """Posterior weight moments and marginal density for the skewed Cauchy
    decomposition.

    The latent axis carries two localized factors: the latent density
    around the origin and the conditional Cauchy likelihood, a peak of
    width e/|beta| at a data-dependent position.  Substituting the
    likelihood's arctangent coordinate flattens the second factor exactly;
    the first becomes a per-point bump, handled by panels geometrically
    refined into its image.  Degenerate (clipped) panels get zero width
    and drop out, so one fixed panel layout serves every point."""
    kappa = (2.0 / math.pi) * math.log(abs(beta))
    e = 1.0 - abs(beta)
    r0 = (y - mu0) / sigma
    w0 = e / abs(beta)
    vs = r0 / beta - kappa
    n = y.size
    half_pi = 0.5 * math.pi
    ub = np.arctan((1.0 - vs) / w0)
    delta = np.minimum(2.0 * w0 / ((vs - 1.0) ** 2 + w0 * w0), half_pi / 4.0)
    ladder = delta[:, None] * 3.0 ** np.arange(-2, 10)[None, :]
    around = np.concatenate([ub[:, None] - ladder, ub[:, None],
                             ub[:, None] + ladder], axis=1)
    base = np.linspace(-half_pi, half_pi, 25)
    edges = np.concatenate([np.broadcast_to(base, (n, base.size)),
                            np.clip(around, -half_pi, half_pi)], axis=1)
    edges.sort(axis=1)
    xg, wg = gl_nodes(8)
    mid = 0.5 * (edges[:, 1:] + edges[:, :-1])
    rad = 0.5 * (edges[:, 1:] - edges[:, :-1])
    u = mid[..., None] + rad[..., None] * xg
    v = vs[:, None, None] + w0 * np.tan(u)
    with np.errstate(over="ignore"):
        meas = np.exp(_t_logpdf(v)) * (rad[..., None] * wg) \
            / (math.pi * sigma * abs(beta))
    wP = 4.0 * np.cos(u) ** 2
    Z = np.maximum(meas.sum(axis=(1, 2)), _FLOOR)
    A = (meas * wP).sum(axis=(1, 2)) / Z
    V = (meas * wP * v).sum(axis=(1, 2)) / Z
    return A, V, Z


def _cauchy_surrogate(y, beta, sigma, mu0, nodes):
    """Density of the skewed Cauchy law through its latent decomposition;
    cheap enough to sit inside a line search."""
    if beta == 0.0:
        r2 = ((y - mu0) / sigma) ** 2
        return 1.0 / (math.pi * sigma * (1.0 + r2))
    beta = float(np.clip(beta, -_BETA_EDGE, _BETA_EDGE))
    return _cauchy_post(y, beta, sigma, mu0, nodes)[2]


def _cauchy_moments(y, beta, sigma, mu0, nodes):
    """E[1/P | y] and E[g/P | y] for the skewed Cauchy decomposition, where
    g is the latent skew contribution.  The conditional inverse-mixing mean
    given the extra latent variable is closed-form, so only one quadrature
    axis remains."""
    if beta == 0.0:
        r2 = ((y - mu0) / sigma) ** 2
        return 4.0 / (1.0 + r2), np.zeros_like(y), 1.0
    # at |beta| = 1 the conditional width collapses, so pull boundary
    # components just inside; the production accept step guards accuracy
    beta = float(np.clip(beta, -_BETA_EDGE, _BETA_EDGE))
    kappa = (2.0 / math.pi) * math.log(abs(beta))
    A, V, _ = _cauchy_post(y, beta, sigma, mu0, nodes)
    B = beta * (V + kappa * A)
    return A, B, 1.0 - abs(beta)


def _v_grid(alpha, nodes):
    """Tangent-map grid for the fully skewed stable latent variable at the
    given tail index; half-line when the law is one-sided."""
    x, w = gl_nodes(nodes)
    if alpha > 1.0:
        u = 0.5 * math.pi * x
        jac = math.pi / np.cos(u) ** 2
    else:
        u = 0.25 * math.pi * (x + 1.0)
        jac = 0.5 * math.pi / np.cos(u) ** 2
    v = 2.0 * np.tan(u)
    fV = np.asarray(pdf_univariate(v, StableParams(alpha, 1.0, 1.0, 0.0,
                                                   Form.S1)))
    return v, w * jac * fV


def _away_from_one(alpha):
    """The skewed decomposition degenerates at tail index one; moments are
    taken at a nearby index on the same side."""
    if abs(alpha - 1.0) >= 1e-3:
        return alpha
    return 1.0 - 1e-3 if alpha <= 1.0 else 1.0 + 1e-3


def _skew_moments(y, alpha, beta, sigma, mu0, cfg, rng_mc):
    """E[1/P | y] and E[g/P | y] for the skewed decomposition with latent
    pair (P, V); the mixing factor is integrated out first so only the
    V axis is discretized."""
    if beta == 0.0:
        r = (y - mu0) / sigma
        I0, I1 = _kernel_moments(0.5 * r * r, 0.5 * alpha, 1, cfg, rng_mc)
        return I1 / np.maximum(I0, _FLOOR), np.zeros_like(y), 1.0
    th = math.copysign(abs(beta) ** (1.0 / alpha), beta)
    lshift = beta * math.tan(math.pi * alpha / 2.0)
    e = (1.0 - abs(beta)) ** (1.0 / alpha)
    v, wv = _v_grid(alpha, cfg.quad_nodes)
    rmat = (y[:, None] - mu0 - sigma * (th * v[None, :] - lshift)) / (sigma * e)
    q = 0.5 * rmat * rmat
    # entries whose prior weight times the power-law kernel bound cannot
    # touch the row sums are skipped before the expensive integrals
    with np.errstate(divide="ignore"):
        score = np.log(wv)[None, :] - (0.5 + 0.5 * alpha) * np.log1p(q)
    keep = score >= score.max(axis=1, keepdims=True) - 40.0
    kidx = np.flatnonzero(keep.reshape(-1))
    i0f, i1f = _kernel_moments(q.reshape(-1)[kidx], 0.5 * alpha, 1, cfg,
                               rng_mc)
    I0 = np.zeros_like(q)
    I1 = np.zeros_like(q)
    I0.reshape(-1)[kidx] = i0f
    I1.reshape(-1)[kidx] = i1f
    I0 *= wv[None, :]
    I1 *= wv[None, :]
    Z = np.maximum(I0.sum(axis=1), _FLOOR)
    A = I1.sum(axis=1) / Z
    Bv = (I1 * v[None, :]).sum(axis=1) / Z
    B = th * Bv - lshift * A
    return A, B, e


# ---------------------------------------------------------------------------
# shared M-step pieces


def _cm_quadratic(tau, A, B, y, e):
    """Joint weighted maximizer of the complete-data likelihood in
    (sigma, mu) for the pattern y = mu + sigma*g + sigma*e*sqrt(2P)*N.

    The stationarity pair collapses to one quadratic in sigma; the latent
    second-moment term cancels from both equations, so only E[1/P] and
    E[g/P] are needed.  Returns None when the weights degenerate.
    """
    wA = tau * A
    Sa = float(wA.sum())
    nw = float(tau.sum())
    if not (Sa > 0.0 and nw > 0.0 and e > 0.0):
        return None
    Sy = float(wA @ y)
    tB = tau * B
    Sb = float(tB.sum())
    dres = y - Sy / Sa
    D = float(wA @ (dres * dres))
    E = float(tB @ dres)
    if not D > 0.0:
        return None
    s_new = (-E + math.sqrt(E * E + 8.0 * nw * e * e * D)) / (4.0 * nw * e * e)
    if not (math.isfinite(s_new) and s_new > 0.0):
        return None
    return s_new, (Sy - s_new * Sb) / Sa


def _guarded(f):
    def wrapped(*args):
        try:
            return f(*args)
        except NumericalFailure:
            return -np.inf
    return wrapped


def _golden_max(f, lo, hi, iters):
    """Golden-section maximization returning the best evaluated point, so
    callers can compare it against the incumbent."""
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    best_x, best_f = lo, f(lo)
    fh = f(hi)
    if fh > best_f:
        best_x, best_f = hi, fh
    a, b = lo, hi
    x1 = b - phi * (b - a)
    x2 = a + phi * (b - a)
    f1, f2 = f(x1), f(x2)
    for x, fx in ((x1, f1), (x2, f2)):
        if fx > best_f:
            best_x, best_f = x, fx
    for _ in range(iters):
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi * (b - a)
            f1 = f(x1)
            if f1 > best_f:
                best_x, best_f = x1, f1
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi * (b - a)
            f2 = f(x2)
            if f2 > best_f:
                best_x, best_f = x2, f2
    return best_x, best_f


def _pdf_comp(y, comp):
    return np.asarray(pdf_univariate(y, comp))


def _comp_matrix(y, comps):
    return np.column_stack([_pdf_comp(y, c) for c in comps])


def _mix_state(y, omega, comps):
    F = _comp_matrix(y, comps)
    g = np.maximum(F @ omega, _FLOOR)
    return F, g, float(np.log(g).sum())


def _take_cm_step(y, omega, comps, omega_new, prop, F, g, L):
    """Apply the weighted CM proposal, geometrically backtracking toward
    the current point when the observed log-likelihood would drop."""
    lam = 1.0
    for _ in range(7):
        om = (1.0 - lam) * omega + lam * omega_new
        cs = []
        for j, c in enumerate(comps):
            if prop[j] is None:
                cs.append(c)
            else:
                s_new, m_new = prop[j]
                cs.append(replace(c,
                                  sigma=(1.0 - lam) * c.sigma + lam * s_new,
                                  mu=(1.0 - lam) * c.mu + lam * m_new))
        try:
            Fc, gc, Lc = _mix_state(y, om, cs)
        except NumericalFailure:
            lam *= 0.5
            continue
        if Lc >= L:
            return om, cs, Fc, gc, Lc, True
        lam *= 0.5
    return omega, comps, F, g, L, False


def _refine_component(y, omega, comps, F, g, L, j):
    """Direct scale and location polish for one component, used when the
    CM proposal was rejected outright."""
    oj = omega[j]
    others = g - oj * F[:, j]

    def with_comp(c):
        fj = _pdf_comp(y, c)
        gc = np.maximum(others + oj * fj, _FLOOR)
        return float(np.log(gc).sum()), fj, gc

    cur = comps[j]
    sx, sL = _golden_max(_guarded(lambda s: with_comp(replace(cur, sigma=s))[0]),
                         cur.sigma / 1.7, cur.sigma * 1.7, 14)
    if sL > L:
        comps[j] = replace(cur, sigma=sx)
        L, F[:, j], g = with_comp(comps[j])
        others = g - oj * F[:, j]
        cur = comps[j]
    mx, mL = _golden_max(_guarded(lambda m: with_comp(replace(cur, mu=m))[0]),
                         cur.mu - cur.sigma, cur.mu + cur.sigma, 14)
    if mL > L:
        comps[j] = replace(cur, mu=mx)
        L, F[:, j], g = with_comp(comps[j])
    return F, g, L


def _tau_step(omega, F, g, n, K):
    tau = omega[None, :] * F / g[:, None]
    col = tau.sum(axis=0)
    if np.any(col < K * 1e-6):
        raise ComponentCollapse(
            "a mixture component has lost essentially all posterior mass")
    return tau, col / n


def _rel_change(L_old, L_new):
    return abs(L_new - L_old) / max(1.0, abs(L_old))


def _comp_delta(comps_old, comps_new, omega_old=None, omega_new=None):
    d = 0.0
    if omega_old is not None:
        d = float(np.max(np.abs(np.asarray(omega_new) - np.asarray(omega_old))))
    for co, cn in zip(comps_old, comps_new):
        s = max(co.sigma, _FLOOR)
        d = max(d, abs(cn.alpha - co.alpha), abs(cn.beta - co.beta),
                abs(cn.sigma - co.sigma) / s, abs(cn.mu - co.mu) / s)
    return d


def _sorted_mixture(omega, comps):
    order = np.argsort([c.mu for c in comps], kind="stable")
    return MixtureSpec(tuple(float(omega[j]) for j in order),
                       tuple(comps[j] for j in order))


def _clean_univariate(data):
    y = np.asarray(data, dtype=float).reshape(-1)
    if not np.all(np.isfinite(y)):
        raise DomainError("data must be finite")
    if y.size < 10:
        raise DomainError("need at least 10 observations")
    if np.ptp(y) == 0.0:
        raise DomainError("data has zero spread; scale is unidentifiable")
    return y


# ---------------------------------------------------------------------------
# symmetric family


def _sym_engine(y, omega, comps, cfg):
    n = y.size
    K = len(comps)
    rng_mc = RngStream(cfg.seed, stream_id=_MC_STREAM)
    F, g, L = _mix_state(y, omega, comps)
    trace = [L]
    converged = False
    for _ in range(cfg.max_iter):
        L_old, omega_old, comps_old = L, omega, list(comps)
        tau, omega_new = _tau_step(omega, F, g, n, K)
        prop = []
        for j, c in enumerate(comps):
            r = (y - c.mu) / c.sigma
            I0, I1 = _kernel_moments(0.5 * r * r, 0.5 * c.alpha, 1, cfg, rng_mc)
            A = I1 / np.maximum(I0, _FLOOR)
            prop.append(_cm_quadratic(tau[:, j], A, np.zeros(n), y, 1.0))
        omega, comps, F, g, L, ok = _take_cm_step(y, omega, comps, omega_new,
                                                  prop, F, g, L)
        if not ok:
            for j in range(K):
                F, g, L = _refine_component(y, omega, comps, F, g, L, j)
        for j in range(K):
            cur = comps[j]
            oj = omega[j]
            others = g - oj * F[:, j]

            def cand(a):
                fj = _pdf_comp(y, replace(cur, alpha=a))
                return float(np.log(np.maximum(others + oj * fj, _FLOOR)).sum())

            ax, aL = _golden_max(_guarded(cand), _ALPHA_LO, _ALPHA_HI, 22)
            if aL > L:
                comps[j] = replace(cur, alpha=ax)
                F[:, j] = _pdf_comp(y, comps[j])
                g = np.maximum(F @ omega, _FLOOR)
                L = float(np.log(g).sum())
        trace.append(L)
        if _rel_change(L_old, L) < cfg.tol \
                or _comp_delta(comps_old, comps, omega_old, omega) < 1e-6:
            converged = True
            break
    return omega, comps, np.asarray(trace), converged


def fit_symmetric(data, init, cfg: EmConfig | None = None) -> FitReport:
    """Symmetric stable fit: (alpha, sigma, mu) from init (a0, s0, m0).

    Location and scale move by closed-form weighted updates; the tail index
    by a bounded search on the observed log-likelihood.
    """
    cfg = cfg or EmConfig()
    y = _clean_univariate(data)
    a0, s0, m0 = (float(v) for v in init)
    start = StableParams(a0, 0.0, s0, m0, Form.S0)
    validate(start)
    omega, comps, trace, converged = _sym_engine(y, np.array([1.0]),
                                                 [start], cfg)
    est = comps[0]
    return FitReport(est, trace, len(trace) - 1, converged, cfg.tol,
                     gof_report(y, est))


def fit_symmetric_mixture(data, K: int, init, cfg: EmConfig | None = None) -> FitReport:
    """Mixture of K symmetric stable components; init is the quadruple of
    vectors (omega0, alpha0, sigma0, mu0).  Components are reported sorted
    by location."""
    cfg = cfg or EmConfig()
    y = _clean_univariate(data)
    w0, a0, s0, m0 = (np.asarray(v, dtype=float).reshape(-1) for v in init)
    if not (len(w0) == len(a0) == len(s0) == len(m0) == K):
        raise DimensionMismatch("init vectors must all have length K")
    comps = [StableParams(a0[j], 0.0, s0[j], m0[j], Form.S0) for j in range(K)]
    validate(MixtureSpec(tuple(w0), tuple(comps)))
    omega, comps, trace, converged = _sym_engine(y, w0.copy(), comps, cfg)
    est = _sorted_mixture(omega, comps)
    return FitReport(est, trace, len(trace) - 1, converged, cfg.tol,
                     gof_report(y, est))


# ---------------------------------------------------------------------------
# Cauchy family (tail index pinned at one)


def _stretch_state(omega_old, comps_old, omega, comps, t):
    om = np.clip(omega_old + t * (omega - omega_old), 1e-12, None)
    om = om / om.sum()
    out = []
    for c0, c1 in zip(comps_old, comps):
        b = float(np.clip(c0.beta + t * (c1.beta - c0.beta),
                          -_BETA_EDGE, _BETA_EDGE))
        s = max(c0.sigma + t * (c1.sigma - c0.sigma), 1e-12)
        m = c0.mu + t * (c1.mu - c0.mu)
        out.append(replace(c1, beta=b, sigma=s, mu=m))
    return om, out


def _cauchy_engine(y, omega, comps, cfg):
    n = y.size
    K = len(comps)
    F, g, L = _mix_state(y, omega, comps)
    trace = [L]
    converged = False
    for _ in range(cfg.max_iter):
        L_old, omega_old, comps_old = L, omega, list(comps)
        tau, omega_new = _tau_step(omega, F, g, n, K)
        prop = []
        for j, c in enumerate(comps):
            A, B, e = _cauchy_moments(y, c.beta, c.sigma, c.mu, cfg.quad_nodes)
            prop.append(_cm_quadratic(tau[:, j], A, B, y, e))
        omega, comps, F, g, L, ok = _take_cm_step(y, omega, comps, omega_new,
                                                  prop, F, g, L)
        if not ok:
            for j in range(K):
                F, g, L = _refine_component(y, omega, comps, F, g, L, j)
        for j in range(K):
            cur = comps[j]
            oj = omega[j]
            others = g - oj * F[:, j]

            def cand(b):
                dens = _cauchy_surrogate(y, b, cur.sigma, cur.mu,
                                         cfg.quad_nodes)
                return float(np.log(np.maximum(others + oj * dens,
                                               _FLOOR)).sum())

            bx, _ = _golden_max(_guarded(cand), -_BETA_EDGE, _BETA_EDGE, 22)
            cands = [bx]
            if _BETA_EDGE - abs(bx) < 1e-3:
                # the latent decomposition cannot represent the boundary,
                # so probe it with the production density directly
                s = math.copysign(1.0, bx)
                cands += [s * 0.9999, s * _BETA_WIDE, s * 1.0]
            for b in cands:
                try:
                    cj = replace(cur, beta=b)
                    fj = _pdf_comp(y, cj)
                except NumericalFailure:
                    continue
                gc = np.maximum(others + oj * fj, _FLOOR)
                Lc = float(np.log(gc).sum())
                if Lc > L:
                    comps[j], F[:, j], g, L = cj, fj, gc, Lc
        if _comp_delta(comps_old, comps, omega_old, omega) > 1e-9:
            # coordinate steps zigzag along the correlated skew/scale ridge,
            # so try stretching the whole iteration displacement

            def along(t):
                om, cs = _stretch_state(omega_old, comps_old, omega, comps, t)
                dens = np.zeros_like(y)
                for w, c in zip(om, cs):
                    dens += w * _cauchy_surrogate(y, c.beta, c.sigma, c.mu,
                                                  cfg.quad_nodes)
                return float(np.log(np.maximum(dens, _FLOOR)).sum())

            tx, _ = _golden_max(_guarded(along), 1.0, 12.0, 10)
            if tx > 1.05:
                om, cs = _stretch_state(omega_old, comps_old, omega, comps, tx)
                try:
                    F2, g2, L2 = _mix_state(y, om, cs)
                except NumericalFailure:
                    pass
                else:
                    if L2 > L:
                        omega, comps, F, g, L = om, cs, F2, g2, L2
        trace.append(L)
        if _rel_change(L_old, L) < cfg.tol \
                or _comp_delta(comps_old, comps, omega_old, omega) < 1e-6:
            # quadrature error in the moments can make the weighted update
            # a fixed point away from any stationary point; accept the stop
            # only if a direct observed-likelihood polish cannot move either
            for j in range(K):
                F, g, L = _refine_component(y, omega, comps, F, g, L, j)
            trace[-1] = L
            if _rel_change(L_old, L) < cfg.tol:
                converged = True
                break
    return omega, comps, np.asarray(trace), converged


def fit_cauchy(data, init, cfg: EmConfig | None = None) -> FitReport:
    """Skewed Cauchy fit: (beta, sigma, mu) from init (b0, s0, m0), tail
    index held at one.  The symmetric part moves by closed-form mixing
    weights; the skewness by a bounded observed-likelihood search."""
    cfg = cfg or EmConfig()
    y = _clean_univariate(data)
    b0, s0, m0 = (float(v) for v in init)
    start = StableParams(1.0, b0, s0, m0, Form.S0)
    validate(start)
    omega, comps, trace, converged = _cauchy_engine(y, np.array([1.0]),
                                                    [start], cfg)
    est = comps[0]
    return FitReport(est, trace, len(trace) - 1, converged, cfg.tol,
                     gof_report(y, est))


def fit_cauchy_mixture(data, K: int, init, cfg: EmConfig | None = None) -> FitReport:
    """Mixture of K skewed Cauchy components; init is the quadruple of
    vectors (omega0, beta0, sigma0, mu0)."""
    cfg = cfg or EmConfig()
    y = _clean_univariate(data)
    w0, b0, s0, m0 = (np.asarray(v, dtype=float).reshape(-1) for v in init)
    if not (len(w0) == len(b0) == len(s0) == len(m0) == K):
        raise DimensionMismatch("init vectors must all have length K")
    comps = [StableParams(1.0, b0[j], s0[j], m0[j], Form.S0) for j in range(K)]
    validate(MixtureSpec(tuple(w0), tuple(comps)))
    omega, comps, trace, converged = _cauchy_engine(y, w0.copy(), comps, cfg)
    est = _sorted_mixture(omega, comps)
    return FitReport(est, trace, len(trace) - 1, converged, cfg.tol,
                     gof_report(y, est))


# ---------------------------------------------------------------------------
# skewed stable


def _loglik_s0(y, alpha, beta, sigma, mu):
    p = StableParams(alpha, beta, sigma, mu, Form.S0)
    f = np.asarray(pdf_univariate(y, p))
    return float(np.log(np.maximum(f, _FLOOR)).sum())


def fit_skewed(data, init, form=Form.S1, cfg: EmConfig | None = None) -> FitReport:
    """Four-parameter stable fit from init (a0, b0, s0, m0) given in the
    requested parameterization.

    Internally the continuous parameterization is used so the tail-index
    search can cross one; the report converts back at the end.  When the
    skewness pins the search bracket it is widened once toward the
    boundary, and an exact boundary candidate is tried on exit.
    """
    cfg = cfg or EmConfig()
    y = _clean_univariate(data)
    a0, b0, s0, m0 = (float(v) for v in init)
    start = convert_form(StableParams(a0, b0, s0, m0, form), Form.S0)
    alpha, beta, sigma, mu = start.alpha, start.beta, start.sigma, start.mu
    rng_mc = RngStream(cfg.seed, stream_id=_MC_STREAM)
    L = _loglik_s0(y, alpha, beta, sigma, mu)
    trace = [L]
    b_hi = _BETA_EDGE
    converged = False
    for _ in range(cfg.max_iter):
        old = (alpha, beta, sigma, mu)
        L_old = L
        ae = _away_from_one(alpha)
        A, B, e = _skew_moments(y, ae, beta, sigma, mu, cfg, rng_mc)
        upd = _cm_quadratic(np.ones(y.size), A, B, y, e)
        if upd is not None:
            sigma, mu, L = _accept_pair(y, alpha, beta, sigma, mu, upd, L)

        ax, aL = _golden_max(
            _guarded(lambda a: _loglik_s0(y, a, beta, sigma, mu)),
            _ALPHA_LO, _ALPHA_HI, 22)
        if aL > L:
            alpha, L = ax, aL
        bx, bL = _golden_max(
            _guarded(lambda b: _loglik_s0(y, alpha, b, sigma, mu)),
            -b_hi, b_hi, 22)
        if bL > L:
            beta, L = bx, bL
        widened = False
        if b_hi < _BETA_WIDE and b_hi - abs(beta) < 1e-3:
            b_hi = _BETA_WIDE
            widened = True
        trace.append(L)
        if not widened and (_rel_change(L_old, L) < cfg.tol
                            or _delta4(old, (alpha, beta, sigma, mu)) < 1e-6):
            # guard against spurious fixed points of the approximate
            # moment map: stop only if a direct polish cannot move either
            sigma, mu, L = _polish_pair(y, alpha, beta, sigma, mu, L)
            trace[-1] = L
            if _rel_change(L_old, L) < cfg.tol:
                converged = True
                break
    if abs(beta) > 0.99:
        edge = math.copysign(1.0, beta)
        Le = _guarded(_loglik_s0)(y, alpha, edge, sigma, mu)
        if Le > L:
            beta, L = edge, Le
            trace = np.append(trace, L)
    est = convert_form(StableParams(alpha, beta, sigma, mu, Form.S0), form)
    trace = np.asarray(trace)
    return FitReport(est, trace, len(trace) - 1, converged, cfg.tol,
                     gof_report(y, est))


def _delta4(old, new):
    s = max(old[2], _FLOOR)
    return max(abs(new[0] - old[0]), abs(new[1] - old[1]),
               abs(new[2] - old[2]) / s, abs(new[3] - old[3]) / s)


def _accept_pair(y, alpha, beta, sigma, mu, upd, L):
    """Backtracking acceptance of a (sigma, mu) proposal for the single
    skewed fit, with a direct polish if the proposal is rejected."""
    s_new, m_new = upd
    lam = 1.0
    for _ in range(7):
        sc = (1.0 - lam) * sigma + lam * s_new
        mc = (1.0 - lam) * mu + lam * m_new
        Lc = _guarded(_loglik_s0)(y, alpha, beta, sc, mc)
        if Lc >= L:
            return sc, mc, Lc
        lam *= 0.5
    return _polish_pair(y, alpha, beta, sigma, mu, L)


def _polish_pair(y, alpha, beta, sigma, mu, L):
    """Bracketed scale then location climb on the observed log-likelihood."""
    sx, sL = _golden_max(
        _guarded(lambda s: _loglik_s0(y, alpha, beta, s, mu)),
        sigma / 1.7, sigma * 1.7, 14)
    if sL > L:
        sigma, L = sx, sL
    mx, mL = _golden_max(
        _guarded(lambda m: _loglik_s0(y, alpha, beta, sigma, m)),
        mu - sigma, mu + sigma, 14)
    if mL > L:
        mu, L = mx, mL
    return sigma, mu, L


# ---------------------------------------------------------------------------
# elliptical


def _ell_loglik(z, alpha, Sigma, mu):
    f = np.asarray(pdf_elliptical(z, EllipticalParams(alpha, Sigma, mu)))
    return float(np.log(np.maximum(f, _FLOOR)).sum())


def _ell_delta(old, new):
    a_o, S_o, m_o = old
    a_n, S_n, m_n = new
    s = max(float(np.abs(S_o).max()), _FLOOR)
    loc = max(float(np.sqrt(np.diag(S_o).max())), _FLOOR)
    return max(abs(a_n - a_o),
               float(np.abs(S_n - S_o).max()) / s,
               float(np.abs(m_n - m_o).max()) / loc)


def fit_elliptical(data, init, cfg: EmConfig | None = None) -> FitReport:
    """Elliptically contoured stable fit on an n-by-d sample from init
    (a0, Sigma0, mu0).  The dispersion update is a weighted scatter matrix,
    positive definite whenever the data have full column rank; every
    accepted iterate is recorded in sigma_trace."""
    cfg = cfg or EmConfig()
    z = np.array(data, dtype=float)
    if z.ndim != 2:
        raise DimensionMismatch("data must be an n-by-d matrix")
    if not np.all(np.isfinite(z)):
        raise DomainError("data must be finite")
    n, d = z.shape
    if n <= d or n < 10:
        raise DomainError("need at least 10 observations and more rows than columns")
    if np.linalg.matrix_rank(z - z.mean(axis=0)) < d:
        raise RankDeficientData("centered data matrix is rank deficient")
    a0, S0m, m0 = init
    params = EllipticalParams(float(a0), np.array(S0m, dtype=float),
                              np.array(m0, dtype=float))
    validate(params)
    alpha, Sigma, mu = params.alpha, params.Sigma, params.mu
    rng_mc = RngStream(cfg.seed, stream_id=_MC_STREAM)
    L = _ell_loglik(z, alpha, Sigma, mu)
    trace = [L]
    sig_trace = [Sigma.copy()]
    converged = False
    for _ in range(cfg.max_iter):
        L_old = L
        old = (alpha, Sigma, mu)
        Lc_ = cholesky_dispersion(Sigma)
        u = solve_triangular(Lc_, (z - mu).T, lower=True)
        q = (u * u).sum(axis=0)
        I0, I1 = _kernel_moments(q, 0.5 * alpha, d, cfg, rng_mc)
        w = I1 / np.maximum(I0, _FLOOR)
        mu_new = (w[:, None] * z).sum(axis=0) / w.sum()
        zc = z - mu_new
        Sigma_new = (w[:, None] * zc).T @ zc / n
        lam = 1.0
        for _ in range(7):
            Sc = (1.0 - lam) * Sigma + lam * Sigma_new
            mc = (1.0 - lam) * mu + lam * mu_new
            Lc = _guarded(_ell_loglik)(z, alpha, Sc, mc)
            if Lc >= L:
                Sigma, mu, L = Sc, mc, Lc
                break
            lam *= 0.5
        ax, aL = _golden_max(
            _guarded(lambda a: _ell_loglik(z, a, Sigma, mu)),
            _ALPHA_LO, _ALPHA_HI, 22)
        if aL > L:
            alpha, L = ax, aL
        trace.append(L)
        sig_trace.append(Sigma.copy())
        if _rel_change(L_old, L) < cfg.tol \
                or _ell_delta(old, (alpha, Sigma, mu)) < 1e-6:
            converged = True
            break
    est = EllipticalParams(alpha, Sigma, mu)
    return FitReport(est, np.asarray(trace), len(trace) - 1, converged,
                     cfg.tol, None, tuple(sig_trace))
