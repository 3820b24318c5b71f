"""HTTP surface over the library: one endpoint per CLI subcommand.

Endpoints repackage wire models into library calls and back; every
number in a response comes straight from the library.  Errors rooted in
ValueError map to 422, numerical failures to 500, both carrying the
inner error name.
"""

import numpy as np
from fastapi import FastAPI
from fastapi.responses import JSONResponse, PlainTextResponse

from .._errors import StableKitError
from ..density import (cdf_univariate, pdf_elliptical, pdf_mixture,
                       pdf_univariate)
from ..emfit import (EmConfig, fit_cauchy, fit_cauchy_mixture, fit_elliptical,
                     fit_skewed, fit_symmetric, fit_symmetric_mixture)
from ..gof import gof_report
from ..params import (EllipticalParams, Form, MixtureSpec, SpectralMeasure,
                      StableParams)
from ..simulate import (RngStream, rstable, rstable_elliptical,
                        rstable_spectral, rstable_truncated)
from ..spectral import estimate_spectral_measure, estimate_symmetric_ecf
from . import schemas as s


def _form(param: int) -> Form:
    return Form.S0 if param == 0 else Form.S1


def _law(m: s.StableLaw) -> StableParams:
    return StableParams(m.alpha, m.beta, m.sigma, m.mu, _form(m.param))


def _model(spec):
    if isinstance(spec, s.MixtureLaw):
        return MixtureSpec(tuple(spec.weights),
                           tuple(_law(c) for c in spec.components))
    if isinstance(spec, s.EllipticalLaw):
        return EllipticalParams(spec.alpha, spec.sigma, spec.mu)
    return _law(spec)


def _wire_law(p: StableParams) -> s.StableLaw:
    return s.StableLaw(alpha=p.alpha, beta=p.beta, sigma=p.sigma, mu=p.mu,
                       param=0 if p.form is Form.S0 else 1)


def _wire_estimates(est):
    if isinstance(est, MixtureSpec):
        return s.MixtureLaw(weights=list(est.weights),
                            components=[_wire_law(c) for c in est.components])
    if isinstance(est, EllipticalParams):
        return s.EllipticalLaw(alpha=est.alpha, sigma=est.Sigma.tolist(),
                               mu=est.mu.tolist())
    return _wire_law(est)


def _wire_report(rep) -> s.FitResponse:
    gof = None
    if rep.gof is not None:
        gof = s.GofResponse(n=rep.gof.n, ks=rep.gof.ks, ad=rep.gof.ad)
    return s.FitResponse(estimates=_wire_estimates(rep.estimates),
                         loglik_trace=np.asarray(rep.loglik_trace).tolist(),
                         iterations=rep.iterations, converged=rep.converged,
                         tol=rep.tol, gof=gof)


def _cfg(settings: s.EmSettings) -> EmConfig:
    return EmConfig(**settings.model_dump())


def create_app() -> FastAPI:
    from .. import __version__

    app = FastAPI(title="stablekit", version=__version__)

    @app.exception_handler(StableKitError)
    async def _stablekit_error(request, exc):
        status = 422 if isinstance(exc, ValueError) else 500
        return JSONResponse(status_code=status,
                            content={"error": type(exc).__name__,
                                     "detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/sim", response_model=s.SampleResponse)
    def sim(req: s.SimRequest):
        draws = rstable(req.n, _law(req), RngStream(req.seed))
        return s.SampleResponse(values=draws.tolist())

    @app.post("/sim-trunc", response_model=s.SampleResponse)
    def sim_trunc(req: s.SimTruncRequest):
        draws = rstable_truncated(req.n, _law(req), req.a, req.b,
                                  RngStream(req.seed))
        return s.SampleResponse(values=draws.tolist())

    @app.post("/sim-elliptical", response_model=s.MatrixSampleResponse)
    def sim_elliptical(req: s.SimEllipticalRequest):
        p = EllipticalParams(req.alpha, req.sigma, req.mu)
        draws = rstable_elliptical(req.n, p, RngStream(req.seed))
        return s.MatrixSampleResponse(values=draws.tolist())

    @app.post("/sim-spectral", response_model=s.MatrixSampleResponse)
    def sim_spectral(req: s.SimSpectralRequest):
        p = SpectralMeasure(req.alpha, req.points, req.masses, req.mu)
        draws = rstable_spectral(req.n, p, RngStream(req.seed))
        return s.MatrixSampleResponse(values=draws.tolist())

    @app.post("/pdf", response_model=s.PdfResponse)
    def pdf(req: s.DensityRequest):
        vals = pdf_univariate(np.asarray(req.y, dtype=float), _law(req))
        return s.PdfResponse(pdf=np.atleast_1d(vals).tolist())

    @app.post("/cdf", response_model=s.CdfResponse)
    def cdf(req: s.DensityRequest):
        vals = cdf_univariate(np.asarray(req.y, dtype=float), _law(req))
        return s.CdfResponse(cdf=np.atleast_1d(vals).tolist())

    @app.post("/pdf-elliptical", response_model=s.PdfResponse)
    def pdf_ell(req: s.EllipticalDensityRequest):
        p = EllipticalParams(req.alpha, req.sigma, req.mu)
        vals = pdf_elliptical(np.asarray(req.z, dtype=float), p)
        return s.PdfResponse(pdf=np.atleast_1d(vals).tolist())

    @app.post("/fit/cauchy", response_model=s.FitResponse)
    def fit_cauchy_ep(req: s.FitCauchyRequest):
        rep = fit_cauchy(req.data, (req.init_beta, req.init_sigma,
                                    req.init_mu), _cfg(req.cfg))
        return _wire_report(rep)

    @app.post("/fit/symmetric", response_model=s.FitResponse)
    def fit_symmetric_ep(req: s.FitSymmetricRequest):
        rep = fit_symmetric(req.data, (req.init_alpha, req.init_sigma,
                                       req.init_mu), _cfg(req.cfg))
        return _wire_report(rep)

    @app.post("/fit/skewed", response_model=s.FitResponse)
    def fit_skewed_ep(req: s.FitSkewedRequest):
        rep = fit_skewed(req.data, (req.init_alpha, req.init_beta,
                                    req.init_sigma, req.init_mu),
                         _form(req.param), _cfg(req.cfg))
        return _wire_report(rep)

    @app.post("/fit/cauchy-mixture", response_model=s.FitResponse)
    def fit_cauchy_mix_ep(req: s.FitCauchyMixtureRequest):
        rep = fit_cauchy_mixture(req.data, req.k,
                                 (req.init_omega, req.init_beta,
                                  req.init_sigma, req.init_mu), _cfg(req.cfg))
        return _wire_report(rep)

    @app.post("/fit/symmetric-mixture", response_model=s.FitResponse)
    def fit_symmetric_mix_ep(req: s.FitSymmetricMixtureRequest):
        rep = fit_symmetric_mixture(req.data, req.k,
                                    (req.init_omega, req.init_alpha,
                                     req.init_sigma, req.init_mu),
                                    _cfg(req.cfg))
        return _wire_report(rep)

    @app.post("/fit/elliptical", response_model=s.FitResponse)
    def fit_elliptical_ep(req: s.FitEllipticalRequest):
        rep = fit_elliptical(np.asarray(req.data, dtype=float),
                             (req.init_alpha, np.asarray(req.init_sigma),
                              np.asarray(req.init_mu)), _cfg(req.cfg))
        return _wire_report(rep)

    @app.post("/fit/spectral", response_model=s.SpectralLaw)
    def fit_spectral_ep(req: s.FitSpectralRequest):
        est = estimate_spectral_measure(np.asarray(req.data, dtype=float),
                                        req.m)
        return s.SpectralLaw(alpha=est.alpha, points=est.points.tolist(),
                             masses=est.masses.tolist(), mu=est.mu.tolist())

    @app.post("/fit/tail", response_model=s.TailResponse)
    def fit_tail_ep(req: s.FitTailRequest):
        alpha, sigma = estimate_symmetric_ecf(req.data)
        return s.TailResponse(alpha=alpha, sigma=sigma)

    @app.post("/gof", response_model=s.GofResponse)
    def gof(req: s.GofRequest):
        r = gof_report(np.asarray(req.data, dtype=float), _model(req.model))
        return s.GofResponse(n=r.n, ks=r.ks, ad=r.ad)

    @app.post("/plot-data")
    def plot_data(req: s.PlotDataRequest):
        y = np.asarray(req.data, dtype=float)
        model = _model(req.model)
        if isinstance(model, EllipticalParams):
            return JSONResponse(status_code=422,
                                content={"error": "DimensionMismatch",
                                         "detail": "plot-data is univariate"})
        grid = np.linspace(y.min(), y.max(), req.points)
        if isinstance(model, MixtureSpec):
            dens = np.asarray(pdf_mixture(grid, model))
        else:
            dens = np.asarray(pdf_univariate(grid, model))
        counts, edges = np.histogram(y, bins=req.bins)
        lines = ["section,x0,x1,value"]
        lines += [f"curve,{float(g)!r},,{float(d)!r}"
                  for g, d in zip(grid, dens)]
        lines += [f"hist,{float(lo)!r},{float(hi)!r},{int(c)}"
                  for lo, hi, c in zip(edges[:-1], edges[1:], counts)]
        return PlainTextResponse("\n".join(lines) + "\n",
                                 media_type="text/csv")

    return app
