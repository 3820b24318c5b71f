"""Request and response bodies for the HTTP service.

The wire format carries plain floats; every numeric field round-trips
through JSON at full double precision, so service answers match direct
library calls bit for bit.
"""

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field


class StableLaw(BaseModel):
    alpha: float
    beta: float
    sigma: float
    mu: float
    param: Literal[0, 1] = 0


class MixtureLaw(BaseModel):
    weights: list[float]
    components: list[StableLaw]


class EllipticalLaw(BaseModel):
    """Dispersion matrix as row-major nested lists."""

    alpha: float
    sigma: list[list[float]]
    mu: list[float]


class SpectralLaw(BaseModel):
    alpha: float
    points: list[list[float]]
    masses: list[float]
    mu: list[float]


ModelSpec = Union[MixtureLaw, EllipticalLaw, StableLaw]


class SimRequest(StableLaw):
    n: int = Field(ge=1)
    seed: int = 0


class SimTruncRequest(SimRequest):
    a: float
    b: float


class SimEllipticalRequest(EllipticalLaw):
    n: int = Field(ge=1)
    seed: int = 0


class SimSpectralRequest(SpectralLaw):
    n: int = Field(ge=1)
    seed: int = 0


class DensityRequest(StableLaw):
    y: list[float]


class EllipticalDensityRequest(EllipticalLaw):
    z: list[list[float]]


class EmSettings(BaseModel):
    """Mirrors the estimation config; defaults match the library."""

    max_iter: int = 500
    tol: float = 1e-6
    quad_nodes: int = 96
    mc_fallback_draws: int = 10_000
    seed: int = 0


class FitCauchyRequest(BaseModel):
    data: list[float]
    init_beta: float
    init_sigma: float
    init_mu: float
    cfg: EmSettings = EmSettings()


class FitSymmetricRequest(BaseModel):
    data: list[float]
    init_alpha: float
    init_sigma: float
    init_mu: float
    cfg: EmSettings = EmSettings()


class FitSkewedRequest(BaseModel):
    data: list[float]
    init_alpha: float
    init_beta: float
    init_sigma: float
    init_mu: float
    param: Literal[0, 1] = 1
    cfg: EmSettings = EmSettings()


class FitCauchyMixtureRequest(BaseModel):
    data: list[float]
    k: int = Field(ge=1)
    init_omega: list[float]
    init_beta: list[float]
    init_sigma: list[float]
    init_mu: list[float]
    cfg: EmSettings = EmSettings()


class FitSymmetricMixtureRequest(BaseModel):
    data: list[float]
    k: int = Field(ge=1)
    init_omega: list[float]
    init_alpha: list[float]
    init_sigma: list[float]
    init_mu: list[float]
    cfg: EmSettings = EmSettings()


class FitEllipticalRequest(BaseModel):
    data: list[list[float]]
    init_alpha: float
    init_sigma: list[list[float]]
    init_mu: list[float]
    cfg: EmSettings = EmSettings()


class FitSpectralRequest(BaseModel):
    data: list[list[float]]
    m: int = Field(ge=2)


class FitTailRequest(BaseModel):
    data: list[float]


class GofRequest(BaseModel):
    data: list[float]
    model: ModelSpec


class PlotDataRequest(BaseModel):
    data: list[float]
    model: ModelSpec
    bins: int = Field(default=20, ge=1)
    points: int = Field(default=200, ge=2)


class SampleResponse(BaseModel):
    values: list[float]


class MatrixSampleResponse(BaseModel):
    values: list[list[float]]


class PdfResponse(BaseModel):
    pdf: list[float]


class CdfResponse(BaseModel):
    cdf: list[float]


class GofResponse(BaseModel):
    n: int
    ks: float
    ad: float


class TailResponse(BaseModel):
    alpha: float
    sigma: float


class FitResponse(BaseModel):
    estimates: ModelSpec
    loglik_trace: list[float]
    iterations: int
    converged: bool
    tol: float
    gof: Optional[GofResponse] = None
