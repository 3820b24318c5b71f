"""Composite Gauss-Legendre panel helpers for the oscillatory inversion integrals."""

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=16)
def gl_nodes(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def panel_rule(edges: np.ndarray, order: int):
    """Map an order-point Gauss-Legendre rule onto each panel.

    edges is an increasing 1-d array; returns flat (nodes, weights) covering
    [edges[0], edges[-1]].
    """
    x, w = gl_nodes(order)
    lo = edges[:-1]
    hi = edges[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return nodes, wts


def build_edges(R: float, n_osc: int, n_geo: int = 20, grade_ratio: float = 1e-9):
    """Panel edges on [0, R]: n_osc uniform oscillation panels, the first of
    which is subdivided geometrically down to R/n_osc * grade_ratio so that
    integrable endpoint singularities are resolved."""
    r0 = R / n_osc
    uni = np.linspace(r0, R, n_osc)
    geo = np.geomspace(r0 * grade_ratio, r0, n_geo + 1)[:-1]
    return np.concatenate(([0.0], geo, uni))
