"""Canonical Gaussian-class probe fields for checks and norm estimation.

All probes are Gaussian envelopes times low-degree polynomials with mild
modulation, even in the radial coordinate.  Their spatial and frequency
content stays well inside the grid box and the band-limit taper, so
quadrature-based identities are exercised without truncation artifacts.
"""

from __future__ import annotations

import numpy as np

from .grids import BaseGrid, Field, field_from_function, inner_product


def gaussian(grid: BaseGrid, width: float = 1.0) -> Field:
    """exp(-|x|^2 / (2 width^2)); width=1 is the transform's fixed point."""

    def fn(p):
        return np.exp(-np.sum(p**2, axis=-1) / (2.0 * width**2))

    return field_from_function(grid, fn)


def random_field(grid: BaseGrid, rng: np.random.Generator) -> Field:
    """Random Gaussian-class probe: polynomial x modulated, shifted Gaussian.

    Cartesian factor: (c0 + c1 u + c2 u^2) exp(i k u) exp(-(u-b)^2/(2s^2))
    per axis; radial factor: (1 + q r^2) exp(-r^2/(2s^2)).
    """
    d = grid.d
    sig = rng.uniform(0.7, 1.0)
    b = rng.uniform(-0.8, 0.8, size=d)
    k = rng.uniform(-1.0, 1.0, size=d)
    c = rng.normal(size=(d, 3)) * np.array([1.0, 0.5, 0.15])
    q = rng.uniform(-0.3, 0.3)

    def fn(p):
        u = p[..., :d]
        r = p[..., d]
        out = np.ones(p.shape[:-1], dtype=complex)
        for ax in range(d):
            v = u[..., ax]
            out = out * ((c[ax, 0] + 1.0) + c[ax, 1] * v + c[ax, 2] * v**2)
            out = out * np.exp(1j * k[ax] * v - (v - b[ax]) ** 2 / (2 * sig**2))
        return out * (1.0 + q * r**2) * np.exp(-(r**2) / (2 * sig**2))

    return field_from_function(grid, fn)


def random_even_field(grid: BaseGrid, rng: np.random.Generator) -> Field:
    """Random probe even in the Cartesian block (cosine modulation, centered)."""
    d = grid.d
    sig = rng.uniform(0.7, 1.0)
    k = rng.uniform(0.0, 1.0, size=d)
    c2 = rng.uniform(-0.2, 0.2, size=d)
    q = rng.uniform(-0.3, 0.3)

    def fn(p):
        u = p[..., :d]
        r = p[..., d]
        out = np.ones(p.shape[:-1], dtype=float)
        for ax in range(d):
            v = u[..., ax]
            out = out * (1.0 + c2[ax] * v**2) * np.cos(k[ax] * v)
            out = out * np.exp(-(v**2) / (2 * sig**2))
        return out * (1.0 + q * r**2) * np.exp(-(r**2) / (2 * sig**2))

    return field_from_function(grid, fn)


def mean_zero_probe(grid: BaseGrid, rng: np.random.Generator | None = None) -> Field:
    """Difference of two Gaussians with equal mu_alpha integral.

    Suppresses content at zero frequency; used by convergence studies so
    the measured error is quadrature-limited rather than dominated by the
    saturating scale-space range truncation near zero frequency.
    """
    g1 = gaussian(grid, 1.0)
    g2 = gaussian(grid, 1.3)
    one = Field(grid, np.ones(grid.shape, dtype=complex))
    m1 = inner_product(g1, one)
    m2 = inner_product(g2, one)
    out = Field(grid, g1.values - (m1.real / m2.real) * g2.values)
    if rng is not None:
        width = rng.uniform(1.2, 1.4)
        g3 = gaussian(grid, width)
        m3 = inner_product(g3, one)
        out = Field(grid, g1.values - (m1.real / m3.real) * g3.values)
    return out
