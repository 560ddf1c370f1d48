"""Special functions for Weinstein harmonic analysis.

The Weinstein setting on R^d x (0, inf) is governed by the operator
Delta_d + L_alpha, where L_alpha is the Bessel operator in the last
variable.  Everything downstream needs four scalar ingredients:

* the normalized Bessel function j_alpha (the even eigenfunction of
  L_alpha with j_alpha(0) = 1),
* the joint eigenfunction Lambda(lam, x) = exp(-i<x', lam'>) *
  j_alpha(x_{d+1} lam_{d+1}),
* the normalizing constant of the measure mu_alpha = c * x_{d+1}^{2a+1} dx,
* the constant of the generalized (Bessel-type) translation.

The measure constant is the unitary normalization
c = 1 / ((2 pi)^(d/2) 2^alpha Gamma(alpha+1)), which is the one that makes
the transform an involution up to reflection, gives Plancherel equality,
and fixes exp(-|x|^2/2) as a fixed point.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gamma as _gamma
from scipy.special import gammaln as _gammaln
from scipy.special import jv as _jv

#: power series is used below this |t|; J_nu elsewhere (cancellation guard)
_SERIES_CUTOFF = 8.0


def check_alpha(alpha: float) -> float:
    """Validate the Bessel index. Requires alpha > -1/2."""
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha <= -0.5:
        raise ValueError(f"alpha must be a finite real > -1/2, got {alpha}")
    return alpha


def check_dimension(d: int) -> int:
    """Validate the number of non-radial axes. Requires d >= 1."""
    if int(d) != d or d < 1:
        raise ValueError(f"d must be an integer >= 1, got {d}")
    return int(d)


def _bessel_series(alpha: float, t: np.ndarray) -> np.ndarray:
    """j_alpha(t) = sum_k (-1)^k (t^2/4)^k / (k! (alpha+1)_k), |t| small."""
    z = -0.25 * t * t
    term = np.ones_like(z)
    acc = np.ones_like(z)
    for k in range(1, 60):
        term = term * z / (k * (alpha + k))
        acc += term
        if np.all(np.abs(term) < 1e-18 * np.maximum(np.abs(acc), 1e-30)):
            break
    return acc


def normalized_bessel(alpha: float, t) -> np.ndarray | float:
    """Normalized Bessel function j_alpha(t) = Gamma(a+1) (2/t)^a J_a(t).

    Even in t, j_alpha(0) = 1, |j_alpha| <= 1 for alpha >= -1/2.  Small
    arguments use the power series; large arguments go through J_alpha to
    avoid cancellation in the alternating series.
    """
    alpha = check_alpha(alpha)
    t_arr = np.abs(np.asarray(t, dtype=float))
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    out = np.empty_like(t_arr)

    small = t_arr <= _SERIES_CUTOFF
    if np.any(small):
        out[small] = _bessel_series(alpha, t_arr[small])
    if np.any(~small):
        ts = t_arr[~small]
        # Gamma(a+1) (2/t)^a J_a(t), evaluated in log space for stability
        pref = np.exp(_gammaln(alpha + 1.0) + alpha * (np.log(2.0) - np.log(ts)))
        out[~small] = pref * _jv(alpha, ts)
    return float(out[0]) if scalar else out


def weinstein_kernel(alpha: float, d: int, lam, x) -> np.ndarray | complex:
    """Weinstein kernel Lambda(lam, x) = e^{-i<x', lam'>} j_alpha(x_r lam_r).

    ``lam`` and ``x`` are points (or arrays of points along the leading
    axes) in R^d x [0, inf); the last coordinate is the radial one.
    Symmetric in its two arguments and bounded by 1 in modulus.
    """
    alpha = check_alpha(alpha)
    d = check_dimension(d)
    lam = np.asarray(lam, dtype=float)
    x = np.asarray(x, dtype=float)
    if lam.shape[-1] != d + 1 or x.shape[-1] != d + 1:
        raise ValueError(f"points must have d+1={d + 1} coordinates")
    phase = np.einsum("...i,...i->...", x[..., :d], lam[..., :d])
    radial = normalized_bessel(alpha, x[..., d] * lam[..., d])
    return np.exp(-1j * phase) * radial


def measure_constant(alpha: float, d: int) -> float:
    """Normalizing constant of mu_alpha = c x_{d+1}^{2a+1} dx.

    c = 1 / ((2 pi)^(d/2) 2^alpha Gamma(alpha+1)).  This is the unitary
    normalization: with it the transform satisfies Plancherel equality,
    inversion by reflection, and has exp(-|x|^2/2) as a fixed point.
    """
    alpha = check_alpha(alpha)
    d = check_dimension(d)
    return float(1.0 / ((2.0 * np.pi) ** (d / 2.0) * 2.0**alpha * _gamma(alpha + 1.0)))


def radial_constant(alpha: float, d: int) -> float:
    """Constant a_alpha in the radial integration formula.

    For radial f:  integral f dmu_alpha = a_alpha * int_0^inf
    f(r) r^{2 alpha + d + 1} dr, with
    a_alpha = 1 / (2^(alpha + d/2) Gamma(alpha + d/2 + 1)).
    """
    alpha = check_alpha(alpha)
    d = check_dimension(d)
    return float(1.0 / (2.0 ** (alpha + d / 2.0) * _gamma(alpha + d / 2.0 + 1.0)))


def translation_constant(alpha: float) -> float:
    """Constant C_alpha of the generalized translation.

    C_alpha = Gamma(a+1) / (sqrt(pi) Gamma(a+1/2)) normalizes the
    (sin theta)^{2 alpha} average: C_alpha * int_0^pi (sin t)^{2a} dt = 1.
    """
    alpha = check_alpha(alpha)
    return float(_gamma(alpha + 1.0) / (np.sqrt(np.pi) * _gamma(alpha + 0.5)))
