"""Parameter-free outlier-score threshold and angle distributions.

Everything gamma-related is evaluated through ``gammaln`` so the
formulas stay finite far beyond the point where ``Gamma(n/2)`` overflows
double precision (n around 340).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln, ndtr

_LN_4_SQRT_PI = math.log(4.0) + 0.5 * math.log(math.pi)

# Default panel count for the composite-Simpson cdf; mass error is far
# below 1e-8 for every dimension exercised here.
SIMPSON_PANELS = 2048


def _check_dim(d: int, minimum: int = 3) -> int:
    d = int(d)
    if d < minimum:
        raise ValueError(f"dimension must be >= {minimum}, got {d}")
    return d


def roma_threshold(n: int, N: int, alpha: float = 0.05) -> float:
    """High-probability lower bound on every outlier's minimum acute angle.

    zeta = [4*sqrt(pi) * Gamma((n+1)/2) * ln(1/(1-alpha/2))
            / (N^2 * Gamma(n/2))] ** (1/(n-1))

    Points scoring above this threshold are declared outliers; the bound
    fails with probability at most ``alpha``.  Only the ambient dimension
    ``n`` and the number of points ``N`` enter, which is what makes the
    detector parameter-free.
    """
    n = int(n)
    N = int(N)
    if n < 3:
        raise ValueError(f"ambient dimension must be >= 3, got {n}")
    if N < 2:
        raise ValueError(f"need at least 2 points, got {N}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    log_zeta = (
        _LN_4_SQRT_PI
        + gammaln((n + 1) / 2)
        - gammaln(n / 2)
        + math.log(-math.log1p(-alpha / 2))
        - 2.0 * math.log(N)
    ) / (n - 1)
    return math.exp(log_zeta)


def evt_constant(n: int) -> float:
    """Rate constant of the extreme-value law for the minimum pairwise angle.

    K = Gamma(n/2) / (4*sqrt(pi) * Gamma((n+1)/2)), so that for p points
    uniform on the sphere ``P(theta_min <= x) -> 1 - exp(-K p^2 x^(n-1))``.
    Satisfies ``exp(-K N^2 zeta^(n-1)) = 1 - alpha/2`` for the threshold
    above; equals ``1/8`` at n = 3.
    """
    n = _check_dim(n)
    return math.exp(-_LN_4_SQRT_PI + gammaln(n / 2) - gammaln((n + 1) / 2))


def theta_pdf(d: int, theta):
    """Density of the angle between independent uniform points on S^(d-1).

    h(theta) = (1/sqrt(pi)) * (Gamma(d/2)/Gamma((d-1)/2)) * sin(theta)^(d-2)
    on ``[0, pi]``.
    """
    d = _check_dim(d)
    t = np.asarray(theta, dtype=float)
    if np.any(t < 0.0) or np.any(t > math.pi):
        raise ValueError("theta must lie in [0, pi]")
    coef = math.exp(-0.5 * math.log(math.pi) + gammaln(d / 2) - gammaln((d - 1) / 2))
    out = coef * np.sin(t) ** (d - 2)
    return float(out) if np.isscalar(theta) or out.ndim == 0 else out


def theta_cdf_exact(d: int, x, panels: int = SIMPSON_PANELS):
    """Cdf of the pairwise angle, integrated by composite Simpson.

    Each evaluation integrates the density over ``[0, x]`` with
    ``panels`` Simpson panels (2*panels+1 nodes).  Accepts scalar or
    array ``x``; array input is processed in bounded-memory chunks.
    """
    d = _check_dim(d)
    if panels < 1:
        raise ValueError("panels must be >= 1")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs < 0.0) or np.any(xs > math.pi):
        raise ValueError("x must lie in [0, pi]")
    coef = math.exp(-0.5 * math.log(math.pi) + gammaln(d / 2) - gammaln((d - 1) / 2))
    nodes = 2 * panels + 1
    unit = np.linspace(0.0, 1.0, nodes)
    weights = np.full(nodes, 2.0)
    weights[1::2] = 4.0
    weights[0] = weights[-1] = 1.0

    out = np.empty_like(xs)
    chunk = max(1, (1 << 22) // nodes)
    for start in range(0, xs.size, chunk):
        block = xs[start : start + chunk]
        grid = block[:, None] * unit[None, :]
        vals = np.sin(grid) ** (d - 2)
        step = block / (2 * panels)
        out[start : start + block.size] = coef * (step / 3.0) * (vals @ weights)
    return float(out[0]) if np.isscalar(x) or np.ndim(x) == 0 else out


def theta_cdf_gauss(d: int, x):
    """Gaussian approximation of the pairwise-angle cdf.

    Phi((x - pi/2) * sqrt(d - 2)); accurate for d of a few dozen and up.
    """
    d = _check_dim(d)
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0.0) or np.any(xs > math.pi):
        raise ValueError("x must lie in [0, pi]")
    out = ndtr((xs - math.pi / 2) * math.sqrt(d - 2))
    return float(out) if np.isscalar(x) or out.ndim == 0 else out


def phi_cdf(d: int, x, mode: str = "exact"):
    """Cdf of the acute angle on ``[0, pi/2]``: twice the theta cdf there."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0.0) or np.any(xs > math.pi / 2):
        raise ValueError("x must lie in [0, pi/2]")
    if mode == "exact":
        base = theta_cdf_exact(d, x)
    elif mode == "gauss":
        base = theta_cdf_gauss(d, x)
    else:
        raise ValueError(f"mode must be 'exact' or 'gauss', got {mode!r}")
    return 2.0 * base


def folded_normal_moments(mu: float, sigma: float) -> tuple[float, float]:
    """Moments of a normal variable reflected below its mean.

    For ``V = U`` when ``U <= mu`` and ``2*mu - U`` otherwise, with
    ``U ~ N(mu, sigma^2)``:

        E(V)   = mu - sqrt(2/pi) * sigma
        var(V) = sigma^2 * (1 - 2/pi)
    """
    if sigma <= 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    mean = mu - math.sqrt(2.0 / math.pi) * sigma
    variance = sigma * sigma * (1.0 - 2.0 / math.pi)
    return mean, variance


class AcuteConcentration(NamedTuple):
    mean: float
    variance: float
    lower_bound: float
    probability: float


def acute_angle_concentration(d: int, c: float) -> AcuteConcentration:
    """Approximate concentration of acute angles in effective dimension d.

    Applies the folded-normal moments to the Gaussian approximation
    ``N(pi/2, 1/(d-2))``: the acute angle concentrates near
    ``pi/2 - sqrt(2/(pi*(d-2)))`` and exceeds ``pi/2 - c/sqrt(d-2)``
    with probability ``2*Phi(c) - 1``.
    """
    d = _check_dim(d, minimum=5)
    if c <= 0.0:
        raise ValueError(f"c must be positive, got {c}")
    sigma = 1.0 / math.sqrt(d - 2)
    mean, variance = folded_normal_moments(math.pi / 2, sigma)
    lower = math.pi / 2 - c * sigma
    prob = 2.0 * float(ndtr(c)) - 1.0
    return AcuteConcentration(mean=mean, variance=variance, lower_bound=lower, probability=prob)
