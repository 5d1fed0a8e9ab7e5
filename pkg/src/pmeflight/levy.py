"""Stable subordinators, isotropic stable processes, and the Cauchy law.

Conventions (kept throughout the package):

* subordinator index a in (0, 1): Laplace transform E e^{-lam Y(t)} =
  exp(-t lam^a), sampled by Kanter's representation
  Y(t) = t^{1/a} (A(U)/E)^{(1-a)/a} with U ~ U(0, pi), E ~ Exp(1) and
  A(u) = sin(a u)^{a/(1-a)} sin((1-a) u) / sin(u)^{1/(1-a)};
* isotropic stable: E exp(i <xi, S_nu(t)>) = exp(-t ||xi||^nu), realized as
  Brownian motion at the subordinated clock, S_nu(t) = B_d(2 Y_{nu/2}(t)).
  The factor 2 converts Brownian variance t per coordinate into the symbol
  ||xi||^2; for nu = 2 the law is exactly Gaussian with variance 2t per
  coordinate.
"""

from __future__ import annotations

import math

import numpy as np

from .specfun import gamma_fn

__all__ = ["sample_subordinator", "sample_isotropic_stable", "cauchy_density",
           "levy_cdf"]


def sample_subordinator(index: float, t: float, rng: np.random.Generator,
                        size: int = None):
    """Positively skewed stable draw(s) with E e^{-lam Y} = e^{-t lam^index}."""
    if not 0.0 < index < 1.0:
        raise ValueError("subordinator index must lie in (0, 1)")
    if not t > 0.0:
        raise ValueError("t must be positive")
    m = 1 if size is None else size
    u = rng.uniform(0.0, math.pi, m)
    e = rng.exponential(1.0, m)
    a = index
    big_a = (np.sin(a * u) ** (a / (1.0 - a)) * np.sin((1.0 - a) * u)
             / np.sin(u) ** (1.0 / (1.0 - a)))
    y = t ** (1.0 / a) * (big_a / e) ** ((1.0 - a) / a)
    return y[0] if size is None else y


def sample_isotropic_stable(nu: float, d: int, t: float,
                            rng: np.random.Generator, size: int = None):
    """Isotropic stable increment(s) with CF exp(-t ||xi||^nu), 0 < nu <= 2."""
    if not 0.0 < nu <= 2.0:
        raise ValueError("stable index must lie in (0, 2]")
    if d < 1:
        raise ValueError("need d >= 1")
    if not t > 0.0:
        raise ValueError("t must be positive")
    m = 1 if size is None else size
    if nu == 2.0:
        clock = np.full(m, t)
    else:
        clock = sample_subordinator(nu / 2.0, t, rng, m)
    x = np.sqrt(2.0 * clock)[:, None] * rng.standard_normal((m, d))
    if d == 1:
        x = x[:, 0]
    return x[0] if size is None else x


def cauchy_density(x, t: float, d: int = 1):
    """Gamma((d+1)/2) / pi^{(d+1)/2} * t / (t^2 + ||x||^2)^{(d+1)/2}."""
    if not t > 0.0:
        raise ValueError("t must be positive")
    x = np.asarray(x, dtype=float)
    if d == 1:
        r2 = x * x
    else:
        if x.shape[-1] != d:
            raise ValueError(f"last axis of x must have length d={d}")
        r2 = np.sum(x * x, axis=-1)
    const = float(gamma_fn((d + 1.0) / 2.0)) / math.pi ** ((d + 1.0) / 2.0)
    return const * t / (t * t + r2) ** ((d + 1.0) / 2.0)


def levy_cdf(x, scale: float):
    """CDF of the one-sided Levy(scale) law, erfc(sqrt(scale/(2x))).

    The index-1/2 subordinator at horizon t has this law with
    scale = t^2 / 2 (closed-form test oracle).
    """
    from scipy import special as _sps

    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0.0
    out[pos] = _sps.erfc(np.sqrt(scale / (2.0 * x[pos])))
    return out
