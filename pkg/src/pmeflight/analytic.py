"""Closed-form densities, constants and characteristic functions.

The self-similar source-type solution of the porous-medium equation
u_t = Laplace(u^m) appears in two normalizations that must not be confused:

* ``barenblatt_profile`` -- f(x,t) = t^{-alpha} (1 - B ||x||^2 / t^{2 beta})_+^{1/(m-1)}.
  This is the function that *solves* the PME exactly (the exponent system of
  the self-similar ansatz fixes B; adding an outer constant would break the
  nonlinear equation).  Its mass is 1/C.
* ``barenblatt_density`` -- C * profile, the probability law of the
  associated stochastic processes.  Every distributional identity in this
  package (flight laws, characteristic functions, moments, KS targets) uses
  this normalized form.  As a t-indexed family it is the profile's law under
  a constant rescaling of the clock; pointwise in t it does not satisfy the
  PME, which is why the PDE-side oracles consume the profile instead.

Both share the support radius t^beta / sqrt(B).

The one-dimensional marginal of the d-dimensional law is implemented with
exponent 1/(m-1) + (d-1)/2 (the only exponent consistent with the
normalizing constant Gamma(d/2 + m/(m-1)) / (sqrt(pi) Gamma(m/(m-1) + (d-1)/2));
direct marginalization confirms it).  For d = 1 the law also describes a
telegraph-type motion whose direction reversals are paced by a
non-homogeneous Poisson process of rate (d + (m+1)/(m-1)) / (2 t^beta);
that rate is recorded here for reference only, no sampler is provided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from scipy import special as _sps

from .specfun import bessel_j_scaled, gamma_fn, log_gamma
from .stats import VerifyReport

__all__ = [
    "FlightLaw",
    "ModelParams",
    "EPDParams",
    "barenblatt_constants",
    "barenblatt_profile",
    "barenblatt_density",
    "barenblatt_radial_cdf",
    "epd_density",
    "pme_epd_rescale_check",
    "m_from_n",
    "barenblatt_cf",
    "moment_y1",
    "marginal_density_1d",
]


class FlightLaw(Enum):
    """Waiting-time law of the random flight (Dirichlet parameter choice)."""

    F1_UNIFORM = "f1"            # d = 1, uniform order statistics
    F2_DIRICHLET_DM1 = "f2"      # d >= 2, Dirichlet(d-1, ..., d-1)
    F3_DIRICHLET_HALFD = "f3"    # d >= 3, Dirichlet(d/2-1, ..., d/2-1)


@dataclass(frozen=True)
class ModelParams:
    """PME exponent m > 1 and space dimension d >= 1."""

    m: float
    d: int = 1

    def __post_init__(self):
        if not (self.m > 1.0 and math.isfinite(self.m)):
            raise ValueError("PME exponent m must be finite and > 1")
        if not (isinstance(self.d, (int, np.integer)) and self.d >= 1):
            raise ValueError("dimension d must be an integer >= 1")

    @property
    def alpha(self) -> float:
        return self.d / (2.0 + self.d * (self.m - 1.0))

    @property
    def beta(self) -> float:
        return 1.0 / (2.0 + self.d * (self.m - 1.0))

    @property
    def big_b(self) -> float:
        return (self.m - 1.0) / (2.0 * self.m * (2.0 + self.d * (self.m - 1.0)))

    @property
    def big_c(self) -> float:
        # log space: the gamma ratio overflows double precision as m -> 1+
        m, d = self.m, self.d
        g = m / (m - 1.0)
        return float(math.exp(log_gamma(d / 2.0 + g) - log_gamma(g)
                              + (d / 2.0) * math.log(self.big_b / math.pi)))

    def support_radius(self, t: float) -> float:
        return t ** self.beta / math.sqrt(self.big_b)


@dataclass(frozen=True)
class EPDParams:
    """Damping exponent gamma > 0, wave speed c > 0, dimension d >= 1."""

    gamma: float
    c: float = 1.0
    d: int = 1

    def __post_init__(self):
        if not (self.gamma > 0.0 and self.c > 0.0):
            raise ValueError("gamma and c must be positive")
        if not (isinstance(self.d, (int, np.integer)) and self.d >= 1):
            raise ValueError("dimension d must be an integer >= 1")


def barenblatt_constants(p: ModelParams) -> Tuple[float, float, float, float]:
    """(alpha, beta, B, C) of the self-similar source-type solution."""
    return p.alpha, p.beta, p.big_b, p.big_c


def _radius_sq(x, d: int):
    x = np.asarray(x, dtype=float)
    if d == 1:
        return x * x
    if x.shape[-1] != d:
        raise ValueError(f"last axis of x must have length d={d}")
    return np.sum(x * x, axis=-1)


def barenblatt_profile(x, t: float, p: ModelParams):
    """Exact PME solution t^{-alpha}(1 - B||x||^2/t^{2 beta})_+^{1/(m-1)} (mass 1/C)."""
    if not t > 0.0:
        raise ValueError("t must be positive")
    r2 = _radius_sq(x, p.d)
    core = np.maximum(1.0 - p.big_b * r2 / t ** (2.0 * p.beta), 0.0)
    return t ** (-p.alpha) * core ** (1.0 / (p.m - 1.0))


def barenblatt_density(x, t: float, p: ModelParams):
    """Normalized source-type law C t^{-alpha}(1 - B||x||^2/t^{2 beta})_+^{1/(m-1)}."""
    return p.big_c * barenblatt_profile(x, t, p)


def barenblatt_radial_cdf(r, t: float, p: ModelParams):
    """P(||Y|| <= r) for Y ~ barenblatt_density(., t); 1 for r >= t^beta/sqrt(B).

    Radial integral in closed form: the regularized incomplete beta
    I_z(d/2, m/(m-1)) at z = B r^2 / t^{2 beta}.
    """
    if not t > 0.0:
        raise ValueError("t must be positive")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0):
        raise ValueError("radius must be non-negative")
    z = np.clip(p.big_b * r * r / t ** (2.0 * p.beta), 0.0, 1.0)
    return _sps.betainc(p.d / 2.0, p.m / (p.m - 1.0), z)


def epd_density(x, t: float, q: EPDParams):
    """Fundamental EPD law Gamma(g+d/2)/(pi^{d/2} Gamma(g)) (ct)^{-d} (1-||x||^2/(ct)^2)_+^{g-1}."""
    if not t > 0.0:
        raise ValueError("t must be positive")
    r2 = _radius_sq(x, q.d)
    ct = q.c * t
    const = float(gamma_fn(q.gamma + q.d / 2.0)
                  / (math.pi ** (q.d / 2.0) * gamma_fn(q.gamma))) / ct ** q.d
    core = np.maximum(1.0 - r2 / (ct * ct), 0.0)
    with np.errstate(divide="ignore"):
        out = const * core ** (q.gamma - 1.0)
    # explicit support mask: core**0 would be 1 outside for gamma = 1
    return np.where(r2 >= ct * ct, 0.0, out)


def pme_epd_rescale_check(p: ModelParams, n_grid: int = 100,
                          tolerance: float = 1e-12) -> VerifyReport:
    """Pointwise identity: density(x, t) == EPD(x, t' = t^beta) with
    gamma = m/(m-1), c = 1/sqrt(B)."""
    q = EPDParams(gamma=p.m / (p.m - 1.0), c=1.0 / math.sqrt(p.big_b), d=p.d)
    rng_t = np.linspace(0.25, 4.0, max(2, n_grid // 10))
    worst = 0.0
    for t in rng_t:
        rmax = 1.3 * p.support_radius(t)
        radii = np.linspace(0.0, rmax, n_grid)
        if p.d == 1:
            xs = radii
        else:
            xs = np.zeros((n_grid, p.d))
            xs[:, 0] = radii
        lhs = barenblatt_density(xs, t, p)
        rhs = epd_density(xs, t ** p.beta, q)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return VerifyReport(check="pme-epd-rescale", params={"m": p.m, "d": p.d},
                        value=worst, tolerance=tolerance,
                        passed=worst <= tolerance)


def m_from_n(d: int, n: int, law: FlightLaw) -> Optional[float]:
    """PME exponent matched to a flight with n direction changes, or None.

    d = 1 (uniform law): m = (n+1)/(n-1) for n = 2k+1 and m = n/(n-2) for
    n = 2k+2, k >= 1.  Second law: m = n(d-1)/(n(d-1)-2) for d > 2/n + 1.
    Third law: m = n(d-2)/(n(d-2)-2) for d > 2/n + 2.  None when the
    dimension constraint fails (no PME correspondence).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if law is FlightLaw.F1_UNIFORM:
        if d != 1:
            raise ValueError("F1 law is the d=1 case")
        if n >= 3 and n % 2 == 1:
            return (n + 1.0) / (n - 1.0)
        if n >= 4 and n % 2 == 0:
            return n / (n - 2.0)
        return None
    if law is FlightLaw.F2_DIRICHLET_DM1:
        if d < 2:
            raise ValueError("F2 law requires d >= 2")
        if d <= 2.0 / n + 1.0:
            return None
        return n * (d - 1.0) / (n * (d - 1.0) - 2.0)
    if law is FlightLaw.F3_DIRICHLET_HALFD:
        if d < 3:
            raise ValueError("F3 law requires d >= 3")
        if d <= 2.0 / n + 2.0:
            return None
        return n * (d - 2.0) / (n * (d - 2.0) - 2.0)
    raise ValueError(f"unknown law {law!r}")


def barenblatt_cf(xi, t: float, p: ModelParams):
    """Characteristic function of barenblatt_density: real, radial.

    (2 sqrt(B)/(t^beta ||xi||))^mu Gamma(mu+1) J_mu(||xi|| t^beta / sqrt(B))
    with mu = d/(2 alpha (m-1)) = 1/(m-1) + d/2; the xi -> 0 limit is 1.
    """
    if not t > 0.0:
        raise ValueError("t must be positive")
    mu = 1.0 / (p.m - 1.0) + p.d / 2.0
    z = np.sqrt(_radius_sq(xi, p.d)) * t ** p.beta / math.sqrt(p.big_b)
    return bessel_j_scaled(mu, z)


def moment_y1(p_order: int, t: float, m: float):
    """p-th moment of the d = 1 law at time t (odd orders vanish).

    Gamma((p+1)/2) Gamma(1/2 + m/(m-1)) / (sqrt(pi) Gamma((p+1)/2 + m/(m-1)))
    * (t^alpha/sqrt(B))^p with alpha = 1/(1+m), B = (m-1)/(2m(m+1)).
    """
    if p_order < 0 or p_order != int(p_order):
        raise ValueError("moment order must be a non-negative integer")
    if not (m > 1.0 and t > 0.0):
        raise ValueError("need m > 1 and t > 0")
    if p_order % 2 == 1:
        return 0.0
    g = m / (m - 1.0)
    alpha = 1.0 / (1.0 + m)
    big_b = (m - 1.0) / (2.0 * m * (m + 1.0))
    const = (gamma_fn((p_order + 1) / 2.0) * gamma_fn(0.5 + g)
             / (math.sqrt(math.pi) * gamma_fn((p_order + 1) / 2.0 + g)))
    return float(const) * (t ** alpha / math.sqrt(big_b)) ** p_order


def marginal_density_1d(xk, tprime: float, p: ModelParams):
    """One-dimensional marginal of the d-dim law in the EPD frame (t' = t^beta).

    Exponent 1/(m-1) + (d-1)/2, normalization from the beta integral; for
    d = 1 this is the law itself.
    """
    if not tprime > 0.0:
        raise ValueError("tprime must be positive")
    e = 1.0 / (p.m - 1.0) + (p.d - 1.0) / 2.0
    ct = tprime / math.sqrt(p.big_b)
    const = float(gamma_fn(e + 1.5) / (math.sqrt(math.pi) * gamma_fn(e + 1.0))) / ct
    xk = np.asarray(xk, dtype=float)
    core = np.maximum(1.0 - (xk / ct) ** 2, 0.0)
    return const * core ** e
