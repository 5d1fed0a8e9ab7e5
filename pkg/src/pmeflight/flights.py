"""Random flights, the telegraph process, and the self-similar diffusion.

A flight starts at the origin, moves at constant speed c, and changes
direction n times in [0, t]; directions are uniform on the unit sphere
(a fair +/-1 start with alternation for d = 1) and the waiting times are
rescaled Dirichlet vectors:

* F1 (d = 1): uniform order statistics, joint density n!/t^n;
* F2 (d >= 2): Dirichlet(d-1, ..., d-1) over the n+1 legs;
* F3 (d >= 3): Dirichlet(d/2-1, ..., d/2-1).

``sample_sde_barenblatt`` integrates dZ_j = sqrt(2 f(Z, s)^{m-1}) dB_j by
Euler-Maruyama, where f is the exact self-similar PME profile
(``analytic.barenblatt_profile``).  With that coefficient the Fokker-Planck
equation of Z is the linearized PME and the marginal law of Z(s) is exactly
the normalized source-type density for all s >= s0 when started from it;
the bare coefficient u^{(m-1)/2} (no sqrt(2), normalized u) would not
preserve the law.  Paths start at s0 = t/100 from the law at s0 (a point
start makes the coefficient degenerate), on a geometric time grid matching
the self-similar scaling; tests document the s0 sensitivity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy import special as _sps

from .analytic import FlightLaw, ModelParams, barenblatt_profile
from .specfun import log_gamma

__all__ = ["FlightSpec", "SampleBatch", "SdeResult", "sample_uniform_sphere",
           "sample_waiting_times", "sample_flight", "telegraph_density",
           "flight_density", "sample_sde_barenblatt"]

FINITE_SPEED_SLACK = 1e-12


@dataclass(frozen=True)
class FlightSpec:
    """n direction changes, dimension d, waiting-time law, speed c, horizon t."""

    n: int
    d: int
    law: FlightLaw
    c: float = 1.0
    t: float = 1.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1 direction changes")
        if not (self.c > 0.0 and self.t > 0.0):
            raise ValueError("speed and horizon must be positive")
        if self.law is FlightLaw.F1_UNIFORM and self.d != 1:
            raise ValueError("the uniform law is the d = 1 case")
        if self.law is FlightLaw.F2_DIRICHLET_DM1 and self.d < 2:
            raise ValueError("the second law needs d >= 2")
        if self.law is FlightLaw.F3_DIRICHLET_HALFD and self.d < 3:
            raise ValueError("the third law needs d >= 3")

    @property
    def dirichlet_parameter(self) -> float:
        if self.law is FlightLaw.F1_UNIFORM:
            return 1.0
        if self.law is FlightLaw.F2_DIRICHLET_DM1:
            return self.d - 1.0
        return self.d / 2.0 - 1.0


@dataclass(frozen=True)
class SampleBatch:
    """Flight endpoints with provenance; checks the finite-speed bound."""

    positions: np.ndarray
    seed: Optional[int]
    count: int
    speed_bound: float

    def __post_init__(self):
        r = np.sqrt(np.sum(np.atleast_2d(self.positions) ** 2, axis=-1))
        if np.any(r > self.speed_bound + FINITE_SPEED_SLACK):
            raise ValueError("finite-speed bound violated")


class SdeResult(NamedTuple):
    endpoints: np.ndarray
    unstable: bool          # some path left the support by > one mesh width
    max_overshoot: float    # worst |Z| - R(s), in mesh widths


def sample_uniform_sphere(d: int, rng: np.random.Generator, size: int = None):
    """Uniform draws on the unit sphere S^{d-1}, d >= 2 (Gaussian method)."""
    if d < 2:
        raise ValueError("need d >= 2 (d = 1 directions are +/-1)")
    shape = (d,) if size is None else (size, d)
    v = rng.standard_normal(shape)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def sample_waiting_times(spec: FlightSpec, rng: np.random.Generator,
                         size: int = None):
    """Waiting times (tau_1, ..., tau_{n+1}) with sum exactly spec.t."""
    nleg = spec.n + 1
    m = 1 if size is None else size
    if spec.law is FlightLaw.F1_UNIFORM or spec.dirichlet_parameter == 1.0:
        u = np.sort(rng.uniform(0.0, 1.0, (m, spec.n)), axis=1)
        frac = np.diff(np.concatenate([np.zeros((m, 1)), u, np.ones((m, 1))],
                                      axis=1), axis=1)
    else:
        g = rng.standard_gamma(spec.dirichlet_parameter, (m, nleg))
        frac = g / np.sum(g, axis=1, keepdims=True)
    tau = spec.t * frac
    tau[:, -1] = spec.t - np.sum(tau[:, :-1], axis=1)
    return tau[0] if size is None else tau


def _directions(spec: FlightSpec, rng: np.random.Generator, m: int):
    nleg = spec.n + 1
    if spec.d == 1:
        v0 = rng.choice(np.array([-1.0, 1.0]), size=(m, 1))
        signs = v0 * (-1.0) ** np.arange(nleg)
        return signs[:, :, None]
    return sample_uniform_sphere(spec.d, rng, m * nleg).reshape(m, nleg, spec.d)


def sample_flight(spec: FlightSpec, rng: np.random.Generator,
                  size: int = None, seed: Optional[int] = None) -> SampleBatch:
    """Endpoints X = c sum_k V_k tau_{k+1} of the random flight."""
    m = 1 if size is None else size
    tau = np.atleast_2d(sample_waiting_times(spec, rng, m))
    dirs = _directions(spec, rng, m)
    pos = spec.c * np.einsum("ml,mld->md", tau, dirs)
    if size is None:
        pos = pos[0]
    return SampleBatch(positions=pos, seed=seed, count=m,
                       speed_bound=spec.c * spec.t)


def telegraph_density(x, t: float, n: int, c: float = 1.0):
    """d = 1 flight law with n reversals: a symmetric beta-type profile.

    n odd : Gamma(n+1) / (Gamma((n+1)/2)^2 2^n c t) (1 - x^2/(ct)^2)_+^{(n-1)/2}
    n even: Gamma(n+1) / (Gamma(n/2+1) Gamma(n/2) 2^n c t) (...)_+^{n/2-1}
    """
    if not (t > 0.0 and c > 0.0):
        raise ValueError("need t > 0 and c > 0")
    if n < 1:
        raise ValueError("need n >= 1")
    ct = c * t
    if n % 2 == 1:
        expo = (n - 1) / 2.0
        lconst = log_gamma(n + 1.0) - 2.0 * log_gamma((n + 1.0) / 2.0)
    else:
        expo = n / 2.0 - 1.0
        lconst = log_gamma(n + 1.0) - log_gamma(n / 2.0 + 1.0) - log_gamma(n / 2.0)
    const = math.exp(lconst - n * math.log(2.0)) / ct
    x = np.asarray(x, dtype=float)
    core = np.maximum(1.0 - (x / ct) ** 2, 0.0)
    with np.errstate(divide="ignore"):
        out = const * core ** expo
    return np.where(np.abs(x) >= ct, 0.0, out)


def flight_density(x, spec: FlightSpec):
    """Endpoint density of the d >= 2 flight (F2/F3 closed forms)."""
    if spec.law is FlightLaw.F1_UNIFORM:
        raise ValueError("d = 1: use telegraph_density")
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != spec.d:
        raise ValueError(f"last axis of x must have length d={spec.d}")
    n, d = spec.n, spec.d
    ct = spec.c * spec.t
    if spec.law is FlightLaw.F2_DIRICHLET_DM1:
        expo = n * (d - 1.0) / 2.0 - 1.0
        lconst = log_gamma((n + 1.0) * (d - 1.0) / 2.0 + 0.5) \
            - log_gamma(n * (d - 1.0) / 2.0)
    else:
        expo = n * (d / 2.0 - 1.0) - 1.0
        lconst = log_gamma((n + 1.0) * (d / 2.0 - 1.0) + 1.0) \
            - log_gamma(n * (d / 2.0 - 1.0))
    const = math.exp(lconst) / (math.pi ** (d / 2.0) * ct ** d)
    r2 = np.sum(x * x, axis=-1)
    core = np.maximum(1.0 - r2 / (ct * ct), 0.0)
    with np.errstate(divide="ignore"):
        out = const * core ** expo
    return np.where(r2 >= ct * ct, 0.0, out)


def sample_sde_barenblatt(p: ModelParams, t: float, steps: int,
                          rng: np.random.Generator, size: int = None,
                          s0_fraction: float = 0.01) -> SdeResult:
    """Euler-Maruyama endpoints Z(t) of dZ_j = sqrt(2 f^{m-1}) dB_j.

    f is the exact self-similar profile; Z(s0) is drawn from the normalized
    law at s0 = t * s0_fraction, so the marginal of Z(s) stays on the
    normalized law.  Geometric time grid; the coefficient is clamped to 0
    outside the support (the (.)_+ profile).
    """
    if not t > 0.0:
        raise ValueError("t must be positive")
    if steps < 100:
        raise ValueError("need at least 100 steps")
    m = 1 if size is None else size
    s0 = t * s0_fraction
    # radial inverse-CDF start from the law at s0
    u = rng.uniform(0.0, 1.0, m)
    r0 = p.support_radius(s0) * np.sqrt(
        _sps.betaincinv(p.d / 2.0, p.m / (p.m - 1.0), u))
    if p.d == 1:
        z = (r0 * rng.choice(np.array([-1.0, 1.0]), size=m))[:, None]
    else:
        z = r0[:, None] * sample_uniform_sphere(p.d, rng, m)
    grid = np.geomspace(s0, t, steps + 1)
    expo = (p.m - 1.0) / 2.0
    overshoot = 0.0
    for k in range(steps):
        s, ds = grid[k], grid[k + 1] - grid[k]
        f = barenblatt_profile(z if p.d > 1 else z[:, 0], s, p)
        sig = math.sqrt(2.0) * f ** expo
        z = z + (sig * math.sqrt(ds))[:, None] * rng.standard_normal((m, p.d))
        mesh = math.sqrt(2.0 * ds) * s ** (-p.alpha * expo)  # max step scale
        r_next = p.support_radius(grid[k + 1])
        over = (np.sqrt(np.sum(z * z, axis=1)).max() - r_next) / mesh
        overshoot = max(overshoot, float(over))
    endpoints = z[:, 0] if p.d == 1 else z
    if size is None:
        endpoints = endpoints[0] if p.d == 1 else endpoints[0]
    return SdeResult(endpoints=endpoints, unstable=overshoot > 1.0,
                     max_overshoot=overshoot)
