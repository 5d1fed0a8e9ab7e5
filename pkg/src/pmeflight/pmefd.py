"""Independent PDE-side oracle for u_t = Laplace(u^m).

Explicit conservative finite differences on u (flux form, so discrete mass
telescopes exactly), one-dimensional or radially symmetric.  The scheme is
deliberately simple: it is an *oracle* for the closed forms, and first-order
interface lag is accounted for in the tolerances of the callers.

The free boundary of the discrete solution is measured by linearly
extrapolating the pressure v = u^{m-1} to zero from the last cells above a
small relative floor; the exact profile is pressure-linear at the interface,
so this is the sharp diagnostic (a raw u > 0 threshold wanders by a couple
of mesh widths depending on the floor).

``appendix_system_solve`` eliminates the four exponent constraints of the
self-similar ansatz f = t^delta (1 - B ||x||^2 / t^eta)_+^gamma step by
step and reports the residual of each original equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .analytic import ModelParams

__all__ = ["GridSpec", "EvolveResult", "AppendixSolution", "grid_points",
           "pme_evolve", "pme_residual", "appendix_system_solve",
           "front_radius"]


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid: [-L, L] for d = 1, [0, L] radial for d >= 2."""

    big_l: float
    nx: int
    t0: float
    t1: float
    cfl: float = 0.45

    def __post_init__(self):
        if not (self.big_l > 0.0 and self.nx >= 16):
            raise ValueError("need L > 0 and nx >= 16")
        if not (0.0 < self.t0 < self.t1):
            raise ValueError("need 0 < t0 < t1")
        if not (0.0 < self.cfl < 1.0):
            raise ValueError("cfl must lie in (0, 1)")


class EvolveResult(NamedTuple):
    x: np.ndarray          # cell centers
    u: np.ndarray          # solution at t1
    steps: int
    mass0: float
    mass1: float
    clipped_mass: float
    front: float           # pressure-extrapolated interface radius


class AppendixSolution(NamedTuple):
    gamma: float
    delta: float
    eta: float
    big_b: float
    residuals: tuple


def grid_points(g: GridSpec, d: int) -> np.ndarray:
    """Cell centers: symmetric for d = 1, radial cell midpoints for d >= 2."""
    if d == 1:
        return np.linspace(-g.big_l, g.big_l, g.nx)
    h = g.big_l / g.nx
    return (np.arange(g.nx) + 0.5) * h


def front_radius(x: np.ndarray, u: np.ndarray, m: float) -> float:
    """Interface radius: zero crossing of the pressure u^{m-1}, linearly
    extrapolated from the outermost cells above a 1e-3 relative floor."""
    v = np.abs(u) ** (m - 1.0)
    keep = v > v.max() * 1e-3
    if not np.any(keep):
        return 0.0
    r = np.abs(x)
    j = np.argmax(np.where(keep, r, -np.inf))
    # walk one cell inward along increasing radius
    order = np.argsort(r)
    pos = np.searchsorted(r[order], r[j])
    jin = order[max(pos - 1, 0)]
    if v[jin] <= v[j]:
        return r[j]
    return r[j] + v[j] * (r[j] - r[jin]) / (v[jin] - v[j])


def pme_evolve(u0: np.ndarray, p: ModelParams, g: GridSpec) -> EvolveResult:
    """March u_t = Laplace(u^m) from t0 to t1 with adaptive explicit steps.

    u0 must be sampled on ``grid_points(g, p.d)``, non-negative, and
    compactly supported inside the grid.  dt is re-adapted each step as
    cfl * h^2 / (2 m max(u)^{m-1}).
    """
    u = np.asarray(u0, dtype=float).copy()
    if u.shape != (g.nx,):
        raise ValueError("u0 shape does not match the grid")
    if np.any(u < 0.0):
        raise ValueError("u0 must be non-negative")
    d = p.d
    m = p.m
    if d == 1:
        h = 2.0 * g.big_l / (g.nx - 1)
        vol = np.full(g.nx, h)
    else:
        h = g.big_l / g.nx
        faces = np.arange(g.nx + 1) * h
        vol = (faces[1:] ** d - faces[:-1] ** d) / d
        face_area = faces ** (d - 1)   # r^{d-1} at the faces; 0 at r = 0
    if u[-1] > 0.0 or (d == 1 and u[0] > 0.0):
        raise ValueError("u0 must vanish at the outer boundary")
    mass0 = float(np.sum(u * vol))
    t = g.t0
    steps = 0
    clipped = 0.0
    max_steps = 50_000_000
    while t < g.t1:
        umax = float(u.max())
        if umax == 0.0:
            break
        dt = g.cfl * h * h / (2.0 * m * umax ** (m - 1.0))
        dt = min(dt, g.t1 - t)
        w = u ** m
        if d == 1:
            flux = (w[1:] - w[:-1]) / h                    # at interior faces
            u[1:-1] += dt * (flux[1:] - flux[:-1]) / h
        else:
            flux = face_area[1:-1] * (w[1:] - w[:-1]) / h  # faces 1..nx-1
            div = np.zeros_like(u)
            div[0] = flux[0] / vol[0]
            div[1:-1] = (flux[1:] - flux[:-1]) / vol[1:-1]
            div[-1] = -flux[-1] / vol[-1]
            u += dt * div
        neg = u < 0.0
        if np.any(neg):
            clipped += float(-np.sum(u[neg] * vol[neg]))
            u[neg] = 0.0
        t += dt
        steps += 1
        if steps > max_steps:
            raise RuntimeError("CFL-limited step count exceeded; coarsen the grid")
    x = grid_points(g, d)
    return EvolveResult(x=x, u=u, steps=steps, mass0=mass0,
                        mass1=float(np.sum(u * vol)), clipped_mass=clipped,
                        front=front_radius(x, u, m))


def pme_residual(p: ModelParams, x: float, t: float, h: float) -> float:
    """|d/dt f - Laplace(f^m)| of the exact self-similar profile by centered
    second-order differences; O(h^2) -> 0 since the profile solves the PME.

    The full stencil must stay strictly inside the support (one-sided
    differences at the free boundary are invalid) and, for d >= 2, away
    from the r = 0 axis by at least h.
    """
    r = abs(float(x))
    if not (t - h > 0.0):
        raise ValueError("need t - h > 0")
    rmin_support = p.support_radius(t - h)   # support shrinks toward smaller t
    if r + h >= rmin_support:
        raise ValueError("stencil touches or crosses the free boundary")
    if p.d >= 2 and r - h <= 0.0:
        raise ValueError("radial stencil must stay away from r = 0")

    ut = (_profile_radial(r, t + h, p) - _profile_radial(r, t - h, p)) / (2.0 * h)
    wm = lambda rr: _profile_radial(rr, t, p) ** p.m
    lap = (wm(r + h) - 2.0 * wm(r) + wm(r - h)) / (h * h)
    if p.d >= 2:
        lap += (p.d - 1.0) / r * (wm(r + h) - wm(r - h)) / (2.0 * h)
    return abs(ut - lap)


def _profile_radial(r, t, p: ModelParams):
    core = max(1.0 - p.big_b * r * r / t ** (2.0 * p.beta), 0.0)
    return t ** (-p.alpha) * core ** (1.0 / (p.m - 1.0))


def appendix_system_solve(m: float, d: int) -> AppendixSolution:
    """Solve the four self-similar exponent constraints by elimination.

    gamma = gamma m - 1            -> gamma
    delta - 1 = m delta - eta      -> delta(eta)
    delta - eta gamma = -2 B gamma m (d + 2(gamma m - 1))   -> eta
    gamma eta = 4 B gamma m (gamma m - 1)                   -> B(eta)
    """
    if not m > 1.0:
        raise ValueError("need m > 1")
    gamma = 1.0 / (m - 1.0)
    eta = 2.0 / (2.0 + d * (m - 1.0))
    delta = (eta - 1.0) / (m - 1.0)
    big_b = eta / (4.0 * m * gamma)
    gm = gamma * m
    res = (
        abs(gamma - (gm - 1.0)),
        abs((delta - 1.0) - (m * delta - eta)),
        abs((delta - eta * gamma) + 2.0 * big_b * gm * (d + 2.0 * (gm - 1.0))),
        abs(gamma * eta - 4.0 * big_b * gm * (gm - 1.0)),
    )
    return AppendixSolution(gamma=gamma, delta=delta, eta=eta, big_b=big_b,
                            residuals=res)
