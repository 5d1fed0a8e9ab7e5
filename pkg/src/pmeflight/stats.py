"""Verification harness primitives shared by every module.

One-sample Kolmogorov-Smirnov statistic with the asymptotic p-value,
empirical characteristic functions with their deviation bound, and the
``VerifyReport`` record that all named checks return.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

__all__ = ["VerifyReport", "EmpiricalCF", "ks_statistic", "empirical_cf",
           "kolmogorov_sf"]


@dataclass
class VerifyReport:
    """Outcome of a named check: discrepancy vs tolerance, plus provenance."""

    check: str
    params: dict
    value: float
    tolerance: float
    passed: bool
    seed: Optional[int] = None
    n_samples: Optional[int] = None

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "value": self.value,
            "tolerance": self.tolerance,
            "pass": bool(self.passed),
            "seed": self.seed,
            "n_samples": self.n_samples,
        }


class EmpiricalCF(NamedTuple):
    value: complex
    bound: float  # Hoeffding-style 3/sqrt(N) deviation scale


def kolmogorov_sf(lam: float) -> float:
    """Kolmogorov distribution survival function Q(lam) = 2 sum (-1)^{k-1} e^{-2k^2 lam^2}."""
    if lam <= 0.0:
        return 1.0
    s = 0.0
    sign = 1.0
    for k in range(1, 101):
        t = math.exp(-2.0 * k * k * lam * lam)
        s += sign * t
        if t < 1e-17 * max(s, 1e-300):
            break
        sign = -sign
    return min(1.0, max(0.0, 2.0 * s))


def ks_statistic(samples, cdf):
    """One-sample KS statistic and asymptotic p-value.

    ``cdf`` is a vectorized callable, monotone on the sample range.  The
    p-value uses the Stephens-corrected asymptotic Kolmogorov distribution;
    it is meaningful for a few hundred samples and up.
    """
    x = np.asarray(samples, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("ks_statistic needs at least one sample")
    if np.any(np.isnan(x)):
        raise ValueError("NaN samples rejected")
    x = np.sort(x)
    n = x.size
    f = np.asarray(cdf(x), dtype=float)
    if np.any(f < -1e-12) or np.any(f > 1.0 + 1e-12):
        raise ValueError("cdf values outside [0, 1]")
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - f)
    d_minus = np.max(f - (i - 1) / n)
    d = max(d_plus, d_minus)
    sn = math.sqrt(n)
    lam = (sn + 0.12 + 0.11 / sn) * d
    return d, kolmogorov_sf(lam)


def empirical_cf(samples, xi) -> EmpiricalCF:
    """(1/N) sum_k exp(i <xi, X_k>) with its 3/sqrt(N) deviation bound.

    ``samples`` has shape (N,) for scalar data or (N, d); ``xi`` is a scalar
    or a length-d vector.  Summation is chunked and the chunk totals are
    combined with math.fsum, so the result does not depend on how batches
    were merged.
    """
    x = np.asarray(samples, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if x.ndim == 1:
        phase = x * float(xi)
    else:
        phase = x @ xi.reshape(-1)
    n = phase.shape[0]
    if n < 1:
        raise ValueError("empirical_cf needs at least one sample")
    re_parts, im_parts = [], []
    for k in range(0, n, 1 << 16):
        chunk = phase[k:k + (1 << 16)]
        re_parts.append(float(np.sum(np.cos(chunk))))
        im_parts.append(float(np.sum(np.sin(chunk))))
    val = complex(math.fsum(re_parts) / n, math.fsum(im_parts) / n)
    return EmpiricalCF(val, 3.0 / math.sqrt(n))
