"""pmeflight: self-similar porous-medium flow meets random flights.

Closed-form densities (Barenblatt/EPD/telegraph/flight laws, stable and
Cauchy laws, fractional-EPD and pseudoprocess kernels), Monte-Carlo
samplers, and the independent numerical oracles (finite differences,
quadrature, KS/CF statistics) that verify every identity connecting them.
"""

from .analytic import (
    EPDParams,
    FlightLaw,
    ModelParams,
    barenblatt_cf,
    barenblatt_constants,
    barenblatt_density,
    barenblatt_profile,
    barenblatt_radial_cdf,
    epd_density,
    m_from_n,
    marginal_density_1d,
    moment_y1,
    pme_epd_rescale_check,
)
from .stats import VerifyReport, empirical_cf, ks_statistic

__version__ = "0.1.0"
