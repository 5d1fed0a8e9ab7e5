"""Flight samplers vs their closed-form laws; the self-similar diffusion."""

import math

import numpy as np
import pytest
from scipy import integrate, special, stats as sstats

from pmeflight.analytic import (
    FlightLaw,
    ModelParams,
    barenblatt_density,
    barenblatt_radial_cdf,
    m_from_n,
)
from pmeflight.flights import (
    FlightSpec,
    SampleBatch,
    sample_flight,
    sample_sde_barenblatt,
    sample_uniform_sphere,
    sample_waiting_times,
    telegraph_density,
    flight_density,
)
from pmeflight.stats import ks_statistic


def test_sphere_unit_norm():
    rng = np.random.default_rng(0)
    for d in (2, 3, 5):
        v = sample_uniform_sphere(d, rng, 1000)
        assert np.max(np.abs(np.linalg.norm(v, axis=1) - 1.0)) <= 1e-12
    with pytest.raises(ValueError):
        sample_uniform_sphere(1, rng)


def test_sphere_angles_uniform_chi2():
    rng = np.random.default_rng(1)
    v = sample_uniform_sphere(2, rng, 100_000)
    ang = np.arctan2(v[:, 1], v[:, 0])
    counts, _ = np.histogram(ang, bins=36, range=(-np.pi, np.pi))
    expected = 100_000 / 36.0
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    assert sstats.chi2.sf(chi2, 35) > 0.001


def test_sphere_coordinate_means():
    rng = np.random.default_rng(2)
    n = 100_000
    v = sample_uniform_sphere(3, rng, n)
    assert np.max(np.abs(v.mean(axis=0))) <= 3.0 / math.sqrt(n)


def test_waiting_times_sum_exact():
    rng = np.random.default_rng(3)
    for spec in (FlightSpec(3, 1, FlightLaw.F1_UNIFORM, t=1.7),
                 FlightSpec(2, 3, FlightLaw.F2_DIRICHLET_DM1, t=0.9),
                 FlightSpec(2, 3, FlightLaw.F3_DIRICHLET_HALFD, t=2.3)):
        tau = sample_waiting_times(spec, rng, 500)
        assert tau.shape == (500, spec.n + 1)
        assert np.all(tau >= 0.0)
        assert np.max(np.abs(tau.sum(axis=1) - spec.t)) <= 4e-16 * spec.t


def test_waiting_times_beta_marginal_f2():
    # F2, d=3, n=2: each tau/t is Beta(2, 4)
    rng = np.random.default_rng(4)
    spec = FlightSpec(2, 3, FlightLaw.F2_DIRICHLET_DM1, t=2.0)
    tau = sample_waiting_times(spec, rng, 100_000)
    _, p = ks_statistic(tau[:, 0] / spec.t,
                        lambda z: special.betainc(2.0, 4.0, np.clip(z, 0, 1)))
    assert p > 0.001


def test_waiting_times_uniform_marginal_f1():
    rng = np.random.default_rng(5)
    spec = FlightSpec(1, 1, FlightLaw.F1_UNIFORM, t=3.0)
    tau = sample_waiting_times(spec, rng, 100_000)
    _, p = ks_statistic(tau[:, 0] / spec.t, lambda z: np.clip(z, 0.0, 1.0))
    assert p > 0.001


def test_spec_validation():
    with pytest.raises(ValueError):
        FlightSpec(1, 2, FlightLaw.F1_UNIFORM)
    with pytest.raises(ValueError):
        FlightSpec(1, 1, FlightLaw.F2_DIRICHLET_DM1)
    with pytest.raises(ValueError):
        FlightSpec(1, 2, FlightLaw.F3_DIRICHLET_HALFD)
    with pytest.raises(ValueError):
        FlightSpec(0, 1, FlightLaw.F1_UNIFORM)


def test_flight_finite_speed_exact():
    rng = np.random.default_rng(6)
    for spec in (FlightSpec(3, 1, FlightLaw.F1_UNIFORM, c=2.0, t=1.5),
                 FlightSpec(3, 2, FlightLaw.F2_DIRICHLET_DM1, c=1.0, t=1.0),
                 FlightSpec(2, 4, FlightLaw.F3_DIRICHLET_HALFD, c=0.5, t=2.0)):
        batch = sample_flight(spec, rng, 20_000)
        r = np.sqrt(np.sum(np.atleast_2d(batch.positions) ** 2, axis=-1))
        assert np.all(r <= spec.c * spec.t + 1e-12)


def test_flight_isotropy_mean_norm():
    rng = np.random.default_rng(7)
    n = 100_000
    spec = FlightSpec(3, 2, FlightLaw.F2_DIRICHLET_DM1, c=1.0, t=1.0)
    batch = sample_flight(spec, rng, n)
    assert np.linalg.norm(batch.positions.mean(axis=0)) \
        <= 3.0 * spec.c * spec.t / math.sqrt(n)


def test_flight_d1_n1_uniform_law():
    rng = np.random.default_rng(8)
    spec = FlightSpec(1, 1, FlightLaw.F1_UNIFORM, c=1.3, t=1.1)
    batch = sample_flight(spec, rng, 100_000)
    ct = spec.c * spec.t
    _, p = ks_statistic(batch.positions, lambda z: np.clip((z + ct) / (2 * ct), 0, 1))
    assert p > 0.001


def test_flight_d3_n2_f3_radial_ks():
    rng = np.random.default_rng(9)
    spec = FlightSpec(2, 3, FlightLaw.F3_DIRICHLET_HALFD, c=1.0, t=1.0)
    batch = sample_flight(spec, rng, 100_000)
    r = np.linalg.norm(batch.positions, axis=1)
    g = spec.n * (spec.d / 2.0 - 1.0)   # radial law Beta(d/2, g) in (r/ct)^2
    cdf = lambda z: special.betainc(1.5, g, np.clip((z / (spec.c * spec.t)) ** 2,
                                                    0, 1))
    _, p = ks_statistic(r, cdf)
    assert p > 0.001


def test_batch_invariant_guard():
    with pytest.raises(ValueError):
        SampleBatch(positions=np.array([[3.0, 0.0]]), seed=0, count=1,
                    speed_bound=1.0)


def test_telegraph_n1_value_and_normalization():
    ct = 2.0 * 1.5
    val = telegraph_density(0.7, 1.5, 1, 2.0)
    assert val == pytest.approx(1.0 / (2.0 * ct), rel=1e-14)
    for n in (1, 2, 3, 4, 5):
        total = integrate.quad(lambda x: float(telegraph_density(x, 1.5, n, 2.0)),
                               -ct, ct, limit=200)[0]
        assert abs(total - 1.0) <= 1e-9
    with pytest.raises(ValueError):
        telegraph_density(0.0, -1.0, 1)


def test_telegraph_odd_even_coincidence():
    xs = np.linspace(-2.9, 2.9, 101)
    for n in (1, 3, 5, 7):
        a = telegraph_density(xs, 1.5, n, 2.0)
        b = telegraph_density(xs, 1.5, n + 1, 2.0)
        assert np.max(np.abs(a - b)) <= 1e-14


def test_flight_density_normalization_d2_n3():
    spec = FlightSpec(3, 2, FlightLaw.F2_DIRICHLET_DM1, c=1.0, t=1.0)
    total = integrate.quad(
        lambda r: 2 * np.pi * r * float(flight_density(np.r_[r, 0.0], spec)),
        0.0, spec.c * spec.t, limit=200)[0]
    assert abs(total - 1.0) <= 1e-9
    assert flight_density(np.r_[1.2, 0.0], spec) == 0.0
    with pytest.raises(ValueError):
        flight_density(np.r_[0.1], FlightSpec(1, 1, FlightLaw.F1_UNIFORM))


@pytest.mark.parametrize("d,n,law", [
    (2, 3, FlightLaw.F2_DIRICHLET_DM1),
    (3, 2, FlightLaw.F2_DIRICHLET_DM1),
    (4, 2, FlightLaw.F3_DIRICHLET_HALFD),
    (5, 1, FlightLaw.F3_DIRICHLET_HALFD),
])
def test_flight_density_equals_rescaled_barenblatt(d, n, law):
    m = m_from_n(d, n, law)
    assert m is not None
    p = ModelParams(m, d)
    t = 1.4
    spec = FlightSpec(n, d, law, c=1.0 / math.sqrt(p.big_b), t=t ** p.beta)
    rs = np.linspace(0.0, 1.2 * p.support_radius(t), 60)
    xs = np.zeros((rs.size, d))
    xs[:, 0] = rs
    assert np.max(np.abs(flight_density(xs, spec)
                         - barenblatt_density(xs, t, p))) <= 1e-12


def test_telegraph_equals_rescaled_barenblatt_d1():
    n = 3
    m = m_from_n(1, n, FlightLaw.F1_UNIFORM)
    p = ModelParams(m, 1)
    t = 2.0
    cprime = 1.0 / math.sqrt(p.big_b)
    xs = np.linspace(-1.2 * p.support_radius(t), 1.2 * p.support_radius(t), 101)
    assert np.max(np.abs(telegraph_density(xs, t ** p.beta, n, cprime)
                         - barenblatt_density(xs, t, p))) <= 1e-12


def test_time_rescaled_flight_matches_radial_cdf():
    # the d=1, n=3 case of the flight <-> PME correspondence at sample level
    p = ModelParams(2.0, 1)
    rng = np.random.default_rng(11)
    t = 1.0
    spec = FlightSpec(3, 1, FlightLaw.F1_UNIFORM,
                      c=1.0 / math.sqrt(p.big_b), t=t ** p.beta)
    batch = sample_flight(spec, rng, 100_000)
    _, pval = ks_statistic(np.abs(batch.positions),
                           lambda r: barenblatt_radial_cdf(r, t, p))
    assert pval > 0.001


def test_sde_endpoints_in_support_and_ks():
    p = ModelParams(2.0, 1)
    t = 1.0
    r_support = p.support_radius(t)
    passes = 0
    for seed in (101, 102, 103):
        rng = np.random.default_rng(seed)
        res = sample_sde_barenblatt(p, t, 1000, rng, size=10_000)
        assert res.max_overshoot <= 1.0, "paths left the support"
        assert np.max(np.abs(res.endpoints)) <= r_support + 1e-6

        def cdf(x):
            z = np.clip(p.big_b * x * x / t ** (2 * p.beta), 0.0, 1.0)
            half = special.betainc(0.5, 2.0, z)
            return 0.5 * (1.0 + np.sign(x) * half)

        _, pval = ks_statistic(res.endpoints, cdf)
        if pval > 0.001:
            passes += 1
    assert passes >= 2


def test_sde_variance_matches_moment_law():
    from pmeflight.analytic import moment_y1

    p = ModelParams(2.0, 1)
    rng = np.random.default_rng(12)
    n = 10_000
    for t in (0.5, 1.0):
        res = sample_sde_barenblatt(p, t, 400, rng, size=n)
        var = float(np.var(res.endpoints))
        mu2 = moment_y1(2, t, 2.0)
        mu4 = moment_y1(4, t, 2.0)
        se = math.sqrt((mu4 - mu2 * mu2) / n)
        assert abs(var - 2.4 * t ** (2.0 / 3.0)) <= 3.0 * se


def test_sde_s0_sensitivity():
    # halving the start fraction must not move the endpoint law noticeably
    p = ModelParams(2.0, 1)
    a = sample_sde_barenblatt(p, 1.0, 600, np.random.default_rng(13),
                              size=8000, s0_fraction=0.01)
    b = sample_sde_barenblatt(p, 1.0, 600, np.random.default_rng(13),
                              size=8000, s0_fraction=0.005)
    ref = sstats.ks_2samp(a.endpoints, b.endpoints)
    assert ref.pvalue > 0.001


def test_sde_argument_validation():
    p = ModelParams(2.0, 1)
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        sample_sde_barenblatt(p, -1.0, 500, rng)
    with pytest.raises(ValueError):
        sample_sde_barenblatt(p, 1.0, 50, rng)
