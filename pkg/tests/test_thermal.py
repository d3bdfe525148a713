import math

import numpy as np
import pytest
from scipy.integrate import quad

import tracergas as tg
from helpers import COLLISION_TIME_EXAMPLE, POSITION_PDF_AT_ZERO, RATE_EXAMPLE, light_gas_env


def small_env(T=1.0, sigma_g=10.0, m_g=1.0, n_g=0.01):
    return tg.GasEnvironment(m_g=m_g, T=T, n_g=n_g, sigma_g=sigma_g)


def test_environment_validation():
    with pytest.raises(ValueError):
        tg.GasEnvironment(m_g=0.0, T=1.0, n_g=1.0, sigma_g=1.0)
    with pytest.raises(ValueError):
        tg.GasEnvironment(m_g=1.0, T=-1.0, n_g=1.0, sigma_g=1.0)
    # sigma_g = 1, T = 0.5 puts the whole thermal energy into the packet width
    with pytest.raises(ValueError):
        tg.GasEnvironment(m_g=1.0, T=0.5, n_g=1.0, sigma_g=1.0)


def test_maxwell_peak_value():
    env = small_env(T=2.0, m_g=3.0)
    expected = 1.0 / math.sqrt(2.0 * math.pi * 3.0 * 2.0)
    assert tg.maxwell_pdf(env, 0.0) == pytest.approx(expected, rel=1e-14)


def test_maxwell_normalized():
    env = small_env(T=0.7, m_g=2.0)
    total, _ = quad(lambda p: tg.maxwell_pdf(env, p), -50, 50, epsabs=1e-12)
    assert total == pytest.approx(1.0, abs=1e-10)


def test_maxwell_second_moment():
    env = small_env(T=0.7, m_g=2.0)
    m2, _ = quad(lambda p: p * p * tg.maxwell_pdf(env, p), -60, 60, epsabs=1e-12)
    assert m2 == pytest.approx(2.0 * 0.7, abs=1e-8)


def test_maxwell_effective_option_narrows():
    env = small_env(T=1.0, sigma_g=2.0)
    assert tg.maxwell_pdf(env, 0.0, effective=True) > tg.maxwell_pdf(env, 0.0)


def test_effective_temperature_wide_packet_limit():
    env = small_env(T=1.0, sigma_g=1e9)
    assert tg.effective_temperature(env) == pytest.approx(1.0, rel=1e-12)


def test_effective_temperature_value():
    env = small_env(T=1.0, sigma_g=1.0, m_g=1.0)
    assert tg.effective_temperature(env) == pytest.approx(0.5, rel=1e-14)


def test_collision_rate_unit_case():
    env = small_env(T=math.pi / 2.0, m_g=1.0, n_g=1.0, sigma_g=10.0)
    assert tg.collision_rate(env) == pytest.approx(1.0, rel=1e-14)


def test_collision_rate_example_value():
    env = tg.GasEnvironment(m_g=1e-4, T=0.2, n_g=0.01, sigma_g=400.0)
    assert tg.collision_rate(env) == pytest.approx(RATE_EXAMPLE, rel=1e-13)


def test_collision_rate_scaling():
    base = tg.collision_rate(small_env(T=1.0, n_g=0.01))
    assert tg.collision_rate(small_env(T=1.0, n_g=0.03)) == pytest.approx(3 * base, rel=1e-12)
    assert tg.collision_rate(small_env(T=4.0, n_g=0.01)) == pytest.approx(2 * base, rel=1e-12)


def test_regime_report_coarse_graining():
    env = light_gas_env(temperature=0.5)
    report = tg.regime_report(env, tg.Tracer(1.0), 4.0, t=20.0)
    assert report.collision_time == pytest.approx(COLLISION_TIME_EXAMPLE, rel=1e-13)
    assert any("coarse" in w for w in report.warnings)
    assert report.width_match_residual == 0.0


def test_regime_report_dilution_warning():
    env = tg.GasEnvironment(m_g=1.0, T=10.0, n_g=0.05, sigma_g=10.0)
    report = tg.regime_report(env, tg.Tracer(1.0), 10.0, t=1000.0)
    assert report.dilution_ratio == pytest.approx(0.5, rel=1e-14)
    assert any("dilute" in w for w in report.warnings)


def test_regime_report_width_mismatch():
    env = tg.GasEnvironment(m_g=1.0, T=10.0, n_g=1e-4, sigma_g=10.0)
    report = tg.regime_report(env, tg.Tracer(1.0), 3.0, t=1000.0)
    assert report.width_match_residual > 1e-6
    assert any("width matching" in w for w in report.warnings)


def test_colliding_momentum_pdf_shape():
    env = small_env(T=0.7, m_g=2.0)
    assert tg.colliding_momentum_pdf(env, 0.0) == 0.0
    total, _ = quad(lambda p: tg.colliding_momentum_pdf(env, p), -60, 60, epsabs=1e-12)
    assert total == pytest.approx(1.0, abs=1e-10)
    m2, _ = quad(lambda p: p * p * tg.colliding_momentum_pdf(env, p), -60, 60, epsabs=1e-12)
    assert m2 == pytest.approx(2.0 * 2.0 * 0.7, abs=1e-8)


def test_colliding_momentum_pdf_peaks():
    # maxima of |p| e^{-p^2/2 m_g k_B T} sit at +-sqrt(m_g k_B T)
    env = small_env(T=0.8, m_g=1.5)
    p_peak = math.sqrt(1.5 * 0.8)
    grid = np.linspace(0.01, 5.0, 20000)
    values = tg.colliding_momentum_pdf(env, grid)
    assert grid[np.argmax(values)] == pytest.approx(p_peak, abs=1e-3)


def test_colliding_position_pdf_values():
    env = tg.GasEnvironment(m_g=1.0, T=0.5, n_g=0.01, sigma_g=10.0)
    assert tg.colliding_position_pdf(env, 1.0, 0.0) == pytest.approx(
        POSITION_PDF_AT_ZERO, rel=1e-13
    )
    total, _ = quad(lambda x: tg.colliding_position_pdf(env, 1.0, x), -15, 15, epsabs=1e-12)
    assert total == pytest.approx(1.0, abs=1e-8)
    assert tg.colliding_position_pdf(env, 1.0, 0.7) == tg.colliding_position_pdf(env, 1.0, -0.7)


def test_sampler_satisfies_collision_condition():
    env = light_gas_env(temperature=0.5)
    rng = tg.worker_streams(123, 1)[0]
    t = 20.0
    x_g, p_g = tg.sample_collisions(env, t, 100000, rng)
    assert np.all(np.sign(x_g) == -np.sign(p_g))
    flight = -x_g * env.m_g / p_g
    assert np.all(flight > 0.0)
    assert np.all(flight < t)


def test_sampler_momentum_moment():
    env = light_gas_env(temperature=0.5)
    rng = tg.worker_streams(7, 1)[0]
    n = 100000
    _, p_g = tg.sample_collisions(env, 20.0, n, rng)
    expected = 2.0 * env.m_g * env.T
    se = np.std(p_g**2, ddof=1) / math.sqrt(n)
    assert abs(np.mean(p_g**2) - expected) < 3 * se


def _ks_statistic(samples, cdf_grid, cdf_values):
    samples = np.sort(samples)
    cdf = np.interp(samples, cdf_grid, cdf_values)
    n = samples.size
    upper = np.max(np.arange(1, n + 1) / n - cdf)
    lower = np.max(cdf - np.arange(0, n) / n)
    return max(upper, lower)


def test_sampler_position_marginal():
    env = light_gas_env(temperature=0.5)
    rng = tg.worker_streams(99, 1)[0]
    t = 20.0
    n = 100000
    x_g, _ = tg.sample_collisions(env, t, n, rng)
    # quadrature CDF of |x_g| under the folded colliding-position density
    grid = np.linspace(0.0, np.abs(x_g).max() * 1.05, 4000)
    pdf = 2.0 * tg.colliding_position_pdf(env, t, grid)
    cdf = np.concatenate([[0.0], np.cumsum((pdf[1:] + pdf[:-1]) / 2.0 * np.diff(grid))])
    cdf /= cdf[-1]
    stat = _ks_statistic(np.abs(x_g), grid, cdf)
    assert stat < 1.6276 / math.sqrt(n)  # 1% critical value


def test_sampler_momentum_marginal():
    env = light_gas_env(temperature=0.5)
    rng = tg.worker_streams(41, 1)[0]
    n = 100000
    _, p_g = tg.sample_collisions(env, 20.0, n, rng)
    grid = np.linspace(0.0, np.abs(p_g).max() * 1.05, 4000)
    pdf = 2.0 * tg.colliding_momentum_pdf(env, grid)
    cdf = np.concatenate([[0.0], np.cumsum((pdf[1:] + pdf[:-1]) / 2.0 * np.diff(grid))])
    cdf /= cdf[-1]
    stat = _ks_statistic(np.abs(p_g), grid, cdf)
    assert stat < 1.6276 / math.sqrt(n)


def test_expected_collision_count_matches_rate():
    env = small_env(T=0.7, m_g=2.0, n_g=0.03)
    t = 5.0
    expected, _ = quad(
        lambda p: env.n_g * tg.maxwell_pdf(env, p) * abs(p) * t / env.m_g,
        -60,
        60,
        epsabs=1e-13,
    )
    assert expected == pytest.approx(tg.collision_rate(env) * t, rel=1e-8)


def test_sampler_determinism():
    env = light_gas_env(temperature=0.5)
    a = tg.sample_collisions(env, 20.0, 1000, tg.worker_streams(5, 2)[0])
    b = tg.sample_collisions(env, 20.0, 1000, tg.worker_streams(5, 2)[0])
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
    # distinct worker streams, distinct draws
    c = tg.sample_collisions(env, 20.0, 1000, tg.worker_streams(5, 2)[1])
    assert not np.array_equal(a[0], c[0])


def test_single_sample_wrapper():
    env = light_gas_env(temperature=0.5)
    rng = tg.worker_streams(5, 1)[0]
    sample = tg.sample_collision(env, 20.0, rng)
    assert isinstance(sample, tg.CollisionSample)
    assert np.sign(sample.x_g) == -np.sign(sample.p_g)
