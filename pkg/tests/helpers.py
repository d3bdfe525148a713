"""Shared test fixtures: reference states and independent numerical oracles.

The frozen constants below were produced before the implementation with
30-digit mpmath arithmetic (direct quadrature of the defining integrals,
root finding on the derivative for the maximum) and are used as expected
values throughout the suite.
"""

import numpy as np
from scipy.integrate import quad

import tracergas as tg

# --- independently computed reference values (mpmath, 30 digits) ---------
SINE_GAUSS_AT_2 = 0.53807950691276842
SINE_GAUSS_AT_20 = 0.050253847187598528

# position decoherence s*G(s) at x_sep=40, m_g=1e-4, hbar=k_B=1
POSITION_DECOHERENCE = {
    0.05: 0.0316608412489662,
    0.2: 0.12267595621239717,
    0.5: 0.28795478554791048,
    1.5: 0.70448613597684025,
}

# momentum decoherence 1 - F(r)/r at r = 0.48 (t=20) and r = 1.2 (t=50)
MOMENTUM_DECOHERENCE_R048 = 0.14033029748978128
MOMENTUM_DECOHERENCE_R120 = 0.57727208632688365

OVERSHOOT_S = 3.003950536537223
OVERSHOOT_MAX = 1.2847494396568465
COHERENCE_AT_S2 = -0.076159013825536838

DEMO_DAMPING = 0.1570134487353091        # alpha=.04, x_sep=15, p_sep=-1.5, sigma=4
DEMO_PHASE_KICK = -9.6523668639053254    # same cat, gas packet (100, -1)
POSITION_CAT_INFO_LOSS = 0.0099481864461602941   # 1-cbar, alpha=1e-4, x_sep=40
MOMENTUM_CAT_INFO_LOSS = 0.0091718368127256717   # 1-cbar, alpha=1e-4, p_sep=2.4

RATE_EXAMPLE = 0.35682482323055422       # n_g=.01, m_g=1e-4, T=.2
COLLISION_TIME_EXAMPLE = 11.31370849898476
REFERENCE_RATE_EXAMPLE = 0.0006684342065682668
PACKET_PEAK_MODULUS = 0.75112554446494248  # pi**-0.25
POSITION_PDF_AT_ZERO = 0.88622692545275801  # sqrt(pi)/2


# --- canonical states ------------------------------------------------------
def demo_cat():
    """Two nearby packets, one moving: the single-collision demo state."""
    return tg.CatState(tg.GaussianPacket(15.0, 0.0, 4.0), tg.GaussianPacket(0.0, 1.5, 4.0))


def position_cat():
    """Wide symmetric position superposition (x = +-20, sigma = 4)."""
    return tg.CatState(tg.GaussianPacket(20.0, 0.0, 4.0), tg.GaussianPacket(-20.0, 0.0, 4.0))


def momentum_cat():
    """Symmetric momentum superposition (p = +-1.2, sigma = 4)."""
    return tg.CatState(tg.GaussianPacket(0.0, 1.2, 4.0), tg.GaussianPacket(0.0, -1.2, 4.0))


def light_gas_env(temperature, alpha=1e-4, mass=1.0, sigma=4.0, density=1e-5):
    """Width-matched gas environment for a tracer of the given packet width."""
    return tg.GasEnvironment(
        m_g=alpha * mass,
        T=temperature,
        n_g=density,
        sigma_g=sigma / np.sqrt(alpha),
    )


# --- quadrature oracles ----------------------------------------------------
def sine_gauss_quadrature(a, tol=1e-13):
    """Adaptive quadrature of the oscillatory integrand, independent of dawsn.

    Integrates e^{-u^2} sin(a u) piecewise over half periods out to u = 9,
    beyond which the envelope is below 1e-35.
    """
    if a == 0.0:
        return 0.0
    period = 2.0 * np.pi / abs(a)
    edges = list(np.arange(0.0, 9.0 + period, period / 2.0))
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        part, _ = quad(lambda u: np.exp(-u * u) * np.sin(a * u), lo, hi, epsabs=tol)
        total += part
    return total


def position_decoherence_quadrature(x_sep, m_g, k_B, T, hbar=1.0):
    """s * Int e^{-u^2} sin(su) du with s = 2 x_sep sqrt(2 m_g k_B T)/hbar."""
    s = 2.0 * abs(x_sep) * np.sqrt(2.0 * m_g * k_B * T) / hbar
    return s * sine_gauss_quadrature(s)


def momentum_decoherence_quadrature(r):
    """1 - (1/r) Int e^{-u^2} sin(2 r u) du, the momentum-cat closed form."""
    if r == 0.0:
        return 0.0
    return 1.0 - sine_gauss_quadrature(2.0 * r) / r
