"""Thermal gas model: distributions, rates, regime checks and sampling.

Gas particles are Gaussian packets of width sigma_g whose momentum follows
the Maxwell-Boltzmann density.  Conditioning on a collision happening
within a horizon (0, t) reweights the ensemble: fast particles collide
more often, so the colliding-momentum density picks up a |p_g| factor, and
the colliding particle's initial position is uniform over the stretch it
can cover.  The joint sampler draws exactly that law, reproducibly, from
numpy generator streams derived from a root seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erfc

from .collisions import CollisionSample
from .phase_space import Constants, Tracer

# "much smaller than one" threshold for regime warnings
_REGIME_RATIO = 0.1
_COARSE_GRAIN_FACTOR = 10.0
_WIDTH_MATCH_TOL = 1e-6


@dataclass(frozen=True)
class GasEnvironment:
    """Dilute 1D ideal gas: particle mass, temperature, density, packet width."""

    m_g: float
    T: float
    n_g: float
    sigma_g: float
    consts: Constants = field(default_factory=Constants)

    def __post_init__(self):
        for name in ("m_g", "T", "n_g", "sigma_g"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.effective_T <= 0:
            raise ValueError(
                "effective temperature T - hbar^2/(2 m_g k_B sigma_g^2) is not "
                "positive; sigma_g is too small for this temperature"
            )

    @property
    def effective_T(self) -> float:
        c = self.consts
        return self.T - c.hbar**2 / (2.0 * self.m_g * c.k_B * self.sigma_g**2)

    def momentum_scale(self, effective: bool = False) -> float:
        """sqrt(m_g k_B T), the thermal momentum spread (optionally at T_eff)."""
        T = self.effective_T if effective else self.T
        return math.sqrt(self.m_g * self.consts.k_B * T)


@dataclass(frozen=True)
class RegimeReport:
    """Dimensionless validity ratios, the collision time and width matching.

    quantum_width_ratio   hbar / (sigma_g sqrt(m_g k_B T)), small when the
                          gas packets are quasi-classical
    dilution_ratio        n_g sigma_g, small when three-particle collisions
                          are negligible
    degeneracy_ratio      n_g hbar / sqrt(m_g k_B T), small in the
                          high-temperature low-density limit
    collision_time        2 sigma_g sqrt(m_g) / sqrt(k_B T); the model lives
                          on coarser time scales
    width_match_residual  |m sigma^2 - m_g sigma_g^2| / (m_g sigma_g^2)
    """

    quantum_width_ratio: float
    dilution_ratio: float
    degeneracy_ratio: float
    collision_time: float
    width_match_residual: float
    warnings: list[str]


def maxwell_pdf(env: GasEnvironment, p, effective: bool = False):
    """Maxwell-Boltzmann momentum density of a free gas particle.

    mu(p) = exp(-p^2 / 2 m_g k_B T) / sqrt(2 pi m_g k_B T).  With
    effective=True the reduced packet temperature T_eff is used instead;
    the default follows the wide-packet approximation mu_{T_eff} ~ mu_T.
    """
    a = env.momentum_scale(effective) ** 2
    p = np.asarray(p, float)
    return np.exp(-(p**2) / (2.0 * a)) / np.sqrt(2.0 * np.pi * a)


def effective_temperature(env: GasEnvironment) -> float:
    """Temperature left for the packet-center motion, T - hbar^2/(2 m_g k_B sigma_g^2).

    Part of the thermal energy sits in the packets' internal momentum
    spread; what remains drives the center distribution.
    """
    t_eff = env.effective_T
    if t_eff <= 0:
        raise ValueError("effective temperature is not positive (sigma_g too small)")
    return t_eff


def collision_rate(env: GasEnvironment) -> float:
    """Collision rate R = n_g sqrt(2 k_B T / (pi m_g)) for a slow tracer."""
    return env.n_g * math.sqrt(2.0 * env.consts.k_B * env.T / (math.pi * env.m_g))


def regime_report(env: GasEnvironment, tracer: Tracer, sigma: float, t: float) -> RegimeReport:
    """Collect the model's validity ratios over a horizon t; never rejects.

    Warnings fire when a "much smaller than one" ratio exceeds 0.1, when the
    horizon is shorter than ten collision times, or when the tracer/gas
    width matching m sigma^2 = m_g sigma_g^2 is violated.
    """
    if t <= 0:
        raise ValueError("horizon t must be strictly positive")
    c = env.consts
    thermal_p = math.sqrt(env.m_g * c.k_B * env.T)
    r_quantum = c.hbar / (env.sigma_g * thermal_p)
    r_dilution = env.n_g * env.sigma_g
    r_degeneracy = env.n_g * c.hbar / thermal_p
    t_c = 2.0 * env.sigma_g * math.sqrt(env.m_g) / math.sqrt(c.k_B * env.T)
    width_residual = abs(tracer.m * sigma**2 - env.m_g * env.sigma_g**2) / (
        env.m_g * env.sigma_g**2
    )

    warnings = []
    if r_quantum > _REGIME_RATIO:
        warnings.append(
            f"gas packets are not quasi-classical: hbar/(sigma_g sqrt(m_g k_B T)) "
            f"= {r_quantum:.3g} > {_REGIME_RATIO}"
        )
    if r_dilution > _REGIME_RATIO:
        warnings.append(
            f"gas not dilute on the packet scale: n_g sigma_g = {r_dilution:.3g} "
            f"> {_REGIME_RATIO}"
        )
    if r_degeneracy > _REGIME_RATIO:
        warnings.append(
            f"high-temperature/low-density limit strained: n_g hbar/sqrt(m_g k_B T) "
            f"= {r_degeneracy:.3g} > {_REGIME_RATIO}"
        )
    if t < _COARSE_GRAIN_FACTOR * t_c:
        warnings.append(
            f"horizon t = {t:.3g} below {_COARSE_GRAIN_FACTOR:g} collision times "
            f"(t_c = {t_c:.3g}); complete-collision coarse graining is strained"
        )
    if width_residual > _WIDTH_MATCH_TOL:
        warnings.append(
            f"width matching violated: |m sigma^2 - m_g sigma_g^2|/(m_g sigma_g^2) "
            f"= {width_residual:.3g}"
        )
    return RegimeReport(
        quantum_width_ratio=r_quantum,
        dilution_ratio=r_dilution,
        degeneracy_ratio=r_degeneracy,
        collision_time=t_c,
        width_match_residual=width_residual,
        warnings=warnings,
    )


def colliding_momentum_pdf(env: GasEnvironment, p_g, effective: bool = False):
    """Momentum density of a gas particle conditioned on colliding.

    C(p_g) = |p_g| / (2 m_g k_B T) exp(-p_g^2 / 2 m_g k_B T).  Slow
    particles never arrive, hence the |p_g| weight and C(0) = 0.  The law
    does not depend on the horizon length.
    """
    a = env.momentum_scale(effective) ** 2
    p_g = np.asarray(p_g, float)
    return np.abs(p_g) / (2.0 * a) * np.exp(-(p_g**2) / (2.0 * a))


def colliding_position_pdf(env: GasEnvironment, t: float, x_g, effective: bool = False):
    """Initial-position density of a gas particle that collides within (0, t).

    With beta = sqrt(m_g) / (t sqrt(2 k_B T)),

        C(x_g) = beta * Int_{beta |x_g|}^inf e^{-u^2} du
               = beta * (sqrt(pi)/2) * erfc(beta |x_g|),

    an even, normalized density: far-away starting points need ever faster
    (rarer) particles to arrive in time.
    """
    if t <= 0:
        raise ValueError("horizon t must be strictly positive")
    T = env.effective_T if effective else env.T
    beta = math.sqrt(env.m_g) / (t * math.sqrt(2.0 * env.consts.k_B * T))
    x_g = np.asarray(x_g, float)
    return beta * (math.sqrt(math.pi) / 2.0) * erfc(beta * np.abs(x_g))


def worker_streams(seed: int, n_workers: int) -> list[np.random.Generator]:
    """Independent per-worker generator streams from a root seed.

    Stream i is PCG64 seeded with SeedSequence((seed, i)).  Reductions over
    workers must run in worker-index order; then any (seed, worker count)
    pair determines every draw bit-exactly.
    """
    if n_workers < 1:
        raise ValueError("need at least one worker stream")
    return [
        np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, i))))
        for i in range(n_workers)
    ]


def _open_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    """Uniforms on the open interval (0, 1); redraws the measure-zero zeros."""
    u = rng.random(n)
    bad = u == 0.0
    while bad.any():
        u[bad] = rng.random(int(bad.sum()))
        bad = u == 0.0
    return u


def sample_collisions(
    env: GasEnvironment,
    t: float,
    n: int,
    rng: np.random.Generator,
    effective: bool = False,
):
    """Draw n colliding gas packets for the horizon (0, t); returns (x_g, p_g).

    Per sample, in fixed draw order: |p_g| by inverse-CDF Rayleigh with
    scale sqrt(m_g k_B T) (its folded density matches the colliding-momentum
    law), an equiprobable sign, and x_g uniform over the interval of length
    |p_g| t / m_g on the side opposite to the motion, so every sample
    satisfies 0 < -x_g m_g / p_g < t strictly.
    """
    if t <= 0:
        raise ValueError("horizon t must be strictly positive")
    scale = env.momentum_scale(effective)
    u = np.column_stack([_open_unit(rng, n) for _ in range(3)])
    p_mag = scale * np.sqrt(-2.0 * np.log(u[:, 0]))
    sign = np.where(u[:, 1] < 0.5, -1.0, 1.0)
    p_g = sign * p_mag
    x_g = -sign * u[:, 2] * p_mag * t / env.m_g
    return x_g, p_g


def sample_collision(
    env: GasEnvironment,
    t: float,
    rng: np.random.Generator,
    effective: bool = False,
) -> CollisionSample:
    """Draw one colliding gas packet; see sample_collisions for the law."""
    x_g, p_g = sample_collisions(env, t, 1, rng, effective)
    return CollisionSample(float(x_g[0]), float(p_g[0]))
