"""Decoherence engine: closed-form curves and Monte-Carlo phase averaging.

The thermal average of the collision phase kick reduces, for the two
canonical cat geometries, to the Gaussian sine integral

    G(a) = Int_0^inf e^{-u^2} sin(a u) du  =  F(a/2),

with F the Dawson function.  Position superpositions lose, per collision,

    s G(s),            s = 2 x_sep sqrt(2 m_g k_B T) / hbar,

independent of the horizon; momentum superpositions lose

    1 - G(2 r)/r = 1 - F(r)/r,   r = t p_sep sqrt(2 m_g k_B T) / (m hbar),

which grows with the horizon because the phase kick rides on the gas
particle's initial position.  The time average of the position formula
along x_sep(t') = p_sep t'/m reproduces the momentum formula exactly, so
momentum decoherence is nothing but accrued position decoherence.

The Monte-Carlo estimator draws colliding gas packets, applies the exact
single-collision update and reads the averaged post-collision Wigner
density at the initial cat's antinode.  Unlike the closed forms it retains
the information-exchange damping (1 - cbar) and the thermal drift of the
envelopes, both of order alpha; see mc_decoherence.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import dawsn

from . import _kernels
from .collisions import _phase_kick, coherence_damping, elastic_collision
from .phase_space import CatState, Constants, DEFAULT_CONSTANTS, Tracer, cat_descriptors
from .thermal import (
    GasEnvironment,
    collision_rate,
    regime_report,
    sample_collisions,
    worker_streams,
)
from .wigner import QuadratureError, antinode, wigner_at

log = logging.getLogger(__name__)

_QUAD_TOL = 1e-9


@dataclass(frozen=True)
class McEstimate:
    """Monte-Carlo mean with its standard error and provenance."""

    mean: float
    std_error: float
    n_samples: int
    seed: int

    def __post_init__(self):
        if self.std_error < 0:
            raise ValueError("standard error cannot be negative")
        if self.n_samples < 1:
            raise ValueError("need at least one sample")


@dataclass(frozen=True)
class DecoherenceCurve:
    """Sweep output: abscissa values, closed-form curve and MC estimates."""

    abscissa: list
    analytic: list
    mc: list

    def __post_init__(self):
        if not (len(self.abscissa) == len(self.analytic) == len(self.mc)):
            raise ValueError("curve columns must have equal length")


@dataclass(frozen=True)
class MeasurementDecoherence:
    """Information-exchange loss 1 - cbar and its first-order pieces.

    position_term ~ alpha x_sep^2 / sigma^2 and momentum_term ~ alpha
    sigma^2 p_sep^2 / hbar^2 approximate the exact value when both are
    small.
    """

    exact: float
    position_term: float
    momentum_term: float


def sine_gauss_integral(a) -> float:
    """G(a) = Int_0^inf e^{-u^2} sin(a u) du, odd in a; equals dawsn(a/2).

    The closed Dawson form is used in production; the test suite holds it
    against adaptive quadrature of the oscillatory integrand to 1e-12.
    """
    return dawsn(np.asarray(a, float) / 2.0) if np.ndim(a) else float(dawsn(a / 2.0))


def position_coherence_after(s) -> float:
    """Surviving coherence 1 - s G(s) of a position cat after one collision.

    s = 2 x_sep sqrt(2 m_g k_B T) / hbar.  Negative values are physical:
    the averaged fringes have flipped phase.
    """
    if np.any(np.asarray(s) < 0):
        raise ValueError("s must be non-negative")
    return 1.0 - position_decoherence_from_s(s)


def position_decoherence_from_s(s):
    """Decoherence per collision s G(s) as a function of the scale s."""
    s = np.asarray(s, float) if np.ndim(s) else s
    out = s * sine_gauss_integral(s)
    return float(out) if np.ndim(out) == 0 else out


def position_decoherence_per_collision(x_sep, env: GasEnvironment) -> float:
    """Thermally averaged decoherence of a position cat per collision.

    s G(s) with s = 2 x_sep sqrt(2 m_g k_B T)/hbar; for small s this is
    4 m_g k_B T x_sep^2 / hbar^2.  Exceeds one around s ~ 3, where the
    post-collision fringes average to the opposite phase.
    """
    s = position_scale(x_sep, env)
    return position_decoherence_from_s(s)


def position_scale(x_sep, env: GasEnvironment):
    """s = 2 x_sep sqrt(2 m_g k_B T) / hbar for this environment."""
    c = env.consts
    return 2.0 * abs(x_sep) * math.sqrt(2.0 * env.m_g * c.k_B * env.T) / c.hbar


def position_decoherence_rate(x_sep, env: GasEnvironment) -> float:
    """Decoherence rate of a position cat: collision rate times loss per collision."""
    return collision_rate(env) * position_decoherence_per_collision(x_sep, env)


def momentum_scale(p_sep, tracer: Tracer, t: float, env: GasEnvironment):
    """r = t p_sep sqrt(2 m_g k_B T) / (m hbar) for this environment."""
    c = env.consts
    return t * abs(p_sep) * math.sqrt(2.0 * env.m_g * c.k_B * env.T) / (tracer.m * c.hbar)


def momentum_decoherence_per_collision(
    p_sep, tracer: Tracer, t: float, env: GasEnvironment
) -> float:
    """Decoherence of a momentum cat from one collision within (0, t).

    1 - F(r)/r with r = t p_sep sqrt(2 m_g k_B T)/(m hbar); approximately
    (2/3) r^2 when small, i.e. linear in T and quadratic in t, so no
    time-independent rate exists for momentum superpositions.
    """
    if t <= 0:
        raise ValueError("horizon t must be strictly positive")
    r = momentum_scale(p_sep, tracer, t, env)
    if r < 1e-4:
        # series: avoids 0/0 at r = 0, error O(r^6)
        return 2.0 * r**2 / 3.0 - 4.0 * r**4 / 15.0
    return 1.0 - float(dawsn(r)) / r


def time_averaged_position_decoherence(
    p_sep, tracer: Tracer, t: float, env: GasEnvironment
) -> float:
    """Average position decoherence while x_sep grows as p_sep t'/m.

    (1/t) Int_0^t s(t') G(s(t')) dt' by adaptive quadrature; equal to
    momentum_decoherence_per_collision identically, which is the statement
    that momentum decoherence is accrued position decoherence.
    """
    if t <= 0:
        raise ValueError("horizon t must be strictly positive")

    def integrand(tp):
        return position_decoherence_per_collision(p_sep * tp / tracer.m, env)

    val, err = quad(integrand, 0.0, t, epsabs=_QUAD_TOL * t, epsrel=1e-10, limit=200)
    if err > 1e-7 * max(1.0, abs(val)):
        raise QuadratureError(f"time average did not converge: error estimate {err:g}")
    return val / t


def measurement_decoherence(
    desc, sigma, alpha, consts: Constants = DEFAULT_CONSTANTS
) -> MeasurementDecoherence:
    """Information-exchange decoherence 1 - cbar with first-order pieces.

    The exact value comes from the damping factor; the reported terms
    alpha x_sep^2/sigma^2 and alpha sigma^2 p_sep^2/hbar^2 are the small-
    alpha approximations for the two cat geometries.
    """
    exact = 1.0 - float(coherence_damping(desc, sigma, alpha, consts))
    return MeasurementDecoherence(
        exact=exact,
        position_term=alpha * desc.x_sep**2 / sigma**2,
        momentum_term=alpha * sigma**2 * desc.p_sep**2 / consts.hbar**2,
    )


def _collide_batch(cat: CatState, x_g, p_g, alpha, hbar):
    """Vectorized single-collision update; returns per-sample cat parameters."""
    desc = cat_descriptors(cat)
    _, _, xa, pa = elastic_collision(x_g, p_g, cat.a.x, cat.a.p, alpha)
    _, _, xb, pb = elastic_collision(x_g, p_g, cat.b.x, cat.b.p, alpha)
    cbar = float(coherence_damping(desc, cat.sigma, alpha, Constants(hbar=hbar)))
    phi = cat.phi + _phase_kick(desc, x_g, p_g, alpha, hbar)
    c = np.full_like(np.asarray(x_g, float), cat.c * cbar)
    return xa, pa, xb, pb, c, phi


def mc_decoherence(
    cat: CatState,
    env: GasEnvironment,
    tracer: Tracer,
    t: float,
    n_samples: int,
    seed: int,
    estimator: str = "wigner",
    n_workers: int = 1,
) -> McEstimate:
    """Monte-Carlo decoherence per collision over the horizon (0, t).

    Draws colliding gas packets, applies the exact collision update to the
    cat and measures, per sample, the relative loss of the Wigner density
    at the initial cat's antinode: 1 - W_1(x*, p*)/W_0(x*, p*) (estimator
    "wigner").  Collision timing never appears explicitly; it is folded
    into the sampled initial position x_g.

    estimator "phase" instead averages the bare cross-term attenuation
    (cbar/c_0) cos(delta), with delta the sample's shift of the cosine
    argument at the antinode.  The two agree for light gas particles; the
    "wigner" route additionally feels the thermal drift of the envelopes,
    which is real physics but absent from the closed-form curves.

    Deterministic: (seed, n_samples, n_workers) fixes every draw, with
    worker streams derived as SeedSequence((seed, worker)) and reduced in
    worker order.
    """
    if cat.c <= 0:
        raise ValueError("monte-carlo decoherence needs a cat with positive coherence")
    if n_samples < 2:
        raise ValueError("need at least two samples for a standard error")
    if estimator not in ("wigner", "phase"):
        raise ValueError(f"unknown estimator {estimator!r}")

    report = regime_report(env, tracer, cat.sigma, t)
    for message in report.warnings:
        log.warning("regime: %s", message)

    consts = env.consts
    hbar = consts.hbar
    alpha = env.m_g / tracer.m
    x_star, p_star = antinode(cat, consts)
    w0 = wigner_at(cat, x_star, p_star, consts)
    if abs(w0) < 1e-12:
        raise ValueError("degenerate antinode: reference Wigner value below floor")

    streams = worker_streams(seed, n_workers)
    base = n_samples // n_workers
    remainder = n_samples % n_workers
    chunks = []
    for w, rng in enumerate(streams):
        n_w = base + (1 if w < remainder else 0)
        if n_w == 0:
            continue
        x_g, p_g = sample_collisions(env, t, n_w, rng)
        xa, pa, xb, pb, c, phi = _collide_batch(cat, x_g, p_g, alpha, hbar)
        if estimator == "wigner":
            w1 = _kernels.wigner_cats_at_point(
                float(x_star), float(p_star), xa, pa, xb, pb, c, phi, cat.sigma, hbar
            )
            chunks.append(1.0 - w1 / w0)
        else:
            x_m = 0.5 * (xa + xb)
            p_m = 0.5 * (pa + pb)
            x_d = xa - xb
            p_d = pa - pb
            arg = (
                phi
                + (x_m * p_d - p_m * x_d) / (2.0 * hbar)
                + x_d * (p_m - p_star) / hbar
                - p_d * (x_m - x_star) / hbar
            )
            chunks.append(1.0 - (c / cat.c) * np.cos(arg))
    values = np.concatenate(chunks)
    mean = float(values.mean())
    std_error = float(values.std(ddof=1) / math.sqrt(values.size))
    return McEstimate(mean=mean, std_error=std_error, n_samples=n_samples, seed=seed)


def reference_momentum_decoherence_rate(
    p, tracer: Tracer, env: GasEnvironment, cross_section: float
) -> float:
    """Momentum-superposition rate from a constant-cross-section model.

    D = (8 sqrt(2 pi) sigma_cs n_g / 3) (p^2/m^2) sqrt(m_g / k_B T).
    Included for comparison only: it falls with temperature, opposite to
    the phase-averaging result, which is the point of quoting it.
    """
    if cross_section <= 0:
        raise ValueError("scattering cross-section must be strictly positive")
    c = env.consts
    return (
        (8.0 * math.sqrt(2.0 * math.pi) * cross_section * env.n_g / 3.0)
        * (p**2 / tracer.m**2)
        * math.sqrt(env.m_g / (c.k_B * env.T))
    )
