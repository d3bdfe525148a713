"""Single hard-core collision between the tracer and one gas packet.

When the packet widths satisfy m sigma^2 = m_g sigma_g^2 a collision maps
Gaussian packets to Gaussian packets, so its action on a cat state is
purely algebraic: the branch centers transform through the classical
elastic-collision relations, the coherence magnitude is damped by a factor
cbar <= 1 (the gas particle acquires which-branch information) and the
relative phase picks up a kick phibar that depends on the gas particle's
initial position and momentum.  The combination

    phi + (x_mean p_sep - p_mean x_sep) / (2 hbar)

is left invariant by a collision; the phase kick merely relocates the
interference fringes together with the envelope.

Functions here are pure and numpy-friendly: center kinematics broadcast
over arrays of gas-particle coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .phase_space import (
    CatState,
    CatDescriptors,
    Constants,
    DEFAULT_CONSTANTS,
    GaussianPacket,
    cat_descriptors,
)


@dataclass(frozen=True)
class CollisionSample:
    """Initial center (x_g, p_g) of one colliding gas packet."""

    x_g: float
    p_g: float


def elastic_collision(x_g, p_g, x, p, alpha):
    """Post-collision centers (x_g', p_g', x', p') for mass ratio alpha = m_g/m.

    These are the classical 1D hard-core relations; total momentum and
    kinetic energy are conserved.  alpha = 1 swaps the two phase-space
    points exactly, alpha -> 0 leaves x untouched while p gains 2 p_g.
    Broadcasts over array inputs.
    """
    if np.any(np.asarray(alpha) < 0):
        raise ValueError("mass ratio alpha must be non-negative")
    denom = 1.0 + alpha
    x_g_new = (2.0 * x - (1.0 - alpha) * x_g) / denom
    p_g_new = (2.0 * alpha * p - (1.0 - alpha) * p_g) / denom
    x_new = (2.0 * alpha * x_g + (1.0 - alpha) * x) / denom
    p_new = (2.0 * p_g + (1.0 - alpha) * p) / denom
    return x_g_new, p_g_new, x_new, p_new


def coherence_damping(desc: CatDescriptors, sigma, alpha, consts: Constants = DEFAULT_CONSTANTS):
    """Factor cbar in (0, 1] multiplying the coherence after one collision.

    cbar = exp[-alpha/(1+alpha)^2 (x_sep^2/sigma^2 + sigma^2 p_sep^2/hbar^2)]

    Independent of the gas particle's coordinates: it quantifies only the
    which-branch information carried away by the collision partner.
    """
    if not sigma > 0:
        raise ValueError("sigma must be strictly positive")
    hbar = consts.hbar
    expo = (alpha / (1.0 + alpha) ** 2) * (
        desc.x_sep**2 / sigma**2 + sigma**2 * desc.p_sep**2 / hbar**2
    )
    return np.exp(-expo)


def _phase_kick(desc: CatDescriptors, x_g, p_g, alpha, hbar):
    # shared by collision_phase and the batched Monte-Carlo path
    num = (
        2.0 * alpha * (desc.x_mean * desc.p_sep - desc.x_sep * desc.p_mean)
        + (1.0 - alpha) * p_g * desc.x_sep
        - alpha * (1.0 - alpha) * x_g * desc.p_sep
    )
    return num / ((1.0 + alpha) ** 2 * hbar)


def collision_phase(
    desc: CatDescriptors,
    sample: CollisionSample,
    alpha,
    consts: Constants = DEFAULT_CONSTANTS,
):
    """Relative phase kick phibar added to a cat state by one collision.

    phibar = [2 alpha (x_mean p_sep - x_sep p_mean) + (1-alpha) p_g x_sep
              - alpha (1-alpha) x_g p_sep] / [(1+alpha)^2 hbar]

    Depends on the gas particle's (x_g, p_g); in a thermal gas this phase is
    random, which is the phase-averaging route to decoherence.
    """
    return _phase_kick(desc, sample.x_g, sample.p_g, alpha, consts.hbar)


def collide_cat(
    cat: CatState,
    sample: CollisionSample,
    alpha,
    consts: Constants = DEFAULT_CONSTANTS,
) -> CatState:
    """Cat state after one collision with a gas packet at (x_g, p_g).

    Each branch center passes through the elastic relations with the same
    gas coordinates, c is multiplied by the damping factor and phi is
    shifted by the collision phase.  Width matching (m sigma^2 = m_g
    sigma_g^2) is assumed; the regime checker reports violations.
    """
    desc = cat_descriptors(cat)
    _, _, xa, pa = elastic_collision(sample.x_g, sample.p_g, cat.a.x, cat.a.p, alpha)
    _, _, xb, pb = elastic_collision(sample.x_g, sample.p_g, cat.b.x, cat.b.p, alpha)
    cbar = coherence_damping(desc, cat.sigma, alpha, consts)
    phibar = collision_phase(desc, sample, alpha, consts)
    return CatState(
        GaussianPacket(float(xa), float(pa), cat.sigma),
        GaussianPacket(float(xb), float(pb), cat.sigma),
        c=float(cat.c * cbar),
        phi=float(cat.phi + phibar),
    )


def phase_invariant(cat: CatState, consts: Constants = DEFAULT_CONSTANTS) -> float:
    """Collision invariant phi + (x_mean p_sep - p_mean x_sep) / (2 hbar)."""
    d = cat_descriptors(cat)
    return cat.phi + (d.x_mean * d.p_sep - d.p_mean * d.x_sep) / (2.0 * consts.hbar)
