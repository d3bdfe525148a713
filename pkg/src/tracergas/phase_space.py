"""Phase-space primitives: Gaussian packets, cat states and free drift.

All states are minimum uncertainty Gaussians of position width sigma (and
momentum width hbar/sigma).  A cat state is an unnormalized superposition
of two such packets sharing sigma; the absolute norm is never needed
because every decoherence measure in this package is a ratio.  Free
evolution transports packet centers only (x -> x + p t / m); envelope
spreading is deliberately not modeled.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class Constants:
    """Physical constants, hbar and k_B, both 1 by default."""

    hbar: float = 1.0
    k_B: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and self.k_B > 0):
            raise ValueError("hbar and k_B must be strictly positive")


DEFAULT_CONSTANTS = Constants()


@dataclass(frozen=True)
class Tracer:
    """The distinguished particle whose coherence is tracked."""

    m: float

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError("tracer mass must be strictly positive")


@dataclass(frozen=True)
class GaussianPacket:
    """Minimum uncertainty wave packet with center (x, p) and width sigma."""

    x: float
    p: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("packet width sigma must be strictly positive")


@dataclass(frozen=True)
class CatState:
    """Unnormalized two-packet superposition.

    c in [0, 1] is the magnitude of the off-diagonal (coherence) terms and
    phi their relative phase.  A fresh superposition has c = 1, phi = 0.
    Both packets must share the same width.
    """

    a: GaussianPacket
    b: GaussianPacket
    c: float = 1.0
    phi: float = 0.0

    def __post_init__(self):
        if self.a.sigma != self.b.sigma:
            raise ValueError("cat state branches must share the same width sigma")
        if not 0.0 <= self.c <= 1.0:
            raise ValueError("coherence magnitude c must lie in [0, 1]")

    @property
    def sigma(self) -> float:
        return self.a.sigma

    @property
    def is_single_packet(self) -> bool:
        """True for the coincident-branch, c == 0 single-packet convention."""
        return self.a == self.b and self.c == 0.0


def single_packet(packet: GaussianPacket) -> CatState:
    """Represent a lone packet as a degenerate cat (b == a, c = 0).

    Phase-space evaluators halve the doubled envelope for such states, so
    one code path covers both genuine cats and single packets.
    """
    return CatState(packet, packet, c=0.0, phi=0.0)


@dataclass(frozen=True)
class CatDescriptors:
    """Mean and difference of the two branch centers.

    x_mean = (x_a + x_b)/2, x_sep = x_a - x_b, and likewise for momenta.
    """

    x_mean: float
    x_sep: float
    p_mean: float
    p_sep: float


def packet_wavefunction(packet: GaussianPacket, xq, consts: Constants = DEFAULT_CONSTANTS):
    """Position-representation amplitude of a Gaussian packet at xq.

    psi(xq) = e^{-i x p / 2 hbar} / sqrt(sqrt(pi) sigma)
              * e^{i xq p / hbar} * e^{-(x - xq)^2 / 2 sigma^2}

    |psi|^2 integrates to one over xq.  Accepts scalars or arrays.
    """
    x, p, sigma = packet.x, packet.p, packet.sigma
    hbar = consts.hbar
    norm = 1.0 / np.sqrt(np.sqrt(np.pi) * sigma)
    static = np.exp(-1j * x * p / (2.0 * hbar))
    return norm * static * np.exp(1j * np.asarray(xq) * p / hbar) * np.exp(
        -((x - np.asarray(xq)) ** 2) / (2.0 * sigma**2)
    )


def cat_descriptors(cat: CatState) -> CatDescriptors:
    """Mean/difference descriptors of the two branch centers."""
    return CatDescriptors(
        x_mean=(cat.a.x + cat.b.x) / 2.0,
        x_sep=cat.a.x - cat.b.x,
        p_mean=(cat.a.p + cat.b.p) / 2.0,
        p_sep=cat.a.p - cat.b.p,
    )


def free_evolve_cat(cat: CatState, t: float, tracer: Tracer) -> CatState:
    """Drift both packet centers by p t / m; c, phi and sigma are untouched.

    The coherence structure of a cat does not change under free evolution,
    so only the centers move.  Spreading of the envelopes is out of scope.
    """
    if t < 0:
        raise ValueError("evolution time must be non-negative")
    a = replace(cat.a, x=cat.a.x + cat.a.p * t / tracer.m)
    b = replace(cat.b, x=cat.b.x + cat.b.p * t / tracer.m)
    return CatState(a, b, c=cat.c, phi=cat.phi)
