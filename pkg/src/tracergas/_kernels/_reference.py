"""Pure numpy reference implementations of the hot phase-space kernels.

Each kernel evaluates the three-term cat-state Wigner density

    W(x, p) = [g_a + g_b + 2 c g_x cos(arg)] / (pi hbar)

with Gaussian envelopes g_a, g_b on the branch centers, g_x on the midpoint
and the oscillation argument

    arg = phi + (x_m p_d - p_m x_d) / (2 hbar)
          + x_d (p_m - p) / hbar - p_d (x_m - x) / hbar.

The compiled backend (tracergas._kernels._fast) implements the same three
entry points with identical semantics.
"""

from __future__ import annotations

import numpy as np

# cap on temporary array size when averaging many cats over many nodes
_CHUNK_ELEMENTS = 4_000_000


def _wigner(xq, pq, xa, pa, xb, pb, c, phi, sigma, hbar):
    x_m = 0.5 * (xa + xb)
    p_m = 0.5 * (pa + pb)
    x_d = xa - xb
    p_d = pa - pb
    inv_s2 = 1.0 / (sigma * sigma)
    s2_h2 = (sigma * sigma) / (hbar * hbar)
    g_a = np.exp(-((xq - xa) ** 2) * inv_s2 - s2_h2 * (pq - pa) ** 2)
    g_b = np.exp(-((xq - xb) ** 2) * inv_s2 - s2_h2 * (pq - pb) ** 2)
    g_x = np.exp(-((xq - x_m) ** 2) * inv_s2 - s2_h2 * (pq - p_m) ** 2)
    arg = (
        phi
        + (x_m * p_d - p_m * x_d) / (2.0 * hbar)
        + x_d * (p_m - pq) / hbar
        - p_d * (x_m - xq) / hbar
    )
    return (g_a + g_b + 2.0 * c * g_x * np.cos(arg)) / (np.pi * hbar)


def wigner_on_points(xq, pq, xa, pa, xb, pb, c, phi, sigma, hbar):
    """One cat evaluated on arrays of phase-space points; returns shape of xq."""
    return _wigner(
        np.asarray(xq, float), np.asarray(pq, float), xa, pa, xb, pb, c, phi, sigma, hbar
    )


def wigner_cats_at_point(xq, pq, xa, pa, xb, pb, c, phi, sigma, hbar):
    """Many cats (parameter arrays) evaluated at a single point; returns (n,)."""
    return _wigner(
        float(xq),
        float(pq),
        np.asarray(xa, float),
        np.asarray(pa, float),
        np.asarray(xb, float),
        np.asarray(pb, float),
        np.asarray(c, float),
        np.asarray(phi, float),
        sigma,
        hbar,
    )


def wigner_mean_on_points(xq, pq, xa, pa, xb, pb, c, phi, sigma, hbar):
    """Mean over many cats of W at each point; returns shape of xq.

    Chunked over the cat axis so the (cats x nodes) temporaries stay small.
    """
    shape = np.shape(xq)
    xq = np.asarray(xq, float).ravel()
    pq = np.asarray(pq, float).ravel()
    xa = np.asarray(xa, float)
    pa = np.asarray(pa, float)
    xb = np.asarray(xb, float)
    pb = np.asarray(pb, float)
    c = np.asarray(c, float)
    phi = np.asarray(phi, float)
    n = xa.size
    acc = np.zeros(xq.shape, float)
    block = max(1, _CHUNK_ELEMENTS // max(1, xq.size))
    for lo in range(0, n, block):
        hi = min(n, lo + block)
        sl = slice(lo, hi)
        acc += _wigner(
            xq[None, :],
            pq[None, :],
            xa[sl, None],
            pa[sl, None],
            xb[sl, None],
            pb[sl, None],
            c[sl, None],
            phi[sl, None],
            sigma,
            hbar,
        ).sum(axis=0)
    return (acc / n).reshape(shape)
