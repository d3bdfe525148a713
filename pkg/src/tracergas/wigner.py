"""Cat-state Wigner functions: evaluation, grids, shear, mixtures, metric.

The Wigner density of a two-packet superposition is two Gaussian envelopes
on the branch centers plus an oscillatory cross term on their midpoint:

    W(x, p) = (1/pi hbar) [ g_a + g_b + 2 c g_x cos(arg) ],
    arg = phi + (x_m p_d - p_m x_d)/(2 hbar)
          + x_d (p_m - p)/hbar - p_d (x_m - x)/hbar.

Interference lives in the cross term; decoherence shows up as the fading
(or phase inversion) of its oscillations.  wigner_from_wavefunction
reproduces the same density by direct numerical quadrature of the
wavefunction transform and serves as the independent check on the closed
form.  Single packets use the coincident-branch c = 0 convention; the
doubled envelope is halved on evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .phase_space import (
    CatState,
    Constants,
    DEFAULT_CONSTANTS,
    Tracer,
    cat_descriptors,
    packet_wavefunction,
)
from .collisions import phase_invariant

# refusal threshold for reference values in the interference metric
_REF_FLOOR = 1e-12

_QUAD_TOL = 1e-9
_QUAD_PANEL_ORDER = 16
_QUAD_LEVELS = (8, 16, 32, 64, 128, 256, 512)  # panels per level


class QuadratureError(RuntimeError):
    """Raised when a numerical integral fails to reach its tolerance."""


@dataclass(frozen=True)
class GridSpec:
    """Rectangular phase-space lattice, inclusive bounds, n_x by n_p nodes."""

    x_min: float
    x_max: float
    p_min: float
    p_max: float
    n_x: int
    n_p: int

    def __post_init__(self):
        bounds = (self.x_min, self.x_max, self.p_min, self.p_max)
        if not all(math.isfinite(v) for v in bounds):
            raise ValueError("grid bounds must be finite")
        if not (self.x_max > self.x_min and self.p_max > self.p_min):
            raise ValueError("grid bounds must satisfy max > min on both axes")
        if self.n_x < 2 or self.n_p < 2:
            raise ValueError("grid needs at least 2 nodes per axis")

    def x_axis(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_x)

    def p_axis(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_p)


@dataclass(frozen=True)
class WignerGrid:
    """Wigner density sampled on a GridSpec; values[i, j] = W(x_i, p_j)."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.spec.n_x, self.spec.n_p):
            raise ValueError("values shape does not match the grid spec")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("grid values must be finite")


def wigner_at(cat: CatState, xq, pq, consts: Constants = DEFAULT_CONSTANTS):
    """Wigner density of a cat state at (xq, pq); scalars or arrays.

    Coincident-branch c = 0 cats evaluate to the single-packet density
    (the doubled envelope is halved).
    """
    xq_b, pq_b = np.broadcast_arrays(np.asarray(xq, float), np.asarray(pq, float))
    w = _kernels.wigner_on_points(
        np.ascontiguousarray(xq_b).ravel(),
        np.ascontiguousarray(pq_b).ravel(),
        cat.a.x,
        cat.a.p,
        cat.b.x,
        cat.b.p,
        cat.c,
        cat.phi,
        cat.sigma,
        consts.hbar,
    ).reshape(xq_b.shape)
    if cat.is_single_packet:
        w = 0.5 * w
    if w.shape == ():
        return float(w)
    return w


def cat_evaluator(cat: CatState, consts: Constants = DEFAULT_CONSTANTS):
    """Bind wigner_at to a cat, giving a plain (x, p) -> W callable."""
    return lambda xq, pq: wigner_at(cat, xq, pq, consts)


def wigner_grid(cat: CatState, spec: GridSpec, consts: Constants = DEFAULT_CONSTANTS) -> WignerGrid:
    """Evaluate the cat-state Wigner density on every lattice node."""
    xg, pg = np.meshgrid(spec.x_axis(), spec.p_axis(), indexing="ij")
    values = wigner_at(cat, xg, pg, consts)
    return WignerGrid(spec, values)


def free_evolve_wigner(cat: CatState, t: float, tracer: Tracer, consts: Constants = DEFAULT_CONSTANTS):
    """Evaluator for the freely evolved Wigner density, W_t(x, p) = W(x - p t/m, p).

    Free evolution shears phase space along x; the oscillation strength is
    untouched, so this is the exact interaction-picture transport.
    """
    if t < 0:
        raise ValueError("evolution time must be non-negative")
    m = tracer.m

    def evaluator(xq, pq):
        xq_b, pq_b = np.broadcast_arrays(np.asarray(xq, float), np.asarray(pq, float))
        return wigner_at(cat, xq_b - pq_b * t / m, pq_b, consts)

    return evaluator


def mixture_wigner(w0, w1, rate: float, t: float):
    """Convex short-time mixture (1 - R t) w0 + R t w1 as an evaluator.

    Valid only while R t, the collision probability within (0, t), stays in
    [0, 1]; outside that range the short-time expansion is meaningless.
    """
    weight = rate * t
    if not 0.0 <= weight <= 1.0:
        raise ValueError(f"R*t = {weight} outside [0, 1]; short-time mixture invalid")

    def evaluator(xq, pq):
        return (1.0 - weight) * np.asarray(w0(xq, pq)) + weight * np.asarray(w1(xq, pq))

    return evaluator


def _branch_products(cat: CatState, x: float, y: np.ndarray, consts: Constants):
    """Integrand <x-y| rho |x+y> of the transform, cross terms weighted c e^{+-i phi}."""
    a_plus = packet_wavefunction(cat.a, x + y, consts)
    a_minus = packet_wavefunction(cat.a, x - y, consts)
    b_plus = packet_wavefunction(cat.b, x + y, consts)
    b_minus = packet_wavefunction(cat.b, x - y, consts)
    cross = cat.c * (
        np.exp(1j * cat.phi) * a_plus * np.conj(b_minus)
        + np.exp(-1j * cat.phi) * b_plus * np.conj(a_minus)
    )
    return a_plus * np.conj(a_minus) + b_plus * np.conj(b_minus) + cross


def _transform_on_level(cat, x_axis, p_axis, nodes, weights, consts):
    hbar = consts.hbar
    # shared oscillation matrix e^{-2 i p y / hbar}, (n_p, n_nodes)
    osc = np.exp(-2j * np.outer(p_axis, nodes) / hbar) * weights
    out = np.empty((x_axis.size, p_axis.size))
    for i, x in enumerate(x_axis):
        f = _branch_products(cat, float(x), nodes, consts)
        out[i, :] = (osc @ f).real
    return out / (np.pi * hbar)


def wigner_from_wavefunction(
    cat: CatState, spec: GridSpec, consts: Constants = DEFAULT_CONSTANTS
) -> WignerGrid:
    """Wigner density by direct quadrature of the wavefunction transform.

    Computes W(x, p) = (1/pi hbar) Int dy e^{-2ipy/hbar} <x-y|rho|x+y> with
    composite Gauss-Legendre panels on y in [-10 sigma, 10 sigma], doubling
    the node count until successive levels agree to 1e-9 everywhere.  This
    is the independent cross-check for wigner_at / wigner_grid and shares
    no code with the closed-form evaluation.
    """
    x_axis = spec.x_axis()
    p_axis = spec.p_axis()
    sigma = cat.sigma
    dx = (spec.x_max - spec.x_min) / (spec.n_x - 1)
    dp = (spec.p_max - spec.p_min) / (spec.n_p - 1)
    if dx > sigma / 8 or dp > consts.hbar / sigma / 8:
        raise ValueError("grid too coarse: need at least 8 nodes per packet width")

    half_width = 10.0 * sigma
    base_x, base_w = np.polynomial.legendre.leggauss(_QUAD_PANEL_ORDER)

    prev = None
    for n_panels in _QUAD_LEVELS:
        edges = np.linspace(-half_width, half_width, n_panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        nodes = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
        weights = (half[:, None] * base_w[None, :]).ravel()
        current = _transform_on_level(cat, x_axis, p_axis, nodes, weights, consts)
        if prev is not None and np.max(np.abs(current - prev)) < _QUAD_TOL:
            if cat.is_single_packet:
                current = 0.5 * current
            return WignerGrid(spec, current)
        prev = current
    residual = float(np.max(np.abs(current - prev))) if prev is not None else float("nan")
    raise QuadratureError(
        f"wigner transform did not converge to {_QUAD_TOL:g}; residual {residual:g}"
    )


def antinode(cat: CatState, consts: Constants = DEFAULT_CONSTANTS) -> tuple[float, float]:
    """Phase-space point where the cross term oscillation peaks.

    Starting from the envelope midpoint, steps along the oscillation
    direction (measured in packet widths, sigma and hbar/sigma) to the
    nearest point where the cosine argument is a multiple of 2 pi.  For
    cats symmetric about the origin this is the origin itself.
    """
    d = cat_descriptors(cat)
    hbar = consts.hbar
    sigma = cat.sigma
    inv = phase_invariant(cat, consts)
    # cosine argument in scaled coordinates X=(x-x_m)/sigma, P=(p-p_m) sigma/hbar:
    #   arg = inv + gx X + gp P
    gx = d.p_sep * sigma / hbar
    gp = -d.x_sep / sigma
    norm2 = gx * gx + gp * gp
    if norm2 == 0.0:
        if math.cos(inv) > 1.0 - 1e-12:
            return (d.x_mean, d.p_mean)
        raise ValueError("degenerate antinode: coincident branches with nonzero phase")
    target = 2.0 * math.pi * round(inv / (2.0 * math.pi))
    lam = (target - inv) / norm2
    return (d.x_mean + sigma * lam * gx, d.p_mean + (hbar / sigma) * lam * gp)


def interference_metric(
    w_ref,
    w_test,
    cat0: CatState,
    consts: Constants = DEFAULT_CONSTANTS,
    point: tuple[float, float] | None = None,
) -> float:
    """Relative loss of the Wigner density at the initial cat's antinode.

    Returns 1 - w_test(x*, p*) / w_ref(x*, p*) with (x*, p*) the antinode
    of cat0 (or an explicit point).  Values above one are meaningful: the
    test density oscillates in opposite phase to the reference there.
    """
    if cat0.c <= 0:
        raise ValueError("interference metric needs a cat with positive coherence")
    if point is None:
        point = antinode(cat0, consts)
    ref = float(np.asarray(w_ref(point[0], point[1])))
    if abs(ref) < _REF_FLOOR:
        raise ValueError(f"reference Wigner value {ref:g} below floor {_REF_FLOOR:g}")
    test = float(np.asarray(w_test(point[0], point[1])))
    return 1.0 - test / ref


def write_grid_csv(grid: WignerGrid, path) -> None:
    """Write a grid as CSV with header x,p,w, one node per row, x fastest.

    Rows iterate p in the outer loop and x in the inner loop; floats carry
    17 significant digits so values round-trip exactly.
    """
    x_axis = grid.spec.x_axis()
    p_axis = grid.spec.p_axis()
    with open(path, "w", newline="\n") as fh:
        fh.write("x,p,w\n")
        for j, p in enumerate(p_axis):
            for i, x in enumerate(x_axis):
                fh.write(f"{x:.17g},{p:.17g},{grid.values[i, j]:.17g}\n")


def read_grid_csv(path):
    """Read a grid CSV back as (x, p, w) column arrays."""
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    data = np.atleast_2d(data)
    return data[:, 0], data[:, 1], data[:, 2]
