"""Retarded fields sourced by a smeared source in 1+1, and the H_diff diagnostic.

With G_R = Theta(t - t' - |x - x'|) / 2 the field of j = amp * chi(t) F(x) is

    phi(t, x) = amp/2 * int dx' F(x') X(t - |x - x'|),   X(u) = int_{-inf}^u chi,

and its time derivatives replace X by chi and chi'. H_diff is the part of
the field energy, (1/2) int dx ((d_t phi)^2 - phi d_t^2 phi), that is dropped
when the interaction is written through retarded propagators only. For a
source of fixed shape switched on over a time scale T it falls off as 1/T^2
provided the static field of the source is localized, which in 1+1 requires
vanishing charge and dipole moment (see NeutralGaussianProfile).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import quad

from qcc.geometry import SpacetimePoint
from qcc.smearing import (
    GaussianProfile,
    GaussianSwitching,
    NeutralGaussianProfile,
    Pointlike,
    Smearing,
)

log = logging.getLogger(__name__)

SPATIAL_CUTOFF = 12.0


class BoxTooSmallError(RuntimeError):
    """The field does not vanish at the edge of the integration box."""


def _require_smooth(source: Smearing) -> GaussianSwitching:
    if source.dim != 1:
        raise ValueError("sourced fields are implemented in 1+1 only")
    if not isinstance(source.switching, GaussianSwitching):
        raise ValueError(
            "window switchings have distributional time derivatives; "
            "use a smooth (gaussian) switching profile"
        )
    return source.switching


def _profile_nodes(source: Smearing, x, n: int = 48, panels: int = 8):
    """Nodes/weights for int dx' F(x') g(|x - x'|), with a panel cut at x' = x.

    Vectorized over x: returns arrays of shape (len(x), 2 * panels * n).
    """
    sp = source.spatial
    c, w = sp.center[0], sp.width
    lo, hi = c - SPATIAL_CUTOFF * w, c + SPATIAL_CUTOFF * w
    x = np.atleast_1d(np.asarray(x, dtype=float))
    mid = np.clip(x, lo, hi)
    gx, gw = np.polynomial.legendre.leggauss(n)
    frac = np.linspace(0.0, 1.0, panels + 1)
    nodes, weights = [], []
    for a, b in ((np.full_like(mid, lo), mid), (mid, np.full_like(mid, hi))):
        edges = a[:, None] + (b - a)[:, None] * frac  # (nx, panels+1)
        pa, pb = edges[:, :-1, None], edges[:, 1:, None]
        nodes.append((0.5 * (pa + pb) + 0.5 * (pb - pa) * gx).reshape(len(x), -1))
        weights.append((0.5 * (pb - pa) * gw).reshape(len(x), -1))
    nodes = np.concatenate(nodes, axis=1)
    weights = np.concatenate(weights, axis=1)
    return nodes, weights * sp.density(nodes)


def sourced_field(source: Smearing, p: SpacetimePoint) -> float:
    """phi(p) = int dV' G_R(p, x') j(x') for a smoothly switched source in 1+1."""
    chi = _require_smooth(source)
    if p.d != 1:
        raise ValueError("evaluation point must be in 1+1")
    if source.amplitude == 0.0:
        return 0.0
    t, x = p.t, p.x[0]
    start = chi.support[0]

    def retarded_charge(u: float) -> float:
        if u <= start:
            return 0.0
        val, _ = quad(chi, start, u, limit=200, epsabs=1e-13, epsrel=1e-12)
        return val

    if isinstance(source.spatial, Pointlike):
        return 0.5 * source.amplitude * retarded_charge(t - abs(x - source.spatial.position[0]))
    nodes, weights = _profile_nodes(source, x)
    nodes, weights = nodes[0], weights[0]
    vals = np.array([retarded_charge(t - abs(x - xp)) for xp in nodes])
    return 0.5 * source.amplitude * float(np.sum(weights * vals))


@dataclass(frozen=True)
class HdiffResult:
    value: float
    timescale: float
    t_eval: float
    box: float  # half-width of the spatial integration box around the source


def _field_and_derivatives(source: Smearing, chi: GaussianSwitching, t: float, xs: np.ndarray):
    """phi, d_t phi, d_t^2 phi on the grid xs (vectorized over xs)."""
    amp = 0.5 * source.amplitude
    sp = source.spatial
    if isinstance(sp, Pointlike):
        u = t - np.abs(xs - sp.position[0])
        return amp * chi.antiderivative(u), amp * chi(u), amp * chi.derivative(u)
    phi = np.empty_like(xs)
    dphi = np.empty_like(xs)
    ddphi = np.empty_like(xs)
    for sl in np.array_split(np.arange(len(xs)), max(1, len(xs) // 256)):
        nodes, weights = _profile_nodes(source, xs[sl])
        u = t - np.abs(xs[sl, None] - nodes)
        phi[sl] = amp * np.sum(weights * chi.antiderivative(u), axis=1)
        dphi[sl] = amp * np.sum(weights * chi(u), axis=1)
        ddphi[sl] = amp * np.sum(weights * chi.derivative(u), axis=1)
    return phi, dphi, ddphi


def _x_grid(center: float, near: float, box: float, far_panel: float, n: int = 32):
    near_edges = np.linspace(center - near, center + near, 17)
    n_far = max(1, int(np.ceil((box - near) / far_panel)))
    right = np.linspace(center + near, center + box, n_far + 1)
    left = np.linspace(center - box, center - near, n_far + 1)
    edges = np.unique(np.concatenate([left, near_edges, right]))
    gx, gw = np.polynomial.legendre.leggauss(n)
    a, b = edges[:-1, None], edges[1:, None]
    nodes = (0.5 * (a + b) + 0.5 * (b - a) * gx).ravel()
    weights = (0.5 * (b - a) * gw).ravel()
    return nodes, weights


def hdiff(
    timescale: float,
    source: Smearing,
    phase: float = 0.0,
    box: float | None = None,
    boundary_tol: float = 1e-8,
) -> HdiffResult:
    """H_diff for `source` with its gaussian switching stretched to width `timescale`.

    The evaluation time is center + phase * timescale, i.e. a fixed point of
    the switching profile, so that results at different time scales compare
    the same stage of the switching.
    """
    chi0 = _require_smooth(source)
    if not timescale > 0:
        raise ValueError("timescale must be positive")
    chi = GaussianSwitching(chi0.center, timescale)
    src = replace(source, switching=chi)
    t_eval = chi.center + phase * timescale
    sp = src.spatial
    xc = sp.center[0]
    spread = 0.0 if isinstance(sp, Pointlike) else SPATIAL_CUTOFF * sp.width
    causal_radius = max(t_eval - chi.support[0], 0.0) + spread
    if box is None:
        box = causal_radius + 1.0
    if src.amplitude == 0.0:
        return HdiffResult(0.0, timescale, t_eval, box)
    near = max(spread, 1.0)
    if box <= near:
        raise BoxTooSmallError(f"box {box} does not even cover the source (needs > {near})")
    xs, ws = _x_grid(xc, near, box, far_panel=max(timescale / 2, near))
    phi, dphi, ddphi = _field_and_derivatives(src, chi, t_eval, xs)
    edge = np.array([xc - box, xc + box])
    e_phi, e_dphi, _ = _field_and_derivatives(src, chi, t_eval, edge)
    scale = max(np.max(np.abs(phi)), np.max(np.abs(dphi)), 1e-300)
    if max(np.max(np.abs(e_phi)), np.max(np.abs(e_dphi))) > boundary_tol * scale:
        raise BoxTooSmallError(
            f"field is still {np.max(np.abs(e_phi)) / scale:.2e} of its peak at the box edge "
            f"(box={box}, causal radius={causal_radius})"
        )
    value = 0.5 * float(np.sum(ws * (dphi**2 - phi * ddphi)))
    log.debug("hdiff T=%g t=%g box=%g value=%g", timescale, t_eval, box, value)
    return HdiffResult(value, timescale, t_eval, box)


def neutral_source(width: float = 1.0, center: float = 0.0, t_center: float = 0.0, amplitude: float = 1.0) -> Smearing:
    """Charge- and dipole-free source with a gaussian switching (width set by hdiff)."""
    return Smearing(NeutralGaussianProfile((center,), width), GaussianSwitching(t_center, 1.0), amplitude)


__all__ = [
    "BoxTooSmallError",
    "GaussianProfile",
    "HdiffResult",
    "hdiff",
    "neutral_source",
    "sourced_field",
]
