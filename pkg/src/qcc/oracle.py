"""Independent numerical evaluation of smeared bi-distributions.

The spatial integrals are done first, giving an effective kernel K(tau) of
the time difference tau = t - t' between the receiving and emitting
smearing. The remaining time integrals are evaluated by composite
Gauss-Legendre rules whose panels are cut at every point where the
integrand is not smooth, so the rule converges spectrally; the resolution
is doubled until two successive estimates agree.

Supported spatial profiles: pointlike and gaussian, in 1+1 and 3+1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import ndtr

from qcc.propagators import KernelKind, KernelSpec, SingularKernelError
from qcc.smearing import GaussianProfile, Pointlike, Smearing

Weight = Optional[Callable[[np.ndarray], np.ndarray]]


class OracleConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    value: float
    error: float
    resolution: int


@dataclass(frozen=True)
class _Kernel:
    """Spatially integrated retarded kernel as a function of tau."""

    delta_at: Optional[float]  # pointlike 3+1: weight * delta(tau - delta_at)
    weight: float
    func: Optional[Callable[[np.ndarray], np.ndarray]]
    tau_min: float  # K(tau) = 0 for tau < tau_min
    bumps: tuple[float, ...]  # extra panel cuts in tau


def _spatial_width(s: Smearing) -> float:
    if isinstance(s.spatial, Pointlike):
        return 0.0
    if isinstance(s.spatial, GaussianProfile):
        return s.spatial.width
    raise TypeError(f"unsupported spatial profile {type(s.spatial).__name__}")


def _kernel(sa: Smearing, sb: Smearing) -> _Kernel:
    dim = sa.dim
    d = float(np.linalg.norm(sa.position - sb.position))
    s = math.hypot(_spatial_width(sa), _spatial_width(sb))
    if s == 0.0:
        if dim == 3:
            if d == 0.0:
                raise SingularKernelError("coincident pointlike detectors in 3+1")
            return _Kernel(d, 1 / (4 * math.pi * d), None, d, ())
        return _Kernel(None, 1.0, lambda tau: 0.5 * (tau >= d), d, ())
    cuts = tuple(x for x in (d - 8 * s, d, d + 8 * s) if x > 0)
    if dim == 1:
        # X = x - x' ~ N(d, s^2); K = P(|X| <= tau) / 2
        def k1(tau):
            tau = np.maximum(tau, 0.0)
            return 0.5 * (ndtr((tau - d) / s) - ndtr((-tau - d) / s))

        return _Kernel(None, 1.0, k1, 0.0, cuts)
    norm = 1 / (4 * math.pi * s * math.sqrt(2 * math.pi))

    def k3(tau):
        tau = np.maximum(tau, 0.0)
        g = np.exp(-(tau**2 + d**2) / (2 * s**2))
        if d * d < 1e-12 * s * s:
            return norm * g * 2 * tau / s**2
        return norm * g * 2 * np.sinh(tau * d / s**2) / d

    return _Kernel(None, 1.0, k3, 0.0, cuts)


def _switch_cuts(s: Smearing) -> tuple[float, float]:
    return s.switching.support


def _gl_panels(edges: np.ndarray, n: int):
    """Nodes and weights of an n-point Gauss-Legendre rule on each panel."""
    x, w = np.polynomial.legendre.leggauss(n)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = 0.5 * (hi - lo)
    nodes = (0.5 * (hi + lo) + half * x).ravel()
    weights = (half * w).ravel()
    return nodes, weights


def _panel_edges(lo: float, hi: float, cuts) -> np.ndarray:
    inner = sorted(c for c in cuts if lo < c < hi)
    return np.array([lo, *inner, hi])


def _retarded(sa: Smearing, sb: Smearing, n: int, wa: Weight, wb: Weight) -> complex:
    """Integral of K(t - t') fa(t) fb(t') over the supports of sa, sb."""
    amp = sa.amplitude * sb.amplitude
    a0, a1 = _switch_cuts(sa)
    b0, b1 = _switch_cuts(sb)
    if amp == 0.0 or a1 <= a0 or b1 <= b0:
        return 0.0j
    ker = _kernel(sa, sb)

    def fa(t):
        v = sa.switching(t).astype(complex)
        return v * wa(t) if wa is not None else v

    def fb(t):
        v = sb.switching(t).astype(complex)
        return v * wb(t) if wb is not None else v

    if ker.delta_at is not None:
        L = ker.delta_at
        lo, hi = max(a0, b0 + L), min(a1, b1 + L)
        if hi <= lo:
            return 0.0j
        edges = _panel_edges(lo, hi, [a0, a1, b0 + L, b1 + L])
        t, w = _gl_panels(edges, n)
        return amp * ker.weight * np.sum(w * fa(t) * fb(t - L))

    # outer integral over t, inner over t' <= t - tau_min
    cuts = [b0 + ker.tau_min, b1 + ker.tau_min]
    cuts += [b0 + c for c in ker.bumps] + [b1 + c for c in ker.bumps]
    lo = max(a0, b0 + ker.tau_min)
    if a1 <= lo:
        return 0.0j
    t_nodes, t_w = _gl_panels(_panel_edges(lo, a1, cuts), n)
    # inner panels per outer node: [b0, top] cut at t - bump (clipped, so
    # panels may be empty); same panel count for every node
    top = np.minimum(b1, t_nodes - ker.tau_min)
    keep = top > b0
    t_nodes, t_w, top = t_nodes[keep], t_w[keep], top[keep]
    if t_nodes.size == 0:
        return 0.0j
    inner_cuts = [np.clip(t_nodes - c, b0, top) for c in ker.bumps]
    edges = np.sort(np.column_stack([np.full_like(top, b0), *inner_cuts, top]), axis=1)
    x, w = np.polynomial.legendre.leggauss(n)
    lo_e, hi_e = edges[:, :-1, None], edges[:, 1:, None]
    half = 0.5 * (hi_e - lo_e)
    tp = (0.5 * (hi_e + lo_e) + half * x).reshape(len(t_nodes), -1)
    wp = (half * w).reshape(len(t_nodes), -1)
    inner = np.sum(wp * fb(tp) * ker.func(t_nodes[:, None] - tp), axis=1)
    return amp * np.sum(t_w * fa(t_nodes) * inner)


def _combine(sa, sb, kind: KernelKind, n: int, wa: Weight, wb: Weight) -> complex:
    if kind is KernelKind.RETARDED:
        return _retarded(sa, sb, n, wa, wb)
    rev = _retarded(sb, sa, n, wb, wa)
    if kind is KernelKind.ADVANCED:
        return rev
    fwd = _retarded(sa, sb, n, wa, wb)
    return fwd + rev if kind is KernelKind.SYMMETRIC else fwd - rev


def oracle_integral(
    sa: Smearing,
    sb: Smearing,
    kernel: KernelSpec,
    resolution: int = 16,
    *,
    weight_a: Weight = None,
    weight_b: Weight = None,
    rtol: float = 1e-11,
    atol: float = 1e-14,
    max_resolution: int = 512,
) -> tuple[complex, float, int]:
    """Complex-weighted smeared kernel; returns (value, error estimate, nodes per panel)."""
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    if sa.dim != sb.dim or sa.dim != kernel.dim:
        raise ValueError("smearing and kernel dimensions disagree")
    n = resolution
    prev = _combine(sa, sb, kernel.kind, n, weight_a, weight_b)
    while True:
        n2 = 2 * n
        cur = _combine(sa, sb, kernel.kind, n2, weight_a, weight_b)
        err = abs(cur - prev)
        if err <= max(rtol * abs(cur), atol):
            return cur, err, n2
        if n2 >= max_resolution:
            raise OracleConvergenceError(
                f"no convergence at {n2} nodes per panel: estimate {cur}, change {err:.3e}"
            )
        n, prev = n2, cur


def quadrature_oracle(
    sa: Smearing, sb: Smearing, kernel: KernelSpec, resolution: int = 16, **kwargs
) -> OracleResult:
    """Smeared bi-distribution kernel(sa, sb) by adaptive Gauss-Legendre quadrature."""
    value, err, n = oracle_integral(sa, sb, kernel, resolution, **kwargs)
    return OracleResult(float(value.real), float(err), n)
