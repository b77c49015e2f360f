"""Smeared retarded, advanced, symmetric and causal bi-distributions.

Massless scalar field in 1+1 and 3+1 Minkowski space. For pointlike
smearings with window switchings everything is evaluated exactly:

* 3+1: the kernel delta(t - t' - L) / (4 pi L) collapses the double time
  integral onto the overlap of A's window with B's window shifted by L;
* 1+1: the kernel Theta(t - t' - L) / 2 turns the double integral into an
  integral over a convex polygon in the (t, t') plane.

The same machinery also integrates the oscillating factors exp(i w_a t) *
exp(i w_b t') required by gapped detectors. Polygon integrals of exponentials
are written as divided differences of exp over the triangle vertices, which
stay accurate when frequencies vanish or coincide. Non-sharp smearings are
handed to the quadrature oracle.

Argument order follows the bi-distribution convention: in
``smeared_retarded(sa, sb)`` the first argument is the *receiving* side, i.e.
the value is non-zero only if part of sb lies in the causal past of sa.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from qcc.smearing import Smearing, Window, distance


class SingularKernelError(ValueError):
    """Coincident pointlike detectors in 3+1 (the kernel diverges as 1/L)."""


class KernelKind(enum.Enum):
    RETARDED = "retarded"
    ADVANCED = "advanced"
    SYMMETRIC = "symmetric"
    CAUSAL = "causal"


@dataclass(frozen=True)
class KernelSpec:
    kind: KernelKind
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "kind", KernelKind(self.kind))
        if self.dim not in (1, 3):
            raise ValueError(f"dim must be 1 or 3, got {self.dim}")


# ---------------------------------------------------------------------------
# exact integrals of exp(z . x) over segments and triangles


def _exp_dd2(z0: complex, z1: complex) -> complex:
    """Divided difference (e^z1 - e^z0) / (z1 - z0), stable for z1 ~ z0."""
    h = 0.5 * (z1 - z0)
    if abs(h) < 1e-4:
        # sinh(h)/h series, error < 1e-22
        h2 = h * h
        shc = 1 + h2 / 6 * (1 + h2 / 20 * (1 + h2 / 42))
    else:
        shc = np.sinh(h) / h
    return complex(np.exp(0.5 * (z0 + z1)) * shc)


def _exp_dd3(z0: complex, z1: complex, z2: complex) -> complex:
    """Second divided difference of exp at three (possibly coincident) nodes."""
    z = [complex(z0), complex(z1), complex(z2)]
    c = sum(z) / 3
    u = [zi - c for zi in z]
    spread = max(abs(u[0] - u[1]), abs(u[1] - u[2]), abs(u[0] - u[2]))
    if spread < 1e-2:
        # e^c * sum_k h_k(u) / (k+2)!, h_k the complete homogeneous polynomials
        total, fact = 0.0j, 2.0
        for k in range(12):
            hk = sum(
                u[0] ** i * u[1] ** j * u[2] ** (k - i - j)
                for i in range(k + 1)
                for j in range(k + 1 - i)
            )
            total += hk / fact
            fact *= k + 3
        return complex(np.exp(c) * total)
    # put the most distant pair at the ends of the recursion
    pairs = [(0, 1, 2), (1, 0, 2), (0, 2, 1)]
    i, m, j = max(pairs, key=lambda p: abs(u[p[0]] - u[p[2]]))
    dd = (_exp_dd2(u[m], u[j]) - _exp_dd2(u[i], u[m])) / (u[j] - u[i])
    return complex(np.exp(c) * dd)


def segment_exp_integral(w: float, a: float, b: float) -> complex:
    """Integral of exp(i w t) over [a, b] (zero if b <= a)."""
    if b <= a:
        return 0.0j
    return (b - a) * _exp_dd2(1j * w * a, 1j * w * b)


def _triangle_exp_integral(v0, v1, v2, k) -> complex:
    area2 = abs((v1[0] - v0[0]) * (v2[1] - v0[1]) - (v2[0] - v0[0]) * (v1[1] - v0[1]))
    if area2 == 0.0:
        return 0.0j
    if k[0] == 0.0 and k[1] == 0.0:
        return 0.5 * area2 + 0.0j
    z = [1j * (k[0] * v[0] + k[1] * v[1]) for v in (v0, v1, v2)]
    return area2 * _exp_dd3(*z)


def _clip_halfplane(poly, a: float, b: float, c: float):
    """Sutherland-Hodgman: keep the part of `poly` where a*x + b*y >= c."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp = a * p[0] + b * p[1] - c
        fq = a * q[0] + b * q[1] - c
        if fp >= 0:
            out.append(p)
        if (fp >= 0) != (fq >= 0):
            s = fp / (fp - fq)
            out.append((p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
    return out


def polygon_exp_integral(poly, wa: float, wb: float) -> complex:
    """Integral of exp(i (wa t + wb t')) over a convex polygon [(t, t'), ...]."""
    if len(poly) < 3:
        return 0.0j
    k = (wa, wb)
    total = 0.0j
    for i in range(1, len(poly) - 1):
        total += _triangle_exp_integral(poly[0], poly[i], poly[i + 1], k)
    return total


def retarded_region(win_a: tuple[float, float], win_b: tuple[float, float], L: float):
    """{(t, t') : t in win_a, t' in win_b, t - t' >= L} as a convex polygon."""
    a0, a1 = win_a
    b0, b1 = win_b
    if a1 <= a0 or b1 <= b0:
        return []
    rect = [(a0, b0), (a1, b0), (a1, b1), (a0, b1)]
    return _clip_halfplane(rect, 1.0, -1.0, L)


# ---------------------------------------------------------------------------
# sharp (pointlike x window) bi-distributions


def _check_pair(sa: Smearing, sb: Smearing) -> tuple[int, float]:
    dim = sa.dim
    L = distance(sa, sb)
    if dim == 3 and L == 0.0:
        raise SingularKernelError("coincident pointlike detectors in 3+1")
    return dim, L


def phase_retarded(sa: Smearing, sb: Smearing, wa: float = 0.0, wb: float = 0.0) -> complex:
    """Integral of G_R(x, x') Lambda_a(x) Lambda_b(x') exp(i wa t + i wb t').

    x = (t, .) is integrated against sa and x' = (t', .) against sb. Both
    smearings must be pointlike with window switchings.
    """
    if not (sa.is_sharp and sb.is_sharp):
        raise TypeError("closed forms need pointlike smearings with window switchings")
    dim, L = _check_pair(sa, sb)
    amp = sa.amplitude * sb.amplitude
    if amp == 0.0:
        return 0.0j
    win_a, win_b = sa.switching.support, sb.switching.support
    if dim == 3:
        lo = max(win_a[0], win_b[0] + L)
        hi = min(win_a[1], win_b[1] + L)
        line = segment_exp_integral(wa + wb, lo, hi)
        phase = 1.0 if wb == 0.0 else np.exp(-1j * wb * L)
        return amp * phase * line / (4 * math.pi * L)
    poly = retarded_region(win_a, win_b, L)
    return amp * 0.5 * polygon_exp_integral(poly, wa, wb)


def phase_symmetric(sa: Smearing, sb: Smearing, wa: float = 0.0, wb: float = 0.0) -> complex:
    """As `phase_retarded` with the symmetric kernel G_R + G_A."""
    return phase_retarded(sa, sb, wa, wb) + phase_retarded(sb, sa, wb, wa)


def _route(sa: Smearing, sb: Smearing, kind: KernelKind) -> float:
    if sa.dim != sb.dim:
        raise ValueError(f"dimension mismatch: {sa.dim} vs {sb.dim}")
    if sa.is_sharp and sb.is_sharp:
        ret_ab = phase_retarded(sa, sb).real
        if kind is KernelKind.RETARDED:
            return ret_ab
        ret_ba = phase_retarded(sb, sa).real
        return {
            KernelKind.ADVANCED: ret_ba,
            KernelKind.SYMMETRIC: ret_ab + ret_ba,
            KernelKind.CAUSAL: ret_ab - ret_ba,
        }[kind]
    from qcc.oracle import quadrature_oracle

    return quadrature_oracle(sa, sb, KernelSpec(kind, sa.dim)).value


def smeared_retarded(sa: Smearing, sb: Smearing, dim: int | None = None) -> float:
    """G_R(sa, sb): propagation from sb into sa."""
    _check_dim(sa, sb, dim)
    return _route(sa, sb, KernelKind.RETARDED)


def smeared_advanced(sa: Smearing, sb: Smearing, dim: int | None = None) -> float:
    _check_dim(sa, sb, dim)
    return _route(sa, sb, KernelKind.ADVANCED)


def smeared_symmetric(sa: Smearing, sb: Smearing, dim: int | None = None) -> float:
    _check_dim(sa, sb, dim)
    return _route(sa, sb, KernelKind.SYMMETRIC)


def smeared_causal(sa: Smearing, sb: Smearing, dim: int | None = None) -> float:
    _check_dim(sa, sb, dim)
    return _route(sa, sb, KernelKind.CAUSAL)


def smeared(kernel: KernelSpec, sa: Smearing, sb: Smearing) -> float:
    _check_dim(sa, sb, kernel.dim)
    return _route(sa, sb, kernel.kind)


def _check_dim(sa: Smearing, sb: Smearing, dim: int | None) -> None:
    if dim is not None and (sa.dim != dim or sb.dim != dim):
        raise ValueError(f"smearings live in {sa.dim}/{sb.dim} spatial dimensions, not {dim}")


def window_pieces(s: Smearing, cuts) -> list[Smearing]:
    """Split a window smearing at the given instants (for additivity checks)."""
    if not isinstance(s.switching, Window):
        raise TypeError("only window switchings can be split")
    t0, t1 = s.switching.support
    edges = [t0] + sorted(c for c in cuts if t0 < c < t1) + [t1]
    return [s.restrict(lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]
