"""Spacetime points, the canonical two-detector geometries, and B's causal split.

Units are natural (c = 1). Detector A sits at the spatial origin and B at
distance L along the first axis; both worldlines are static.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from qcc.smearing import Smearing, pointlike_window

Interval = tuple[float, float]


class CausalRelation(enum.Enum):
    TIMELIKE_PAST = "timelike_past"
    NULL_PAST = "null_past"
    SPACELIKE = "spacelike"
    NULL_FUTURE = "null_future"
    TIMELIKE_FUTURE = "timelike_future"
    COINCIDENT = "coincident"


@dataclass(frozen=True)
class SpacetimePoint:
    t: float
    x: tuple[float, ...]

    def __post_init__(self):
        x = tuple(float(v) for v in np.atleast_1d(self.x))
        if len(x) not in (1, 3):
            raise ValueError(f"spatial dimension must be 1 or 3, got {len(x)}")
        object.__setattr__(self, "x", x)

    @property
    def d(self) -> int:
        return len(self.x)


def causal_relation(p: SpacetimePoint, q: SpacetimePoint, tol: float = 1e-12) -> CausalRelation:
    """Classify q relative to p with the Minkowski metric (c = 1).

    Null separation is detected with a relative tolerance `tol` on |dt| - |dx|.
    """
    if p.d != q.d:
        raise ValueError(f"dimension mismatch: {p.d} vs {q.d}")
    dt = q.t - p.t
    dx = math.dist(p.x, q.x)
    scale = max(abs(dt), dx, 1.0)
    if abs(dt) <= tol * scale and dx <= tol * scale:
        return CausalRelation.COINCIDENT
    gap = abs(dt) - dx
    if abs(gap) <= tol * scale:
        return CausalRelation.NULL_FUTURE if dt > 0 else CausalRelation.NULL_PAST
    if gap < 0:
        return CausalRelation.SPACELIKE
    return CausalRelation.TIMELIKE_FUTURE if dt > 0 else CausalRelation.TIMELIKE_PAST


@dataclass(frozen=True)
class RegionSplit:
    window_c: Interval
    window_r: Interval


@dataclass(frozen=True)
class SetupGeometry:
    """A of duration T switches on at t_b_on + L; B lasts T + 2L + S from t_b_on.

    `dim` is the number of spatial dimensions (1 or 3). S is always 0 in 3+1,
    where the lightcone support makes any longer B window irrelevant.
    """

    L: float
    T: float
    S: float = 0.0
    t_b_on: float = 0.0
    dim: int = 3

    def __post_init__(self):
        if self.dim not in (1, 3):
            raise ValueError(f"dim must be 1 or 3, got {self.dim}")
        if not self.L > 0:
            raise ValueError("separation L must be positive")
        if self.T < 0 or self.S < 0:
            raise ValueError("durations T and S must be non-negative")
        if self.dim == 3 and self.S != 0:
            raise ValueError("S must be 0 in 3+1 dimensions")

    @property
    def window_a(self) -> Interval:
        start = self.t_b_on + self.L
        return (start, start + self.T)

    @property
    def window_b(self) -> Interval:
        return (self.t_b_on, self.t_b_on + self.T + 2 * self.L + self.S)

    @property
    def position_a(self) -> tuple[float, ...]:
        return (0.0,) * self.dim

    @property
    def position_b(self) -> tuple[float, ...]:
        return (self.L,) + (0.0,) * (self.dim - 1)

    def smearings(self) -> tuple[Smearing, Smearing]:
        """Pointlike, window-switched smearings of A and B."""
        return (
            pointlike_window(self.position_a, *self.window_a),
            pointlike_window(self.position_b, *self.window_b),
        )

    def shifted(self, dt: float) -> "SetupGeometry":
        return SetupGeometry(self.L, self.T, self.S, self.t_b_on + dt, self.dim)


def standard_setup(kind: str, L: float, T: float, S: float = 0.0, t_b_on: float = 0.0) -> SetupGeometry:
    """Canonical geometries: 'fig2' (3+1, B lasts T+2L) and 'fig4' (1+1, B lasts T+2L+S)."""
    if L <= 0 or T < 0 or S < 0:
        raise ValueError("need L > 0, T >= 0, S >= 0")
    if kind == "fig2":
        return SetupGeometry(L, T, 0.0, t_b_on, dim=3)
    if kind == "fig4":
        return SetupGeometry(L, T, S, t_b_on, dim=1)
    raise ValueError(f"unknown setup kind {kind!r}")


def split_switching(setup: SetupGeometry) -> RegionSplit:
    """B's window split into the part that reaches A causally and the remainder.

    The boundary instant t_b_on + T belongs to window_r (half-open convention).
    """
    b0, b1 = setup.window_b
    mid = b0 + setup.T
    return RegionSplit(window_c=(b0, mid), window_r=(mid, b1))


def causal_future_pair(L: float, T: float, dim: int = 3, t_a_on: float = 0.0) -> tuple[Smearing, Smearing]:
    """A on [t_a_on, t_a_on+T] and B on [t_a_on+T, t_a_on+2T] at distance L.

    B cannot reach A through retarded propagation while A reaches B: the
    configuration in which any influence of B on A is retrocausal.
    """
    if L <= 0 or T <= 0:
        raise ValueError("need L > 0 and T > 0")
    pa = (0.0,) * dim
    pb = (L,) + (0.0,) * (dim - 1)
    return (
        pointlike_window(pa, t_a_on, t_a_on + T),
        pointlike_window(pb, t_a_on + T, t_a_on + 2 * T),
    )


def interval_length(iv: Interval) -> float:
    return max(0.0, iv[1] - iv[0])


def overlap(a: Interval, b: Interval) -> Interval:
    lo, hi = max(a[0], b[0]), min(a[1], b[1])
    return (lo, max(lo, hi))
