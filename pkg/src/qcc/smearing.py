"""Spacetime smearings: a switching function in time times a spatial profile.

Only the combination needed by the detector models is supported: a spatial
profile (pointlike, gaussian, or the charge-neutral gaussian used by the
adiabatic diagnostics) and a switching (sharp window or gaussian).
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union

import numpy as np

# gaussian switchings are truncated at this many widths
GAUSS_CUTOFF = 12.0


def _as_position(x) -> tuple[float, ...]:
    pos = tuple(float(v) for v in np.atleast_1d(x))
    if len(pos) not in (1, 3):
        raise ValueError(f"spatial dimension must be 1 or 3, got {len(pos)}")
    return pos


@dataclass(frozen=True)
class Pointlike:
    position: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "position", _as_position(self.position))

    @property
    def center(self) -> tuple[float, ...]:
        return self.position

    @property
    def width(self) -> float:
        return 0.0


@dataclass(frozen=True)
class GaussianProfile:
    """Normalized isotropic gaussian of standard deviation `width`."""

    center: tuple[float, ...]
    width: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_position(self.center))
        if not self.width > 0:
            raise ValueError("gaussian width must be positive")

    def density(self, x):
        """Density at positions x (plain array in 1-D, trailing coordinate axis in 3-D)."""
        d = len(self.center)
        x = np.asarray(x, dtype=float)
        if d == 1:
            r2 = (x - self.center[0]) ** 2
        else:
            r2 = np.sum((x - np.asarray(self.center)) ** 2, axis=-1)
        return np.exp(-r2 / (2 * self.width**2)) / (2 * np.pi * self.width**2) ** (d / 2)


@dataclass(frozen=True)
class NeutralGaussianProfile:
    """1-D source with vanishing charge and dipole moment.

    F(x) = -d^2/dx^2 exp(-(x-c)^2 / 2w^2), whose static 1+1 field is the
    localized bump exp(-(x-c)^2 / 2w^2) (up to the sign convention of the
    wave operator). Only meaningful for the sourced-field diagnostics.
    """

    center: tuple[float, ...]
    width: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_position(self.center))
        if len(self.center) != 1:
            raise ValueError("neutral gaussian profile is 1+1 only")
        if not self.width > 0:
            raise ValueError("width must be positive")

    def density(self, x):
        u = (np.asarray(x, dtype=float) - self.center[0]) / self.width
        return (1.0 - u**2) * np.exp(-(u**2) / 2) / self.width**2


Spatial = Union[Pointlike, GaussianProfile, NeutralGaussianProfile]


@dataclass(frozen=True)
class Window:
    t_on: float
    t_off: float

    def __post_init__(self):
        if self.t_off < self.t_on:
            raise ValueError(f"window ends before it starts: [{self.t_on}, {self.t_off}]")

    @property
    def support(self) -> tuple[float, float]:
        return (self.t_on, self.t_off)

    @property
    def duration(self) -> float:
        return self.t_off - self.t_on

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        return ((t >= self.t_on) & (t <= self.t_off)).astype(float)


@dataclass(frozen=True)
class GaussianSwitching:
    """Unit-peak gaussian switching exp(-(t-center)^2 / 2 width^2)."""

    center: float
    width: float

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("switching width must be positive")

    @property
    def support(self) -> tuple[float, float]:
        return (self.center - GAUSS_CUTOFF * self.width, self.center + GAUSS_CUTOFF * self.width)

    def __call__(self, t):
        u = (np.asarray(t, dtype=float) - self.center) / self.width
        return np.exp(-(u**2) / 2)

    def derivative(self, t):
        u = (np.asarray(t, dtype=float) - self.center) / self.width
        return -u / self.width * np.exp(-(u**2) / 2)

    def antiderivative(self, t):
        from scipy.special import ndtr

        u = (np.asarray(t, dtype=float) - self.center) / self.width
        return self.width * np.sqrt(2 * np.pi) * ndtr(u)


Switching = Union[Window, GaussianSwitching]


@dataclass(frozen=True)
class Smearing:
    """Lambda(t, x) = amplitude * chi(t) * F(x)."""

    spatial: Spatial
    switching: Switching
    amplitude: float = 1.0

    @property
    def dim(self) -> int:
        return len(self.spatial.center)

    @property
    def position(self) -> np.ndarray:
        return np.asarray(self.spatial.center, dtype=float)

    @property
    def is_sharp(self) -> bool:
        """Pointlike in space and a window in time (closed forms apply)."""
        return isinstance(self.spatial, Pointlike) and isinstance(self.switching, Window)

    def restrict(self, t0: float, t1: float) -> "Smearing":
        """Restriction of a window smearing to the times [t0, t1]."""
        if not isinstance(self.switching, Window):
            raise TypeError("only window switchings can be restricted to a sub-interval")
        lo = max(self.switching.t_on, t0)
        hi = min(self.switching.t_off, t1)
        if hi < lo:
            hi = lo
        return replace(self, switching=Window(lo, hi))

    def scaled(self, factor: float) -> "Smearing":
        return replace(self, amplitude=self.amplitude * factor)


def pointlike_window(position, t_on: float, t_off: float, amplitude: float = 1.0) -> Smearing:
    return Smearing(Pointlike(position), Window(t_on, t_off), amplitude)


def distance(sa: Smearing, sb: Smearing) -> float:
    if sa.dim != sb.dim:
        raise ValueError(f"dimension mismatch: {sa.dim} vs {sb.dim}")
    return float(np.linalg.norm(sa.position - sb.position))
