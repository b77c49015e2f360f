"""Regime check for gravity-mediated-entanglement experiments.

Converts SI parameters (masses, separation, interaction time) into the
dimensionless coupling and time ratios that control how far the qc-model's
retrocausal contributions can be resolved.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

# pinned constants (SI); verdicts must not drift with library updates
G_NEWTON = 6.674e-11  # m^3 kg^-1 s^-2
HBAR = 1.0546e-34  # J s
C_LIGHT = 2.998e8  # m / s


def effective_coupling(m1: float, m2: float) -> float:
    """lam_a lam_b = pi G m1 m2 / (hbar c)."""
    if m1 < 0 or m2 < 0:
        raise ValueError("masses must be non-negative")
    return math.pi * G_NEWTON * m1 * m2 / (HBAR * C_LIGHT)


@dataclass(frozen=True)
class GmeParameters:
    m1: float  # kg
    m2: float  # kg
    L: float  # m
    T: float  # s
    epsilon: float = 1e-6
    resolution: float = 1e-3  # s, experimental time resolution

    def __post_init__(self):
        for name in ("m1", "m2", "L", "T", "resolution"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie in (0, 1)")


@dataclass(frozen=True)
class GmeReport:
    lambda_sq: float
    T_over_Lc: float
    required_resolution: float  # s, light-crossing time L / c
    qc_indistinguishable: bool
    ratio_ok: bool
    coupling_ok: bool
    resolution_ok: bool


def light_crossing_time(L: float) -> float:
    return L / C_LIGHT


def regime_report(p: GmeParameters) -> GmeReport:
    """Conjunction of the three scale tests.

    ratio:      (L/c) / T < eps      (retrocausal share of the signal)
    coupling:   lam^2 / (4 pi) < eps (non-perturbative modulus estimator)
    resolution: resolution > L/c     (the time shift of size L/c is unresolved)
    """
    lam2 = effective_coupling(p.m1, p.m2)
    t_cross = light_crossing_time(p.L)
    ratio_ok = t_cross / p.T < p.epsilon
    coupling_ok = lam2 / (4 * math.pi) < p.epsilon
    resolution_ok = p.resolution > t_cross
    return GmeReport(
        lambda_sq=lam2,
        T_over_Lc=p.T / t_cross,
        required_resolution=t_cross,
        qc_indistinguishable=ratio_ok and coupling_ok and resolution_ok,
        ratio_ok=ratio_ok,
        coupling_ok=coupling_ok,
        resolution_ok=resolution_ok,
    )


def to_natural(L: float, T: float) -> tuple[float, float]:
    """(L, T) in SI to natural units with lengths in meters (c = 1)."""
    return L, T * C_LIGHT


def from_natural(L: float, T_nat: float) -> tuple[float, float]:
    return L, T_nat / C_LIGHT
