"""Perturbative signalling estimator C_a = Delta(Lambda_a, Lambda_b) and its split.

B's switching is cut at t_b_on + T into a part whose signals reach A along
retarded propagation (window_c) and a remainder that A only sees through the
advanced half of the symmetric propagator (window_r).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from qcc.geometry import SetupGeometry, split_switching
from qcc.propagators import smeared_symmetric
from qcc.smearing import Smearing


class OutOfDomainError(ValueError):
    """Closed-form ratio laws hold only for T > 2L."""


class OutOfDomainWarning(UserWarning):
    pass


@dataclass(frozen=True)
class EstimatorReport:
    C_total: float
    C_causal: float
    C_retro: float
    ratio_rc: float  # C_retro / C_causal, nan if C_causal = 0
    ratio_rtotal: float  # C_retro / C_total, nan if C_total = 0
    dim: int
    setup: SetupGeometry
    in_ratio_domain: bool  # T > 2L, where the closed ratio laws apply

    def row(self) -> tuple[float, ...]:
        return (self.setup.T, self.C_total, self.C_causal, self.C_retro, self.ratio_rc, self.ratio_rtotal)


def signalling_estimator(sa: Smearing, sb: Smearing, dim: int | None = None) -> float:
    return smeared_symmetric(sa, sb, dim)


def _ratio(num: float, den: float) -> float:
    return num / den if den != 0.0 else math.nan


def _report(setup: SetupGeometry, c: float, cc: float, cr: float) -> EstimatorReport:
    return EstimatorReport(
        C_total=c,
        C_causal=cc,
        C_retro=cr,
        ratio_rc=_ratio(cr, cc),
        ratio_rtotal=_ratio(cr, c),
        dim=setup.dim,
        setup=setup,
        in_ratio_domain=setup.T > 2 * setup.L,
    )


def estimator_split(setup: SetupGeometry) -> EstimatorReport:
    """C, C_c, C_r from the smeared symmetric propagator on B's split windows.

    C_total is the sum of the two pieces, so the split is exactly additive.
    """
    sa, sb = setup.smearings()
    split = split_switching(setup)
    cc = smeared_symmetric(sa, sb.restrict(*split.window_c))
    cr = smeared_symmetric(sa, sb.restrict(*split.window_r))
    return _report(setup, cc + cr, cc, cr)


def analytic_split(setup: SetupGeometry) -> EstimatorReport:
    """Closed-form C, C_c, C_r for the canonical geometries (Theta(0) = 0)."""
    L, T, S = setup.L, setup.T, setup.S
    kink = T - 2 * L if T > 2 * L else 0.0
    if setup.dim == 3:
        c = T / (2 * math.pi * L)
        cc = (T + kink) / (4 * math.pi * L)
        cr = (T - kink) / (4 * math.pi * L)
    else:
        c = T * (T + S) / 2
        cc = T * T / 4 + kink * kink / 4
        cr = T * (T + 2 * S) / 4 - kink * kink / 4
    return _report(setup, c, cc, cr)


def ratios(setup: SetupGeometry) -> tuple[float, float]:
    """(C_r/C_c, C_r/C) from the closed ratio laws; only defined for T > 2L."""
    L, T, S = setup.L, setup.T, setup.S
    if not T > 2 * L:
        raise OutOfDomainError(f"ratio laws need T > 2L (T={T}, L={L})")
    if setup.dim == 3:
        return L / (T - L), L / T
    num = T * (2 * L + S) - 2 * L * L
    return num / (L * L + (L - T) ** 2), num / (T * (T + S))


def tolerance_time(epsilon: float, L: float, dim: int = 3) -> float:
    """Smallest T with C_r/C < epsilon in 3+1, i.e. T = L / epsilon.

    Warns when L / epsilon <= 2L, where the ratio law itself does not apply.
    """
    if dim != 3:
        raise ValueError("the tolerance law is derived for 3+1 only")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not L > 0:
        raise ValueError("L must be positive")
    t = L / epsilon
    if t <= 2 * L:
        warnings.warn(f"T = L/eps = {t:g} is not above 2L; ratio law outside its domain", OutOfDomainWarning)
    return t


def asymptotic_1p1(setup: SetupGeometry) -> float:
    """Leading large-T behaviour (2L + S) / T shared by both 1+1 ratios."""
    if setup.dim != 1:
        raise ValueError("asymptotic form is for the 1+1 geometry")
    if setup.T == 0:
        raise ValueError("T must be non-zero")
    return (2 * setup.L + setup.S) / setup.T
