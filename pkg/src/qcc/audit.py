"""Retrocausality audit of a two-detector configuration.

A sub-window R of B's switching is *retrocausal* for A when nothing emitted
from R reaches A along retarded propagation, G_R(Lambda_a, Lambda_b|R) = 0,
while A does reach R, G_R(Lambda_b|R, Lambda_a) != 0. A model has a
retrocausal effect when A's final state changes if B's coupling inside R is
switched off. The search is over time intervals on a grid and is sound but
not complete: a "no subregion" verdict only covers interval-shaped regions.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from qcc.gapless import delta_ab, state_change_a
from qcc.perturbative import Detector, qc_correction, qft_signal_term
from qcc.propagators import smeared_retarded
from qcc.smearing import Smearing, Window, distance
from qcc.states import PairState

ZERO_TOL = 1e-12
STATE_TOL = 1e-10


class Model(enum.Enum):
    QC = "qc"
    QFT = "qft"


class GeometryClass(enum.Enum):
    NO_RETRO_SUBREGION = "no_retro_subregion"
    RETRO_SUBREGION_INERT = "retro_subregion_inert"
    RETRO_SUBREGION_ACTIVE = "retro_subregion_active"


@dataclass(frozen=True)
class AuditVerdict:
    model: Model
    geometry_class: GeometryClass
    witness_norm: float
    subregion: Optional[tuple[float, float]]


def _grid(sa: Smearing, sb: Smearing, grid_n: int) -> np.ndarray:
    b0, b1 = sb.switching.support
    a0, a1 = sa.switching.support
    L = distance(sa, sb)
    crit = [a0 - L, a1 - L, a0 + L, a1 + L]
    pts = np.concatenate([np.linspace(b0, b1, grid_n + 1), [c for c in crit if b0 < c < b1]])
    return np.unique(pts)


def find_retro_subregion(sa: Smearing, sb: Smearing, grid_n: int = 64) -> Optional[tuple[float, float]]:
    """Maximal interval of B's window that is retrocausal for A, or None.

    The grid is uniform plus the instants where lightcones from A's window
    edges cross B's worldline, so for window smearings the boundaries are
    exact. Zero tests use ZERO_TOL times the scale of the unsplit propagators.
    """
    if grid_n < 16:
        raise ValueError("grid_n must be at least 16")
    if not isinstance(sb.switching, Window):
        raise TypeError("subregion search needs a window switching for B")
    b0, b1 = sb.switching.support
    if b1 <= b0:
        return None
    scale = abs(smeared_retarded(sa, sb)) + abs(smeared_retarded(sb, sa))
    thr = ZERO_TOL * max(scale, np.finfo(float).tiny)
    pts = _grid(sa, sb, grid_n)
    best: Optional[tuple[float, float]] = None
    run_start, run_hit = None, False
    for lo, hi in zip(pts[:-1], pts[1:]):
        cell = sb.restrict(lo, hi)
        silent = abs(smeared_retarded(sa, cell)) <= thr
        if silent:
            if run_start is None:
                run_start, run_hit = lo, False
            run_hit = run_hit or abs(smeared_retarded(cell, sa)) > thr
            run_end = hi
            continue
        if run_start is not None and run_hit:
            best = _longer(best, (run_start, run_end))
        run_start = None
    if run_start is not None and run_hit:
        best = _longer(best, (run_start, run_end))
    return None if best is None else (float(best[0]), float(best[1]))


def _longer(a, b):
    if a is None or (b[1] - b[0]) > (a[1] - a[0]):
        return b
    return a


def _with_smearing(det: Detector, s: Smearing) -> Detector:
    return Detector(det.gap, det.coupling, s, det.alpha, det.beta)


def _change_a(model: Model, det_a: Detector, det_b: Detector, pieces: list[Smearing]) -> np.ndarray:
    """Change of A's state when B couples through the given pieces of its window."""
    if model is Model.QFT:
        return sum((qft_signal_term(det_a, _with_smearing(det_b, p)) for p in pieces), np.zeros((2, 2), complex))
    if det_a.gap == 0.0 and det_b.gap == 0.0:
        # exact gapless evolution; Delta_ab is additive over pieces of B
        lam2 = det_a.coupling * det_b.coupling
        d = sum(delta_ab(1.0, det_a.smearing, p) for p in pieces) * lam2
        rho0 = PairState.product(det_a.rho0, det_b.rho0)
        return state_change_a(d, rho0)
    return sum((qc_correction(det_a, _with_smearing(det_b, p)) for p in pieces), np.zeros((2, 2), complex))


def witness(model, det_a: Detector, det_b: Detector, grid_n: int = 64) -> float:
    """Operator-norm change of rho_A when B is switched off inside the retro subregion.

    Zero by definition when no such subregion exists.
    """
    model = Model(model)
    region = find_retro_subregion(det_a.smearing, det_b.smearing, grid_n)
    if region is None:
        return 0.0
    sb = det_b.smearing
    b0, b1 = sb.switching.support
    full = _change_a(model, det_a, det_b, [sb])
    outside = [sb.restrict(lo, hi) for lo, hi in ((b0, region[0]), (region[1], b1)) if hi > lo]
    without = _change_a(model, det_a, det_b, outside)
    return float(np.linalg.norm(full - without, 2))


def audit(model, det_a: Detector, det_b: Detector, grid_n: int = 64) -> AuditVerdict:
    model = Model(model)
    region = find_retro_subregion(det_a.smearing, det_b.smearing, grid_n)
    if region is None:
        return AuditVerdict(model, GeometryClass.NO_RETRO_SUBREGION, 0.0, None)
    w = witness(model, det_a, det_b, grid_n)
    if w <= STATE_TOL:
        return AuditVerdict(model, GeometryClass.RETRO_SUBREGION_INERT, 0.0, region)
    return AuditVerdict(model, GeometryClass.RETRO_SUBREGION_ACTIVE, w, region)


__all__ = [
    "AuditVerdict",
    "GeometryClass",
    "Model",
    "audit",
    "find_retro_subregion",
    "witness",
]
