"""Leading-order dynamics of two gapped qubit detectors coupled through the qc-model.

With monopoles m(t) = sigma+ e^{i Omega t} + sigma- e^{-i Omega t} and a
product initial state, the second-order change of A's reduced state is

    d rho_A = -i lam_a lam_b  int dV dV' K(x, x') Lambda_a(x) Lambda_b(x')
              Re(beta_b e^{i Omega_b t'}) [m_a(t), rho_A0]

with x = (t, .) on A and x' = (t', .) on B. K is the symmetric propagator for
the qc-model; the retarded-only version is the signalling part of the full
QFT model. Expanding Re(.) and m_a(t) into phases turns the double integral
into four smeared kernels weighted by exp(i w_a t + i w_b t'), which the
propagators module evaluates exactly for pointlike window smearings.

`dyson_oracle` evaluates the same order by brute force: it builds the
interaction Hamiltonian of the two sources as 4x4 operators on a time grid
and integrates it, which fixes the pairing of time variables independently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from qcc.oracle import oracle_integral
from qcc.propagators import (
    KernelKind,
    KernelSpec,
    phase_retarded,
    phase_symmetric,
    segment_exp_integral,
)
from qcc.smearing import Smearing, distance
from qcc.states import (
    SIGMA_MINUS,
    SIGMA_PLUS,
    PairState,
    partial_trace_b,
    qubit_matrix,
)

NORM_BOUND_SLACK = 1e-12


@dataclass(frozen=True)
class Detector:
    """Two-level system with gap Omega, coupling lam and initial state [[alpha, beta], [beta*, 1-alpha]]."""

    gap: float
    coupling: float
    smearing: Smearing
    alpha: float = 0.5
    beta: complex = 0.0

    def __post_init__(self):
        if self.gap < 0:
            raise ValueError("gap must be non-negative")
        object.__setattr__(self, "beta", complex(self.beta))
        qubit_matrix(self.alpha, self.beta)  # positivity check

    @property
    def rho0(self) -> np.ndarray:
        return qubit_matrix(self.alpha, self.beta)


def monopole(t: float, gap: float) -> np.ndarray:
    ph = np.exp(1j * gap * t)
    return SIGMA_PLUS * ph + SIGMA_MINUS * np.conj(ph)


def _commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def _kernel_phase(kind: KernelKind, sa: Smearing, sb: Smearing, wa: float, wb: float) -> complex:
    if sa.is_sharp and sb.is_sharp:
        if kind is KernelKind.SYMMETRIC:
            return phase_symmetric(sa, sb, wa, wb)
        return phase_retarded(sa, sb, wa, wb)
    value, _, _ = oracle_integral(
        sa,
        sb,
        KernelSpec(kind, sa.dim),
        weight_a=lambda t: np.exp(1j * wa * t),
        weight_b=lambda t: np.exp(1j * wb * t),
    )
    return value


def _correction(kind: KernelKind, det_a: Detector, det_b: Detector) -> np.ndarray:
    sa, sb = det_a.smearing, det_b.smearing
    if sa.dim != sb.dim:
        raise ValueError("detectors live in different dimensions")
    lam = det_a.coupling * det_b.coupling
    rho_a = det_a.rho0
    out = np.zeros((2, 2), dtype=complex)
    if lam == 0.0 or det_b.beta == 0.0:
        return out
    for sig, sgn_a in ((SIGMA_PLUS, 1.0), (SIGMA_MINUS, -1.0)):
        comm = _commutator(sig, rho_a)
        for coef, sgn_b in ((det_b.beta, 1.0), (det_b.beta.conjugate(), -1.0)):
            p = _kernel_phase(kind, sa, sb, sgn_a * det_a.gap, sgn_b * det_b.gap)
            out += 0.5 * coef * p * comm
    return -1j * lam * out


def qc_correction(det_a: Detector, det_b: Detector) -> np.ndarray:
    """Second-order change of rho_A under the qc-model (symmetric propagator)."""
    return _correction(KernelKind.SYMMETRIC, det_a, det_b)


def qc_second_order(det_a: Detector, det_b: Detector) -> np.ndarray:
    """rho_A0 plus its second-order qc correction.

    Returned as a bare matrix: the truncated expansion need not be positive.
    """
    return det_a.rho0 + qc_correction(det_a, det_b)


def qft_signal_term(det_a: Detector, det_b: Detector) -> np.ndarray:
    """Signalling part of the leading-order QFT correction (retarded propagator only)."""
    return _correction(KernelKind.RETARDED, det_a, det_b)


def norm_bound_check(det_a: Detector, c_total: float, change: np.ndarray, det_b: Optional[Detector] = None) -> bool:
    """||d rho_A|| <= 2 lam^2 |C_a|, lam^2 = lam_a lam_b (lam_a^2 if B is not given)."""
    lam2 = abs(det_a.coupling * (det_b.coupling if det_b is not None else det_a.coupling))
    return float(np.linalg.norm(change, 2)) <= 2 * lam2 * abs(c_total) + NORM_BOUND_SLACK


# ---------------------------------------------------------------------------
# brute-force Dyson oracle


def _source_field(emitter: Detector, t: float, L: float) -> np.ndarray:
    """Operator-valued retarded field of `emitter` at distance L and time t."""
    s = emitter.smearing
    lo, hi = s.switching.support
    if s.dim == 3:
        tr = t - L
        if not lo <= tr <= hi:
            return np.zeros((2, 2), dtype=complex)
        return s.amplitude * monopole(tr, emitter.gap) / (4 * math.pi * L)
    top = min(hi, t - L)
    if top <= lo:
        return np.zeros((2, 2), dtype=complex)
    up = segment_exp_integral(emitter.gap, lo, top)
    return 0.5 * s.amplitude * (SIGMA_PLUS * up + SIGMA_MINUS * np.conj(up))


def _time_grid(breaks: list[float], n_steps: int):
    """Midpoint nodes/weights with panels cut at every breakpoint."""
    edges = np.unique(np.asarray(breaks, dtype=float))
    span = edges[-1] - edges[0]
    if span <= 0:
        return np.empty(0), np.empty(0)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        k = max(1, int(round(n_steps * (hi - lo) / span)))
        h = (hi - lo) / k
        nodes.append(lo + h * (np.arange(k) + 0.5))
        weights.append(np.full(k, h))
    return np.concatenate(nodes), np.concatenate(weights)


def dyson_oracle(
    det_a: Detector,
    det_b: Detector,
    rho0_joint: Optional[PairState] = None,
    n_steps: int = 4096,
) -> np.ndarray:
    """rho_0 + rho^(2) of the joint system (computational basis, A (x) B).

    H_c(t) = (lam_a lam_b / 2) [Lambda_a mu_a(t) (x) phi_b(t) + phi_a(t) (x) Lambda_b mu_b(t)],
    with phi_i the retarded field sourced by detector i's monopole. The time
    integral of H_c is a midpoint sum whose panels are cut at the window
    edges and their light-crossing shifts. Pointlike window smearings only.
    """
    if n_steps < 64:
        raise ValueError("n_steps must be at least 64")
    sa, sb = det_a.smearing, det_b.smearing
    if not (sa.is_sharp and sb.is_sharp):
        raise TypeError("the Dyson oracle handles pointlike window smearings only")
    L = distance(sa, sb)
    if sa.dim == 3 and L == 0.0:
        raise ValueError("coincident pointlike detectors in 3+1")
    if rho0_joint is None:
        rho0 = np.kron(det_a.rho0, det_b.rho0)
    else:
        rho0 = rho0_joint.computational()
    lam = det_a.coupling * det_b.coupling
    if lam == 0.0:
        return rho0.copy()
    (a0, a1), (b0, b1) = sa.switching.support, sb.switching.support
    breaks = [a0, a1, b0, b1, a0 + L, a1 + L, b0 + L, b1 + L]
    ts, hs = _time_grid(breaks, n_steps)
    u2 = np.zeros((4, 4), dtype=complex)
    for t, h in zip(ts, hs):
        if a0 <= t <= a1:
            u2 += h * sa.amplitude * np.kron(monopole(t, det_a.gap), _source_field(det_b, t, L))
        if b0 <= t <= b1:
            u2 += h * sb.amplitude * np.kron(_source_field(det_a, t, L), monopole(t, det_b.gap))
    u2 *= -0.5j * lam
    return rho0 + u2 @ rho0 + rho0 @ u2.conj().T


def dyson_correction_a(det_a: Detector, det_b: Detector, n_steps: int = 4096) -> np.ndarray:
    """Second-order change of rho_A from the Dyson oracle."""
    return partial_trace_b(dyson_oracle(det_a, det_b, n_steps=n_steps)) - det_a.rho0
