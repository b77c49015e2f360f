"""Exact qc-model evolution of two gapless (Omega = 0) detectors.

The monopoles are time independent, so the interaction commutes with itself
at all times and

    U = exp(-(i/2) Delta_ab mu_a (x) mu_b),   Delta_ab = lam^2 Delta(Lambda_a, Lambda_b).

In the mu-eigenbasis (++, +-, -+, --) U is diagonal with eigenvalues
exp(-(i/2) Delta_ab s_k), s = (+1, -1, -1, +1), so evolution just multiplies
the coherences rho_kl by exp(-(i/2) Delta_ab (s_k - s_l)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qcc.geometry import SetupGeometry
from qcc.propagators import smeared_symmetric
from qcc.smearing import Smearing
from qcc.states import PairState, partial_trace_b

MU_SIGNS = np.array([1.0, -1.0, -1.0, 1.0])


class OutOfDomainError(ValueError):
    pass


@dataclass(frozen=True)
class NonPertReport:
    delta_ab: float
    delta_c: float
    delta_r: float
    N_a: float
    N_a_causal: float
    theta_a: float
    theta_a_causal: float
    theta_a_retro: float
    period: float
    shift: float

    def row(self, T: float) -> tuple[float, ...]:
        return (T, self.N_a, self.N_a_causal, self.theta_a, self.theta_a_causal, self.theta_a_retro)


def delta_ab(lam: float, sa: Smearing, sb: Smearing, dim: int | None = None) -> float:
    return lam * lam * smeared_symmetric(sa, sb, dim)


def phase_matrix(d_ab: float) -> np.ndarray:
    """Elementwise factors exp(-(i/2) Delta_ab (s_k - s_l))."""
    diff = MU_SIGNS[:, None] - MU_SIGNS[None, :]
    return np.exp(-0.5j * d_ab * diff)


def evolve(d_ab: float, rho0: PairState) -> PairState:
    if not isinstance(rho0, PairState):
        rho0 = PairState(rho0)
    return PairState(rho0.matrix * phase_matrix(d_ab))


def unitary(d_ab: float) -> np.ndarray:
    """The evolution operator in the mu-eigenbasis."""
    return np.diag(np.exp(-0.5j * d_ab * MU_SIGNS))


def reduce_a(rho: PairState) -> np.ndarray:
    """A's reduced state in the mu-eigenbasis (|+>, |->)."""
    return partial_trace_b(rho.matrix)


def state_change_a(d_ab: float, rho0: PairState) -> np.ndarray:
    """rho_A(final) - rho_A(initial) in the mu-eigenbasis.

    Only the A-coherences move:
      (+-) entry: (e^{-i D} - 1) rho_13 + (e^{i D} - 1) rho_24
      (-+) entry: (e^{i D} - 1) rho_31 + (e^{-i D} - 1) rho_42
    (1-based indices in the order ++, +-, -+, --).
    """
    r = rho0.matrix
    down, up = np.exp(-1j * d_ab) - 1.0, np.exp(1j * d_ab) - 1.0
    out = np.zeros((2, 2), dtype=complex)
    out[0, 1] = down * r[0, 2] + up * r[1, 3]
    out[1, 0] = up * r[2, 0] + down * r[3, 1]
    return out


def norm_estimator(d_ab: float) -> float:
    """N_a = |sin(Delta_ab / 2)|, half of |e^{i Delta_ab} - 1|."""
    return abs(math.sin(0.5 * math.remainder(d_ab, 2 * math.pi)))


def arg_estimator(d_ab: float) -> float:
    """theta_a = Delta_ab, kept unreduced (an accumulated phase)."""
    return float(d_ab)


def np_split(setup: SetupGeometry, lam: float) -> NonPertReport:
    """Causal/retrocausal split of the gapless estimators on the 3+1 geometry (T > 2L).

    theta_c = lam^2 T / (2 pi L), theta_r = lam^2 / (2 pi),
    N_a = |sin((theta_c + theta_r) / 2)|, N_a^(c) = |sin(theta_c / 2)|.
    """
    if setup.dim != 3:
        raise ValueError("the non-perturbative split is given for 3+1")
    L, T = setup.L, setup.T
    if not T > 2 * L:
        raise OutOfDomainError(f"split laws need T > 2L (T={T}, L={L})")
    lam2 = lam * lam
    theta_c = lam2 * T / (2 * math.pi * L)
    theta_r = lam2 / (2 * math.pi)
    total = theta_c + theta_r
    period = 8 * math.pi**2 * L / lam2 if lam2 > 0 else math.inf
    return NonPertReport(
        delta_ab=total,
        delta_c=theta_c,
        delta_r=theta_r,
        N_a=norm_estimator(total),
        N_a_causal=norm_estimator(theta_c),
        theta_a=arg_estimator(total),
        theta_a_causal=theta_c,
        theta_a_retro=theta_r,
        period=period,
        shift=L,
    )


def coupling_tolerance(lam: float, epsilon: float) -> bool:
    """lam^2 / (4 pi) <= epsilon, the sufficient condition for |N_a - N_a^(c)| < epsilon."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    return lam * lam / (4 * math.pi) <= epsilon


def resolution_report(L: float, lam: float) -> tuple[float, float, float]:
    """(shift dT = L, period T_p = 8 pi^2 L / lam^2, the finer of the two).

    lam = 0 gives an infinite period.
    """
    if not L > 0:
        raise ValueError("L must be positive")
    period = 8 * math.pi**2 * L / (lam * lam) if lam != 0 else math.inf
    return L, period, min(L, period)


def near_identity_window(lam: float, epsilon: float) -> bool:
    """True when lam^2/(4 pi) is within epsilon of 2 n pi for some integer n >= 0."""
    x = lam * lam / (4 * math.pi)
    n = round(x / (2 * math.pi))
    return abs(x - 2 * math.pi * n) < epsilon
