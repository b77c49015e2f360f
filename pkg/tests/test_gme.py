import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcc.estimators import estimator_split
from qcc.geometry import standard_setup
from qcc.gme import (
    C_LIGHT,
    GmeParameters,
    effective_coupling,
    from_natural,
    regime_report,
    to_natural,
)

REFERENCE = dict(m1=1e-14, m2=1e-14, L=1e-6, T=1.0)


def test_effective_coupling_value_and_scaling():
    lam2 = effective_coupling(1e-14, 1e-14)
    assert lam2 == pytest.approx(6.63e-13, rel=1e-3)
    assert effective_coupling(0.0, 1e-14) == 0.0
    assert effective_coupling(2e-14, 1e-14) == pytest.approx(2 * lam2)
    with pytest.raises(ValueError):
        effective_coupling(-1.0, 1.0)


def test_reference_regime():
    r = regime_report(GmeParameters(**REFERENCE))
    assert r.T_over_Lc == pytest.approx(2.998e14)
    assert r.required_resolution == pytest.approx(3.3356e-15, rel=1e-4)
    assert r.qc_indistinguishable
    assert 1e-14 <= r.lambda_sq <= 1e-12


def test_fine_resolution_breaks_indistinguishability():
    r = regime_report(GmeParameters(**REFERENCE, resolution=1e-16))
    assert not r.resolution_ok and not r.qc_indistinguishable


def test_each_test_can_fail():
    assert not regime_report(GmeParameters(1e-14, 1e-14, 1e-6, 1e-12)).ratio_ok
    assert not regime_report(GmeParameters(1e-6, 1e-6, 1e-6, 1.0)).coupling_ok


def test_parameter_validation():
    with pytest.raises(ValueError):
        GmeParameters(1e-14, 1e-14, 0.0, 1.0)
    with pytest.raises(ValueError):
        GmeParameters(1e-14, 1e-14, 1e-6, 1.0, epsilon=1.5)


@given(L=st.floats(1e-9, 1.0), T=st.floats(1e-6, 1e3))
def test_unit_round_trip(L, T):
    assert from_natural(*to_natural(L, T)) == pytest.approx((L, T), rel=1e-14)


def test_ratio_from_natural_units_matches_report():
    L, T = 1e-6, 1e-9
    Ln, Tn = to_natural(L, T)
    ratio = estimator_split(standard_setup("fig2", Ln, Tn)).ratio_rtotal
    assert ratio == pytest.approx(1 / regime_report(GmeParameters(1e-14, 1e-14, L, T)).T_over_Lc, rel=1e-12)
    assert Tn / Ln == pytest.approx(T * C_LIGHT / L)
    assert math.isfinite(ratio)
