import math

import pytest

from qcc.fields import BoxTooSmallError, hdiff, neutral_source, sourced_field
from qcc.geometry import SpacetimePoint
from qcc.smearing import GaussianProfile, GaussianSwitching, Pointlike, Smearing, Window


def test_field_vanishes_before_source_switches_on():
    src = Smearing(Pointlike((0.0,)), GaussianSwitching(100.0, 1.0))
    assert sourced_field(src, SpacetimePoint(0.0, (0.5,))) == 0.0


def test_field_of_long_switching_grows_linearly():
    # a very wide switching acts like a unit step: phi(t) - phi(t0) = (t - t0)/2
    src = Smearing(Pointlike((0.0,)), GaussianSwitching(0.0, 1e5))
    delta = 0.5
    grown = sourced_field(src, SpacetimePoint(10.0 + delta, (delta,))) - sourced_field(src, SpacetimePoint(delta, (delta,)))
    assert grown == pytest.approx(5.0, rel=1e-6)


def test_field_is_linear_in_amplitude():
    src = Smearing(GaussianProfile((0.0,), 0.5), GaussianSwitching(0.0, 3.0))
    p = SpacetimePoint(2.0, (0.3,))
    assert sourced_field(src.scaled(2.0), p) == pytest.approx(2 * sourced_field(src, p), rel=1e-12)


def test_smeared_field_matches_pointlike_for_narrow_profile():
    p = SpacetimePoint(1.0, (2.0,))
    wide = Smearing(GaussianProfile((0.0,), 1e-3), GaussianSwitching(0.0, 1.0))
    point = Smearing(Pointlike((0.0,)), GaussianSwitching(0.0, 1.0))
    assert sourced_field(wide, p) == pytest.approx(sourced_field(point, p), rel=1e-5)


def test_window_switching_rejected():
    with pytest.raises(ValueError, match="smooth"):
        sourced_field(Smearing(Pointlike((0.0,)), Window(0, 1)), SpacetimePoint(1.0, (0.0,)))
    with pytest.raises(ValueError):
        hdiff(1.0, Smearing(Pointlike((0.0,)), Window(0, 1)))


def test_3p1_rejected():
    with pytest.raises(ValueError):
        sourced_field(Smearing(Pointlike((0.0, 0.0, 0.0)), GaussianSwitching(0, 1)), SpacetimePoint(0, (1.0, 0, 0)))


def test_hdiff_zero_source():
    assert hdiff(10.0, neutral_source(amplitude=0.0)).value == 0.0


@pytest.mark.parametrize("T", [20.0, 40.0, 80.0])
def test_hdiff_quarter_scaling(T):
    src = neutral_source()
    assert hdiff(2 * T, src).value / hdiff(T, src).value == pytest.approx(0.25, rel=0.05)


def test_hdiff_adiabatic_limit_is_small():
    src = neutral_source()
    h_fast, h_slow = hdiff(5.0, src).value, hdiff(500.0, src).value
    assert h_slow < 1e-3 * h_fast
    # leading coefficient T^2 H -> sqrt(pi)/2 for the unit neutral source
    assert 500.0**2 * h_slow == pytest.approx(math.sqrt(math.pi) / 2, rel=0.02)


def test_charged_source_does_not_decay_like_inverse_square():
    # a source with net charge has a non-localized static field in 1+1
    src = Smearing(Pointlike((0.0,)), GaussianSwitching(0.0, 1.0))
    ratio = hdiff(40.0, src).value / hdiff(20.0, src).value
    assert ratio > 1.0


def test_box_too_small():
    with pytest.raises(BoxTooSmallError):
        hdiff(20.0, neutral_source(), box=15.0)
