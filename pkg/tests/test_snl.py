"""Sub-shot-noise margin, closed-form boundary and region scanner."""
import math

import numpy as np
import pytest

from ramsq.analytic import full_report, mean_coefficients, variance_x_wfs
from ramsq.core import DomainError, InputState, MediumSpec, ParameterError
from ramsq.snl import (
    LARGE_SQUEEZING_R,
    region_scan,
    snl_condition,
    threshold_closed_form,
)

from oracles import (
    THRESHOLD_01_N1,
    bisect_fixed_point_boundary,
    bisect_gain_threshold,
    margin_at_fixed_mfp_gain,
)

# Row whose boundary fixed point lands exactly at l/La = 0.1 for n = 1.
PINNED_THICKNESS = THRESHOLD_01_N1["gain_max"] / 0.1

# e^(-2r) underflows to zero here, so n = 1 + e^(-2r) is exactly 1.
SATURATED_R = 600.0


def test_large_squeezing_constant():
    assert math.isclose(LARGE_SQUEEZING_R, 0.5 * math.log(1e8), rel_tol=1e-15)
    assert math.exp(-2.0 * LARGE_SQUEEZING_R) == pytest.approx(1e-8, rel=1e-12)


# -- margin ------------------------------------------------------------------

def test_margin_tracks_variance_excess(grid_points):
    # margin = (Var x_wfs - 1) sin(L/La), so values and signs must agree
    for thickness, gain, squeeze in grid_points:
        if gain <= 0.0:
            continue
        spec = MediumSpec(thickness_ratio=thickness, gain_ratio=gain)
        state = InputState(squeeze_r=squeeze)
        margin = snl_condition(spec, state)
        excess = variance_x_wfs(mean_coefficients(spec), state) - 1.0
        assert abs(margin - excess * math.sin(gain)) <= 1e-12
        if abs(excess) > 1e-9:
            assert (margin < 0.0) == (excess < 0.0)


def test_margin_matches_raw_formula(grid_points):
    for thickness, gain, squeeze in grid_points:
        if gain <= 0.0:
            continue
        spec = MediumSpec(thickness_ratio=thickness, gain_ratio=gain)
        state = InputState(squeeze_r=squeeze)
        n = 1.0 + math.exp(-2.0 * squeeze)
        oracle = margin_at_fixed_mfp_gain(gain, gain / thickness, n)
        assert snl_condition(spec, state) == oracle


def test_margin_rejects_gain_free_slab():
    with pytest.raises(ParameterError):
        snl_condition(MediumSpec(thickness_ratio=5.0, gain_ratio=0.0), InputState(1.0))


def test_margin_rejects_negative_gain():
    with pytest.raises(ParameterError):
        snl_condition(MediumSpec(thickness_ratio=5.0, gain_ratio=-0.5), InputState(1.0))


# -- closed-form boundary ----------------------------------------------------

def test_threshold_pinned_point():
    thr = threshold_closed_form(0.1, InputState(squeeze_r=SATURATED_R))
    assert thr.n == 1.0
    assert math.isclose(thr.m_plus, THRESHOLD_01_N1["m_plus"], rel_tol=1e-14)
    assert math.isclose(thr.gain_max, THRESHOLD_01_N1["gain_max"], rel_tol=1e-14)


def test_threshold_against_bisection():
    # closed form vs direct root finding on the margin; the quadratic
    # root fixes sin at the crossing on either side of pi/2, and the
    # principal branch applies while cos = (n - 2 m M_plus)/2 >= 0
    principal = falling = 0
    for mfp_gain in (0.05, 0.3, 0.8, 1.3):
        for squeeze in (0.25, 1.0, 2.5, SATURATED_R):
            state = InputState(squeeze_r=squeeze)
            thr = threshold_closed_form(mfp_gain, state)
            root = bisect_gain_threshold(mfp_gain, 1.0 + state.x_variance)
            if thr.n >= 2.0 * thr.m * thr.m_plus:
                assert abs(thr.gain_max - root) <= 1e-9, (mfp_gain, squeeze)
                principal += 1
            else:
                assert abs((math.pi - thr.gain_max) - root) <= 1e-9, (mfp_gain, squeeze)
                falling += 1
            assert abs(math.cos(root) - 0.5 * (thr.n - 2.0 * thr.m * thr.m_plus)) <= 1e-9
    assert principal > 0 and falling > 0


@pytest.mark.parametrize("mfp_gain", [0.05, 0.1, 0.5, 1.0])
def test_threshold_degenerates_without_squeezing(mfp_gain):
    # n = 2 closes the window: the boundary collapses onto l/La itself
    thr = threshold_closed_form(mfp_gain, InputState(squeeze_r=0.0))
    assert abs(thr.gain_max - mfp_gain) <= 1e-12


def test_threshold_opens_with_squeezing():
    # any squeezing pushes the true boundary above the degenerate point
    for mfp_gain in (0.05, 0.3, 0.8, 1.3):
        for squeeze in (0.1, 1.0, 3.0):
            state = InputState(squeeze_r=squeeze)
            root = bisect_gain_threshold(mfp_gain, 1.0 + state.x_variance)
            assert root > mfp_gain


def test_threshold_root_in_unit_interval():
    for mfp_gain in (1e-6, 0.01, 0.7, 1.5, 0.5 * math.pi - 1e-9):
        for squeeze in (0.0, 0.3, 2.0, SATURATED_R):
            thr = threshold_closed_form(mfp_gain, InputState(squeeze_r=squeeze))
            assert 0.0 < thr.m_plus <= 1.0


def test_margin_changes_sign_at_boundary():
    thr = threshold_closed_form(0.4, InputState(squeeze_r=1.0))
    n = thr.n
    eps = 1e-6
    assert margin_at_fixed_mfp_gain(thr.gain_max - eps, 0.4, n) < 0.0
    assert margin_at_fixed_mfp_gain(thr.gain_max + eps, 0.4, n) > 0.0


@pytest.mark.parametrize("mfp_gain", [0.0, -0.1, 0.5 * math.pi, 2.0])
def test_threshold_domain(mfp_gain):
    with pytest.raises(DomainError):
        threshold_closed_form(mfp_gain, InputState(squeeze_r=1.0))


# -- region scan -------------------------------------------------------------

def scan_grids():
    thickness = np.linspace(1.2, 12.0, 12)
    gain = np.linspace(0.05, 3.1, 25)
    return thickness, gain


def test_region_scan_empty_without_squeezing():
    thickness, gain = scan_grids()
    scan = region_scan(thickness, gain, InputState(squeeze_r=0.0))
    assert not scan.below_snl.any()
    assert np.all(np.isnan(scan.boundary))
    assert np.array_equal(scan.thickness, thickness)
    assert np.array_equal(scan.gain, gain)


def test_region_scan_cells_match_margin():
    thickness, gain = scan_grids()
    state = InputState(squeeze_r=LARGE_SQUEEZING_R)
    scan = region_scan(thickness, gain, state)
    assert scan.below_snl.any()
    for i, th in enumerate(thickness):
        for j, g in enumerate(gain):
            spec = MediumSpec(thickness_ratio=th, gain_ratio=g)
            assert scan.below_snl[i, j] == (snl_condition(spec, state) < 0.0)


def test_region_scan_boundary_splits_rows():
    thickness, gain = scan_grids()
    state = InputState(squeeze_r=1.0)
    scan = region_scan(thickness, gain, state)
    for i in range(thickness.size):
        b = scan.boundary[i]
        if math.isnan(b):
            row = scan.below_snl[i]
            assert row.all() or not row.any()
            continue
        for j, g in enumerate(gain):
            if abs(g - b) > 1e-9:
                assert scan.below_snl[i, j] == (g < b)


def test_region_scan_boundary_is_gain_fixed_point():
    # along a row the boundary solves gain = gain_max(gain / thickness);
    # solve that fixed-point equation through the closed form instead of
    # bisecting the margin and require agreement
    thickness, gain = scan_grids()
    state = InputState(squeeze_r=LARGE_SQUEEZING_R)
    scan = region_scan(thickness, gain, state)
    checked = 0
    for i, th in enumerate(thickness):
        b = scan.boundary[i]
        if math.isnan(b) or b / th >= 0.5 * math.pi:
            continue
        thr = threshold_closed_form(b / th, state)
        if thr.n < 2.0 * thr.m * thr.m_plus:
            continue  # crossing past pi/2: arcsin branch does not apply
        fixed = bisect_fixed_point_boundary(
            float(th), lambda m: threshold_closed_form(m, state).gain_max
        )
        assert abs(b - fixed) <= 1e-9, th
        checked += 1
    assert checked > 0


def test_region_scan_pinned_row():
    # thickness chosen so the fixed point sits at l/La = 0.1 exactly
    state = InputState(squeeze_r=SATURATED_R)
    scan = region_scan(
        np.array([PINNED_THICKNESS]), np.linspace(0.05, 3.1, 10), state
    )
    assert abs(scan.boundary[0] - THRESHOLD_01_N1["gain_max"]) <= 1e-9


def test_region_grows_with_squeezing():
    thickness, gain = scan_grids()
    weak = region_scan(thickness, gain, InputState(squeeze_r=0.5)).below_snl
    strong = region_scan(thickness, gain, InputState(squeeze_r=1.5)).below_snl
    assert np.all(strong[weak])
    assert strong.sum() > weak.sum()


@pytest.mark.parametrize(
    "bad_gain",
    [np.array([0.0, 1.0]), np.array([-0.5, 1.0]), np.array([1.0, math.pi - 1e-7])],
)
def test_region_scan_gain_domain(bad_gain):
    with pytest.raises(ParameterError):
        region_scan(np.array([5.0]), bad_gain, InputState(squeeze_r=1.0))


def test_region_scan_thin_slab_rejected():
    with pytest.raises(ParameterError):
        region_scan(np.array([0.8]), np.array([1.0]), InputState(squeeze_r=1.0))


def test_region_consistent_with_variance_report(grid_points):
    # cross-module: cell membership equals the shaped variance dipping
    # below the vacuum level
    state = InputState(squeeze_r=1.0)
    thickness = np.array(sorted({t for t, _, _ in grid_points}))
    gain = np.array([0.5, 1.0, 2.0, 2.5, 3.0])
    scan = region_scan(thickness, gain, state)
    for i, th in enumerate(thickness):
        for j, g in enumerate(gain):
            rep = full_report(MediumSpec(thickness_ratio=th, gain_ratio=g), state)
            assert scan.below_snl[i, j] == (rep.x_wfs < rep.snl)
