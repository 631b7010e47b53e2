"""Sub-shot-noise condition and region scan for the shaped output.

With wavefront shaping the averaged squeezed-quadrature variance drops
below the shot-noise level 1 exactly when

    margin = sin(l/La) (1 + e^(-2r)) + 2 sin((L-l)/La) - 2 sin(L/La) < 0

which is (Var x_wfs - 1) * sin(L/La), so the margin and the variance
excess share a sign everywhere below threshold.  At fixed l/La the
boundary in the gain ratio has a closed form: with p = sin(l/La),
m = (1 - sqrt(1 - p^2)) / p and n = 1 + e^(-2r), the margin is negative
iff sin(L/La) lies between the roots

    M_pm = (m n -+ sqrt(4 m^2 - n^2 + 4)) / (2 (m^2 + 1))

of a quadratic with M_minus < 0 < M_plus <= 1, so the largest admissible
gain ratio is arcsin(M_plus).  The closed form needs l/La < pi/2 where
arcsin inverts the sine uniquely; the region scanner below instead finds
the boundary by bisection in the gain ratio at fixed L/l, which stays
valid on the whole sub-threshold range and never assumes which arcsine
branch applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DomainError,
    InputState,
    MediumSpec,
    ParameterError,
    validate_medium,
)

# Gain ratios inside (pi - GAIN_EXCLUSION, pi) are dropped from scans:
# sin(L/La) -> 0 there and every coefficient diverges on approach to
# the lasing threshold.
GAIN_EXCLUSION = 1e-6

# Bisection controls for the boundary search.
BISECT_TOL = 1e-12
BISECT_MAX_ITER = 200

# "Large squeezing" preset: e^(-2r) = 1e-8.
LARGE_SQUEEZING_R = 0.5 * math.log(1e8)


def snl_condition(spec: MediumSpec, state: InputState) -> float:
    """Margin of the shaped output below shot noise; negative is sub-SNL.

    Needs gain_ratio > 0: the gain-free margin is identically zero while
    the variance comparison is not, so the sign equivalence would break.
    """
    validate_medium(spec)
    if spec.gain_ratio <= 0.0:
        raise ParameterError(
            f"snl_condition needs gain_ratio > 0 (got {spec.gain_ratio}); "
            "gain-free slabs sit below shot noise for any r > 0"
        )
    mfp_gain = spec.mfp_over_amp_length
    n = 1.0 + state.x_variance
    return (
        math.sin(mfp_gain) * n
        + 2.0 * math.sin(spec.gain_ratio - mfp_gain)
        - 2.0 * math.sin(spec.gain_ratio)
    )


@dataclass(frozen=True)
class SnlThreshold:
    """Closed-form boundary at fixed l/La.

    ``p = sin(l/La)``, ``m = (1 - sqrt(1 - p^2))/p``, ``n = 1 + e^(-2r)``;
    ``m_plus`` is the positive quadratic root and ``gain_max = arcsin(m_plus)``
    the largest gain ratio whose shaped output still beats shot noise.
    """

    m: float
    n: float
    p: float
    m_plus: float
    gain_max: float


def threshold_closed_form(mfp_gain: float, state: InputState) -> SnlThreshold:
    """Largest sub-SNL gain ratio at fixed l/La = ``mfp_gain``.

    Valid for 0 < l/La < pi/2; outside, arcsin no longer identifies the
    boundary uniquely and ``DomainError`` is raised.  The returned
    ``gain_max`` is the principal-branch solution: the sign change sits
    at arcsin(M_plus) only while cos(gain_max) = (n - 2 m M_plus)/2 is
    nonnegative.  For n < 2 m M_plus the crossing moves past pi/2 to
    pi - arcsin(M_plus); the region scanner bisects the margin directly
    and stays correct on both branches.
    """
    if not 0.0 < mfp_gain < 0.5 * math.pi:
        raise DomainError(
            f"closed form needs 0 < l/La < pi/2 (got {mfp_gain}); "
            "use the bisection scan outside this range"
        )
    p = math.sin(mfp_gain)
    m = (1.0 - math.sqrt(1.0 - p * p)) / p
    n = 1.0 + state.x_variance
    disc = 4.0 * m * m - n * n + 4.0
    m_plus = (m * n + math.sqrt(disc)) / (2.0 * (m * m + 1.0))
    # m_plus <= 1 analytically; guard the arcsine against the last ulp.
    gain_max = math.asin(min(m_plus, 1.0))
    return SnlThreshold(m=m, n=n, p=p, m_plus=m_plus, gain_max=gain_max)


@dataclass(frozen=True)
class RegionScan:
    """Sub-SNL map over a (thickness, gain) grid.

    ``below_snl[i, j]`` says whether (thickness[i], gain[j]) beats shot
    noise with shaping; ``boundary[i]`` is the bisected gain ratio where
    the margin changes sign along row i, NaN when the row never does.
    """

    thickness: np.ndarray
    gain: np.ndarray
    below_snl: np.ndarray
    boundary: np.ndarray


def _margin_on_row(thickness: float, state: InputState):
    def margin(gain: float) -> float:
        return snl_condition(
            MediumSpec(thickness_ratio=thickness, gain_ratio=gain), state
        )

    return margin


def _bisect_boundary(thickness: float, state: InputState) -> float:
    """Sign change of the margin in gain at fixed L/l, by bisection.

    The margin is negative as gain -> 0+ for any r > 0 and positive at
    the top of the scanned range whenever a boundary exists; rows with
    no sign change (e.g. r = 0) report NaN.
    """
    margin = _margin_on_row(thickness, state)
    lo = 1e-8
    hi = math.pi - GAIN_EXCLUSION
    f_lo = margin(lo)
    f_hi = margin(hi)
    if not (f_lo < 0.0 < f_hi):
        return math.nan
    for _ in range(BISECT_MAX_ITER):
        if hi - lo <= BISECT_TOL:
            break
        mid = 0.5 * (lo + hi)
        if margin(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def region_scan(
    thickness_values: np.ndarray,
    gain_values: np.ndarray,
    state: InputState,
) -> RegionScan:
    """Map the sub-SNL region and bisect its boundary row by row.

    Scanned gain ratios must stay below pi - 1e-6; the margin is checked
    for a single sign change along each row (on the scan grid plus a
    fixed fine mesh) and a ``RuntimeError`` names any row where that
    numerical assumption fails rather than silently keeping one root.
    """
    thickness = np.asarray(thickness_values, dtype=float)
    gain = np.asarray(gain_values, dtype=float)
    if np.any(gain <= 0.0) or np.any(gain >= math.pi - GAIN_EXCLUSION):
        raise ParameterError(
            "scanned gain ratios must lie in (0, pi - 1e-6); the lasing "
            "threshold band is excluded"
        )
    below = np.zeros((thickness.size, gain.size), dtype=bool)
    boundary = np.full(thickness.size, math.nan)
    probe = np.linspace(1e-4, math.pi - GAIN_EXCLUSION, 1024)
    for i, th in enumerate(thickness):
        margin = _margin_on_row(float(th), state)
        row = np.array([margin(float(g)) for g in gain])
        below[i] = row < 0.0
        signs = np.array([margin(float(g)) < 0.0 for g in probe])
        flips = int(np.count_nonzero(signs[1:] != signs[:-1]))
        if flips > 1:
            raise RuntimeError(
                f"margin changes sign {flips} times along L/l = {th}; "
                "the single-boundary assumption does not hold here"
            )
        boundary[i] = _bisect_boundary(float(th), state)
    return RegionScan(thickness=thickness, gain=gain, below_snl=below, boundary=boundary)
