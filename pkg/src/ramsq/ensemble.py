"""Monte Carlo disorder oracle for the closed-form ensemble averages.

Each disorder realization carries per-channel transmitted and reflected
weights with uniform random phases, plus one aggregated spontaneous
weight, tied together by the flux constraint

    sum_i T_i + sum_j R_j - V = 1

which holds exactly for every realization, not just on average.  The
single-realization variance evaluators below average to the closed
forms in ``analytic`` over the phase (and magnitude) ensemble, giving an
independent numerical check of those formulas.

Determinism contract: realization ``k`` for seed ``s`` is produced from
a Philox counter-based stream with key ``s`` and counter ``k * 2**128``,
so (seed, draw index) -> realization is a pure function.  Draws can be
evaluated in any order or partition; estimates are reduced from the
index-ordered value vector and are bit-identical across runs.

Magnitude modes
---------------
MEAN_MAGNITUDES freezes every magnitude at its ensemble mean and leaves
only the phases random; shaped-quadrature estimates then have zero
spread, a deliberately sharp test of the algebra.

EXPONENTIAL_MAGNITUDES adds Rayleigh-speckle-like magnitude statistics
while keeping the constraint exact and the channel-sum means exactly
(t_bar, r_bar, v_bar).  Naively rescaling independent exponential draws
by the common factor that restores the constraint fails both demands:
the factor 1/(sum T + sum R - V) correlates with each magnitude and
biases the means by tens of percent, and its denominator can turn
negative wherever v_bar is sizable.  Instead the spontaneous weight is
drawn free, V ~ Exp(v_bar), the constraint then fixes the channel total
sum T + sum R = 1 + V, a Beta-distributed share with mean exactly
t_bar/(t_bar + r_bar) splits that total between transmission and
reflection, and normalized exponential draws (equivalently, iid
exponentials conditioned on their sum) spread each group total over its
channels.  When t_bar = r_bar this reproduces exactly the law of iid
exponential draws rescaled onto the constraint surface; for unequal
means it is the mean-exact generalization.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import betaincinv

from .analytic import mean_coefficients
from .core import EnsembleCoefficients, InputState, MediumSpec, ParameterError, validate_medium

# Each draw index owns a disjoint 2**128-wide counter block, far more
# stream than any realization consumes.
_COUNTER_BLOCK = 1 << 128

# Beta concentration for the transmission/reflection split: the total
# shape matches the 2N unit-shape (exponential) channel draws it stands
# in for, and reduces to Beta(N, N) = the equal-means exponential law.
_SPLIT_SHAPE_PER_CHANNEL = 2


class SamplerMode(enum.Enum):
    MEAN_MAGNITUDES = "mean"
    EXPONENTIAL_MAGNITUDES = "exponential"


@dataclass(frozen=True)
class SamplerConfig:
    """Monte Carlo controls: magnitude mode, draw count and seed."""

    mode: SamplerMode = SamplerMode.MEAN_MAGNITUDES
    realizations: int = 10_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.realizations < 1:
            raise ParameterError(
                f"realizations must be >= 1 (got {self.realizations})"
            )


@dataclass(frozen=True, eq=False)
class DisorderRealization:
    """One frozen disorder configuration of the slab.

    Arrays hold one entry per channel; the spontaneous contribution is
    aggregated into a single weight and phase.  All magnitudes are
    nonnegative and satisfy the flux constraint to float precision.
    """

    trans_mags: np.ndarray
    trans_phases: np.ndarray
    refl_mags: np.ndarray
    refl_phases: np.ndarray
    spont_mag: float
    spont_phase: float

    def flux_residual(self) -> float:
        return float(np.sum(self.trans_mags) + np.sum(self.refl_mags) - self.spont_mag - 1.0)


@dataclass(frozen=True)
class McEstimate:
    """Sample mean, standard error of the mean, and the draw count."""

    mean: float
    std_error: float
    realizations: int


def _uniform_columns(mode: SamplerMode, channels: int) -> int:
    # Fixed per-draw layout: phases first (trans, refl, spont), then the
    # exponential-mode magnitude draws (V, split share, two group splits).
    if mode is SamplerMode.MEAN_MAGNITUDES:
        return 2 * channels + 1
    return 4 * channels + 3


@functools.lru_cache(maxsize=4)
def _uniform_table(seed: int, columns: int, count: int) -> np.ndarray:
    """Uniforms for draws [0, count); row k is pure in (seed, k)."""
    table = np.empty((count, columns))
    for k in range(count):
        stream = np.random.Generator(np.random.Philox(key=seed, counter=k * _COUNTER_BLOCK))
        table[k] = stream.random(columns)
    table.flags.writeable = False
    return table


def _uniforms_for(config: SamplerConfig, channels: int, draw_index: int) -> np.ndarray:
    # A fresh stream reproduces the table row for the same index, so
    # single draws never pay for a full table build.
    columns = _uniform_columns(config.mode, channels)
    stream = np.random.Generator(
        np.random.Philox(key=config.seed, counter=draw_index * _COUNTER_BLOCK)
    )
    return stream.random(columns)


def _magnitudes(
    coef: EnsembleCoefficients, channels: int, mode: SamplerMode, uniforms: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Magnitude arrays (T, R, V) for a (draws, columns) uniform block."""
    draws = uniforms.shape[0]
    if mode is SamplerMode.MEAN_MAGNITUDES:
        trans = np.full((draws, channels), coef.t_per_channel(channels))
        refl = np.full((draws, channels), coef.r_per_channel(channels))
        spont = np.full(draws, coef.v_bar)
        return trans, refl, spont

    base = 2 * channels + 1
    u_spont = uniforms[:, base]
    u_split = uniforms[:, base + 1]
    u_trans = uniforms[:, base + 2 : base + 2 + channels]
    u_refl = uniforms[:, base + 2 + channels : base + 2 + 2 * channels]

    if coef.v_bar > 0.0:
        spont = -coef.v_bar * np.log1p(-u_spont)
    else:
        spont = np.zeros(draws)
    total = 1.0 + spont

    trans_weight = coef.t_bar / (coef.t_bar + coef.r_bar)
    shape = _SPLIT_SHAPE_PER_CHANNEL * channels
    trans_share = betaincinv(shape * trans_weight, shape * (1.0 - trans_weight), u_split)

    trans_draws = -np.log1p(-u_trans)
    refl_draws = -np.log1p(-u_refl)
    trans = (total * trans_share)[:, None] * (trans_draws / trans_draws.sum(axis=1, keepdims=True))
    refl = (total * (1.0 - trans_share))[:, None] * (refl_draws / refl_draws.sum(axis=1, keepdims=True))
    return trans, refl, spont


def _phases(channels: int, uniforms: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    two_pi = 2.0 * math.pi
    return (
        two_pi * uniforms[:, :channels],
        two_pi * uniforms[:, channels : 2 * channels],
        two_pi * uniforms[:, 2 * channels],
    )


@functools.lru_cache(maxsize=8)
def _magnitude_table(
    t_bar: float,
    r_bar: float,
    v_bar: float,
    channels: int,
    mode: SamplerMode,
    seed: int,
    count: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Magnitude arrays for the full draw table, shared across quantities.

    Keyed on the coefficient values rather than the medium so the four
    quadrature estimates of one parameter point reuse one
    materialization; the exponential-mode beta inversion dominates the
    per-point cost otherwise.
    """
    coef = EnsembleCoefficients(t_bar=t_bar, r_bar=r_bar, v_bar=v_bar)
    table = _uniform_table(seed, _uniform_columns(mode, channels), count)
    trans, refl, spont = _magnitudes(coef, channels, mode, table)
    for arr in (trans, refl, spont):
        arr.flags.writeable = False
    return trans, refl, spont


@functools.lru_cache(maxsize=4)
def _phase_mix_table(
    seed: int, channels: int, columns: int, count: int
) -> tuple[np.ndarray, np.ndarray]:
    """cos^2 and sin^2 of the transmission phases for the full table.

    Phase columns do not depend on the medium, so one entry serves every
    parameter point of a scan at fixed seed and draw count.
    """
    table = _uniform_table(seed, columns, count)
    trans_ph = 2.0 * math.pi * table[:, :channels]
    cos_sq = np.cos(trans_ph) ** 2
    sin_sq = np.sin(trans_ph) ** 2
    cos_sq.flags.writeable = False
    sin_sq.flags.writeable = False
    return cos_sq, sin_sq


def sample_realization(
    spec: MediumSpec, config: SamplerConfig, draw_index: int
) -> DisorderRealization:
    """Disorder realization ``draw_index``; pure in (seed, index)."""
    validate_medium(spec)
    if draw_index < 0:
        raise ParameterError(f"draw_index must be >= 0 (got {draw_index})")
    coef = mean_coefficients(spec)
    block = _uniforms_for(config, spec.channels, draw_index)[None, :]
    trans, refl, spont = _magnitudes(coef, spec.channels, config.mode, block)
    trans_ph, refl_ph, spont_ph = _phases(spec.channels, block)
    return DisorderRealization(
        trans_mags=trans[0],
        trans_phases=trans_ph[0],
        refl_mags=refl[0],
        refl_phases=refl_ph[0],
        spont_mag=float(spont[0]),
        spont_phase=float(spont_ph[0]),
    )


def variance_x_wfs_single(real: DisorderRealization, state: InputState) -> float:
    """Shaped squeezed-quadrature variance of one realization.

    Shaping cancels the transmission phases, so only magnitudes enter:
    sum T e^(-2r) + sum R + V.  Reflection and spontaneous phases drop
    out exactly (their vacuum variances are phase-isotropic).
    """
    return float(
        np.sum(real.trans_mags) * state.x_variance
        + np.sum(real.refl_mags)
        + real.spont_mag
    )


def variance_x_nowfs_single(real: DisorderRealization, state: InputState) -> float:
    """Unshaped squeezed-quadrature variance of one realization.

    The random transmission phase of each channel rotates its input
    quadratures: sum T (cos^2 phi e^(-2r) + sin^2 phi e^(+2r)) + sum R + V.
    """
    cos_sq = np.cos(real.trans_phases) ** 2
    sin_sq = np.sin(real.trans_phases) ** 2
    mixed = np.sum(real.trans_mags * (cos_sq * state.x_variance + sin_sq * state.p_variance))
    return float(mixed + np.sum(real.refl_mags) + real.spont_mag)


def variance_p_single(real: DisorderRealization, state: InputState, shaped: bool) -> float:
    """Anti-squeezed-quadrature variance of one realization.

    Mirror of the x evaluators with e^(-2r) and e^(+2r) exchanged in the
    transmission term.
    """
    if shaped:
        return float(
            np.sum(real.trans_mags) * state.p_variance
            + np.sum(real.refl_mags)
            + real.spont_mag
        )
    cos_sq = np.cos(real.trans_phases) ** 2
    sin_sq = np.sin(real.trans_phases) ** 2
    mixed = np.sum(real.trans_mags * (cos_sq * state.p_variance + sin_sq * state.x_variance))
    return float(mixed + np.sum(real.refl_mags) + real.spont_mag)


def mean_amplitude_check(real: DisorderRealization, state: InputState) -> tuple[float, float]:
    """Shaped output quadrature means (x, p) of one realization.

    With the displacement applied after squeezing, the input means are
    <x> = 2 Re(alpha) and <p> = 2 Im(alpha); shaping adds the channel
    amplitudes coherently, so each mean is scaled by sum sqrt(T).
    """
    amp_sum = float(np.sum(np.sqrt(real.trans_mags)))
    return (
        amp_sum * 2.0 * state.amplitude.real,
        amp_sum * 2.0 * state.amplitude.imag,
    )


_QUANTITIES = ("x_wfs", "x_nowfs", "p_wfs", "p_nowfs")


def _batch_values(
    quantity: str,
    state: InputState,
    trans: np.ndarray,
    refl: np.ndarray,
    spont: np.ndarray,
    cos_sq: np.ndarray | None,
    sin_sq: np.ndarray | None,
) -> np.ndarray:
    # Mirrors the *_single evaluators term for term so scalar and batch
    # paths agree bit for bit.
    if quantity == "x_wfs":
        return np.sum(trans, axis=1) * state.x_variance + np.sum(refl, axis=1) + spont
    if quantity == "p_wfs":
        return np.sum(trans, axis=1) * state.p_variance + np.sum(refl, axis=1) + spont
    if quantity == "x_nowfs":
        mixed = np.sum(trans * (cos_sq * state.x_variance + sin_sq * state.p_variance), axis=1)
    elif quantity == "p_nowfs":
        mixed = np.sum(trans * (cos_sq * state.p_variance + sin_sq * state.x_variance), axis=1)
    else:
        raise ValueError(f"unknown quantity {quantity!r}; expected one of {_QUANTITIES}")
    return mixed + np.sum(refl, axis=1) + spont


def realization_values(
    spec: MediumSpec, state: InputState, config: SamplerConfig, quantity: str
) -> np.ndarray:
    """Index-ordered per-realization values for draws [0, realizations)."""
    validate_medium(spec)
    coef = mean_coefficients(spec)
    trans, refl, spont = _magnitude_table(
        coef.t_bar,
        coef.r_bar,
        coef.v_bar,
        spec.channels,
        config.mode,
        config.seed,
        config.realizations,
    )
    if quantity in ("x_wfs", "p_wfs"):
        cos_sq = sin_sq = None
    else:
        columns = _uniform_columns(config.mode, spec.channels)
        cos_sq, sin_sq = _phase_mix_table(
            config.seed, spec.channels, columns, config.realizations
        )
    return _batch_values(quantity, state, trans, refl, spont, cos_sq, sin_sq)


def mc_average(
    spec: MediumSpec, state: InputState, config: SamplerConfig, quantity: str
) -> McEstimate:
    """Monte Carlo estimate of one averaged output variance.

    Values are always reduced in draw-index order from the full value
    vector, so the estimate does not depend on how the draws were
    scheduled.  The mean and spread are accumulated about values[0]
    (shifted two-pass), which keeps a phase-independent integrand at
    exactly zero spread instead of accumulating rounding noise.
    """
    if config.realizations < 2:
        raise ParameterError(
            f"need >= 2 realizations for a standard error (got {config.realizations})"
        )
    values = realization_values(spec, state, config, quantity)
    shift = values[0]
    centered = values - shift
    offset = float(np.mean(centered))
    mean = float(shift + offset)
    sum_sq = float(np.sum((centered - offset) ** 2))
    std_error = math.sqrt(sum_sq / (config.realizations - 1)) / math.sqrt(config.realizations)
    return McEstimate(mean=mean, std_error=std_error, realizations=config.realizations)
