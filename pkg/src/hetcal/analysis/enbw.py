# Copyright © 2026 The hetcal Authors. All Rights Reserved.

"""
Equivalent noise bandwidth of the analyzer filter from narrow-tone traces.
"""

from dataclasses import dataclass
import logging
from typing import Optional, Sequence, Union
import warnings

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import OptimizeWarning, curve_fit

from .uncertainty import UncertainValue, propagate_uncertainty
from ..constants import DEFAULT_ENBW_TYPE_B_REL
from ..dataset import Trace
from ..exceptions import HetCalAnalysisError, HetCalEnbwRatioWarning, HetCalInputException

__all__ = ['EnbwResult', 'PeakFit', 'parabolic_peak', 'fitted_peak', 'compute_enbw']

logger = logging.getLogger(__name__)

MIN_TONE_PROMINENCE_DB = 20.0

# Width of the moving average used to locate a line
PEAK_LOCATOR_BINS = 5

# Half width of the peak fit window, in units of the RBW
PEAK_FIT_HALFWIDTH_RBW = 0.4

# Windows with fewer bins use the 3-bin interpolation
MIN_PEAK_FIT_BINS = 7

# Bounds of the response exponent q; 2 is gaussian, large q is flat-topped
_EXPONENT_BOUNDS = (1.0, 20.0)


@dataclass(frozen=True)
class EnbwResult():
    """
    Equivalent noise bandwidth B_neq of the resolution-bandwidth filter

    Args:
        enbw_hz (UncertainValue): ENBW in Hz
        rbw_hz (float): nominal resolution bandwidth
        ratio (float): enbw/rbw
    """
    enbw_hz: UncertainValue
    rbw_hz: float
    ratio: float

    def __post_init__(self):
        if not self.enbw_hz.value > 0:
            raise HetCalInputException(f"ENBW must be positive, was {self.enbw_hz.value}")

    @classmethod
    def from_value(cls, enbw_hz : float, rbw_hz : float, u_rel : float = DEFAULT_ENBW_TYPE_B_REL) -> "EnbwResult":
        """
        ENBW known from a previous calibration, carried as a Type-B input
        """
        return cls(UncertainValue.from_relative(enbw_hz, u_rel, 'typeB', 'enbw'), rbw_hz, enbw_hz / rbw_hz)

    def to_dict(self) -> dict:
        return {
            'enbw_hz': self.enbw_hz.value,
            'u_std_hz': self.enbw_hz.u_std,
            'kind': self.enbw_hz.kind,
            'rbw_hz': self.rbw_hz,
            'ratio': self.ratio,
        }


def parabolic_peak(values, index : int) -> float:
    """
    Peak value around bin index from a 3-point parabola through the log of the values.

    The vertex offset is limited to half a bin. The bin value itself is returned at the ends of the
    trace and where the bin is not a strict local maximum (flat tops, plateaus).

    Args:
        values (array[float]): positive linear values
        index (int): bin of the maximum

    Returns:
        float: interpolated peak (linear)
    """
    values = np.asarray(values, dtype=np.float64)
    if index <= 0 or index >= len(values) - 1:
        return float(values[index])
    y0, y1, y2 = np.log(values[index - 1:index + 2])
    if not (y1 > y0 and y1 > y2):
        return float(values[index])
    offset = np.clip(0.5 * (y0 - y2) / (y0 - 2 * y1 + y2), -0.5, 0.5)
    return float(np.exp(y1 - 0.25 * (y0 - y2) * offset))


@dataclass(frozen=True)
class PeakFit():
    """
    Peak of one filter-shaped line in an averaged trace

    Args:
        value (float): peak power (linear)
        frequency_hz (float): line center
        rel_u (float): relative standard uncertainty of value from the fit residuals (0 for noise-free traces)
        rel_scatter (float): relative rms scatter of the fitted bins about the line
        n_bins (int): bins in the fit window (0 when the 3-bin interpolation was used)
    """
    value: float
    frequency_hz: float
    rel_u: float = 0.0
    rel_scatter: float = 0.0
    n_bins: int = 0


def _line(x, a, x0, b, q):
    return a * np.exp(-b * np.abs(x - x0)**q)


def fitted_peak(freq_hz, values, rbw_hz : float, candidates : Optional[Sequence[int]] = None) -> PeakFit:
    """
    Peak of the line read through the resolution-bandwidth filter, robust to averaged-sweep noise.

    The line is located on a short moving average; its center is the centroid of the bins above half
    of the smoothed maximum. The response a*exp(-b*|x - x0|^q), x in units of the RBW, is then fitted
    by relative least squares to the linear bins within ±0.4 RBW of that center. The family holds the gaussian
    (q = 2), supergaussian and flat-topped responses, so noise-free traces give the exact peak, while
    the per-bin fluctuations of averaged traces are pooled over the whole window instead of a single bin.
    Windows of fewer than 7 bins fall back to :func:`parabolic_peak` at the largest bin.

    Args:
        freq_hz (array[float]): uniform ascending axis
        values (array[float]): positive linear values
        rbw_hz (float): resolution bandwidth
        candidates (array[int], optional): bins the line may lie in. Default whole trace

    Returns:
        PeakFit
    """
    freq = np.asarray(freq_hz, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    candidates = np.arange(values.size) if candidates is None else np.asarray(candidates, dtype=int)

    smoothed = np.convolve(values, np.ones(PEAK_LOCATOR_BINS) / PEAK_LOCATOR_BINS, mode='same')
    index = int(candidates[np.argmax(smoothed[candidates])])
    lobe = candidates[(smoothed[candidates] >= 0.5 * smoothed[index]) & (np.abs(freq[candidates] - freq[index]) <= 1.5 * rbw_hz)]
    center = float(np.sum(freq[lobe] * smoothed[lobe]) / np.sum(smoothed[lobe]))

    halfwidth = PEAK_FIT_HALFWIDTH_RBW * rbw_hz
    window = candidates[np.abs(freq[candidates] - center) <= halfwidth]
    if window.size < MIN_PEAK_FIT_BINS:
        top = int(candidates[np.argmax(values[candidates])])
        return PeakFit(parabolic_peak(values, top), float(freq[top]))

    scale = float(np.max(values[window]))
    x = (freq[window] - center) / rbw_hz
    y = values[window] / scale
    bounds = ([0.0, -PEAK_FIT_HALFWIDTH_RBW, 0.0, _EXPONENT_BOUNDS[0]],
              [np.inf, PEAK_FIT_HALFWIDTH_RBW, np.inf, _EXPONENT_BOUNDS[1]])
    try:
        with warnings.catch_warnings():
            # Flat tops leave the exponent undetermined
            warnings.simplefilter('ignore', OptimizeWarning)
            popt, _ = curve_fit(_line, x, y, p0=[1.0, 0.0, 4 * np.log(2), 2.0], bounds=bounds)
            # Averaged-sweep fluctuations scale with the bin power: refit with relative weights
            sigma = np.maximum(_line(x, *popt), 1e-12)
            popt, pcov = curve_fit(_line, x, y, p0=popt, sigma=sigma, bounds=bounds)
    except RuntimeError:
        top = int(candidates[np.argmax(values[candidates])])
        logger.debug("Peak fit did not converge near %.6g Hz, using the 3-bin interpolation", freq[top])
        return PeakFit(parabolic_peak(values, top), float(freq[top]))

    a = float(popt[0])
    model = _line(x, *popt)
    rel_scatter = float(np.sqrt(np.sum(((y - model) / model)**2) / max(window.size - len(popt), 1)))
    rel_u = np.sqrt(pcov[0, 0]) / a if np.isfinite(pcov[0, 0]) and a > 0 else rel_scatter / np.sqrt(window.size)
    return PeakFit(value=a * scale,
                   frequency_hz=center + float(popt[1]) * rbw_hz,
                   rel_u=float(rel_u),
                   rel_scatter=rel_scatter,
                   n_bins=int(window.size))


def _single_enbw(trace : Trace, rbw_hz : float, reference_power : float) -> tuple:
    trace.check_axis()
    linear = trace.to_linear(reference_power)
    index = int(np.argmax(linear))
    prominence_db = 10 * np.log10(linear[index] / np.median(linear))
    if prominence_db < MIN_TONE_PROMINENCE_DB:
        raise HetCalAnalysisError(
            f"No dominant tone in the calibration trace: peak is {prominence_db:.1f} dB above the median (needs >= {MIN_TONE_PROMINENCE_DB:.0f} dB)")
    peak = fitted_peak(trace.freq_hz, linear, rbw_hz)
    width = float(trapezoid(linear / peak.value, trace.freq_hz))
    # Within-trace dispersion: the fitted peak and the bin scatter carried into the integral
    rel_integral = peak.rel_scatter * np.sqrt(np.sum(linear**2)) / np.sum(linear)
    return width, propagate_uncertainty([peak.rel_u, rel_integral])


def compute_enbw(tone_traces : Union[Trace, Sequence[Trace]], rbw_hz : float, reference_power : float = 1.0,
                 type_b_rel : float = DEFAULT_ENBW_TYPE_B_REL) -> EnbwResult:
    """
    Integrate the peak-normalized power response of a narrow-tone trace over the full span.

    The peak comes from :func:`fitted_peak`. The integral uses the trapezoid rule.

    Args:
        tone_traces (Trace or list[Trace]): calibration trace(s)
        rbw_hz (float): nominal resolution bandwidth
        reference_power (float): linear power of 0 dBmV
        type_b_rel (float): relative Type-B floor. Default 0.3%

    Returns:
        EnbwResult: for several traces, the standard error across traces combined with the Type-B floor;
        for one trace, the floor combined with the within-trace dispersion (zero for noise-free traces)

    Raises:
        HetCalAnalysisError: no dominant tone
        HetCalDataError: non-uniform or non-monotone axis

    Example
    -------
        result = compute_enbw(trace, 1e6)
        result.enbw_hz.value  # 1.0645e6 for a gaussian filter
    """
    if rbw_hz <= 0:
        raise HetCalInputException(f"rbw_hz={rbw_hz} must be positive")
    if isinstance(tone_traces, Trace):
        tone_traces = [tone_traces]
    if len(tone_traces) == 0:
        raise HetCalInputException("compute_enbw needs at least one tone trace")

    singles = [_single_enbw(trace, rbw_hz, reference_power) for trace in tone_traces]
    widths = np.array([width for width, _ in singles])
    mean = float(np.mean(widths))
    if len(widths) == 1:
        rel = propagate_uncertainty([type_b_rel, singles[0][1]])
    else:
        rel = propagate_uncertainty([np.std(widths, ddof=1) / np.sqrt(len(widths)) / mean, type_b_rel])
    enbw = UncertainValue.from_relative(mean, rel, 'combined', 'enbw')

    ratio = enbw.value / rbw_hz
    if ratio < 1 - 1e-3:
        warnings.warn(f"ENBW/RBW ratio {ratio:.4f} is below 1; check the RBW setting of the calibration trace", HetCalEnbwRatioWarning)
    logger.debug("ENBW %.6g Hz from %d trace(s), ratio %.5f", enbw.value, len(widths), ratio)
    return EnbwResult(enbw, rbw_hz, ratio)
