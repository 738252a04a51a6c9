# Copyright © 2026 The hetcal Authors. All Rights Reserved.

"""
Shot-noise referenced efficiency estimator: eta = hbar*omega * B_neq * X / (2 P_alpha).
"""

from dataclasses import dataclass, field
import logging
from typing import Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .calibration import calibrated_power, power_calibration_from_samples
from .enbw import EnbwResult, fitted_peak
from .uncertainty import UncertainValue, propagate_uncertainty
from ..constants import (DEFAULT_COVERAGE_FACTOR, DEFAULT_TYPE_B_REL, DEFAULT_U_REL_ATTENUATION,
                         DEFAULT_U_REL_RESPONSIVITY, photon_energy)
from ..dataset import Dataset
from ..exceptions import HetCalAnalysisError, HetCalInputException

__all__ = [
    'BUDGET_COMPONENTS', 'EfficiencyEstimate', 'extract_spectral_ratio', 'estimate_efficiency',
    'estimate_from_datasets', 'budget_table'
]

logger = logging.getLogger(__name__)

# Minimum ratio of the tone peak to the shot-noise level
MIN_TONE_SNR = 3.0

BUDGET_COMPONENTS = {
    'rel_p_alpha': 'u(P_alpha)/P_alpha',
    'rel_enbw': 'u(B_neq)/B_neq',
    'rel_x': 'u(X)/X',
    'rel_type_b': 'u_B(eta)/eta',
}


@dataclass(frozen=True)
class EfficiencyEstimate():
    """
    Heterodyne detection efficiency with its uncertainty budget.

    Args:
        eta (UncertainValue): efficiency with combined standard uncertainty
        expanded_u (float): k * eta.u_std
        k (float): coverage factor
        budget (dict[str, float]): relative components rel_p_alpha, rel_enbw, rel_x, rel_type_b
        x_ratio (float): measured spectral ratio X
        p_alpha_w (float): calibrated signal power
        enbw_hz (float): equivalent noise bandwidth used
    """
    eta: UncertainValue
    expanded_u: float
    k: float
    budget: dict = field(default_factory=dict)
    x_ratio: float = 0.0
    p_alpha_w: float = 0.0
    enbw_hz: float = 0.0

    def to_dict(self) -> dict:
        return {
            'eta': self.eta.value,
            'u_std': self.eta.u_std,
            'expanded_u': self.expanded_u,
            'k': self.k,
            'x_ratio': self.x_ratio,
            'p_alpha_w': self.p_alpha_w,
            'enbw_hz': self.enbw_hz,
            'budget': dict(self.budget),
        }

    def __str__(self) -> str:
        return f"eta = {self.eta.value:.4f} ± {self.expanded_u:.4f} (k={self.k:g})"


def _window_mask(freq_hz : np.ndarray, region : Optional[Tuple[float, float]]) -> np.ndarray:
    if region is None:
        return np.ones(freq_hz.shape, dtype=bool)
    lower, upper = region
    return (freq_hz >= lower) & (freq_hz <= upper)


def extract_spectral_ratio(ds : Dataset, tone_halfwidth_hz : Optional[float] = None,
                           noise_region : Optional[Tuple[float, float]] = None,
                           exclude_regions : Sequence[Tuple[float, float]] = ()) -> UncertainValue:
    """
    Ratio X of the beat-tone power to the shot-noise level per bin.

    The electronic trace is subtracted from the shot and quadrature traces in linear units. The
    shot level N0 is the mean of the corrected shot trace over the noise region; the tone power S is
    the fitted peak (:func:`fitted_peak`) of (corrected quadrature - corrected shot) within
    +-tone_halfwidth_hz of the IF.

    Args:
        ds (Dataset): acquisition
        tone_halfwidth_hz (float, optional): half width of the tone window. Default 2 RBW
        noise_region (tuple[float, float], optional): frequency range used for N0. Default full span
        exclude_regions (list[tuple[float, float]]): ranges removed from the noise region (spurs)

    Returns:
        UncertainValue: X with its within-trace Type-A standard uncertainty from the residuals of the
        peak fit and the dispersion of the noise region (zero for noise-free traces)

    Raises:
        HetCalAnalysisError: N0 <= 0 after subtraction, tone peak below 3 N0, IF outside span
    """
    esa = ds.esa
    ref = esa['reference_power']
    floor = esa['noise_floor']
    freq = ds.freq_hz
    if tone_halfwidth_hz is None:
        tone_halfwidth_hz = 2 * esa['rbw_hz']
    if not freq[0] <= ds.if_hz <= freq[-1]:
        raise HetCalAnalysisError(f"IF {ds.if_hz} Hz lies outside the trace span [{freq[0]}, {freq[-1]}] Hz")

    electronic = ds.trace_electronic.to_linear(ref)
    shot = ds.trace_shot.to_linear(ref)
    quadrature = ds.trace_quadrature.to_linear(ref)

    noise_mask = _window_mask(freq, noise_region)
    for region in exclude_regions:
        noise_mask &= ~_window_mask(freq, region)
    if np.count_nonzero(noise_mask) < 2:
        raise HetCalInputException("Noise region must contain at least 2 bins")

    shot_corrected = shot - electronic
    n0 = float(np.mean(shot_corrected[noise_mask]))
    if n0 <= 0:
        raise HetCalAnalysisError(
            f"Shot-noise level N0={n0:.6g} is not positive after electronic-noise subtraction (electronic trace exceeds shot trace)")

    tone = np.maximum(np.maximum(quadrature - electronic, floor) - np.maximum(shot_corrected, floor), floor)
    tone_window = np.flatnonzero(np.abs(freq - ds.if_hz) <= tone_halfwidth_hz)
    if tone_window.size == 0:
        raise HetCalAnalysisError(f"Tone window of ±{tone_halfwidth_hz} Hz around {ds.if_hz} Hz contains no bins")
    peak = fitted_peak(freq, tone, esa['rbw_hz'], tone_window)
    s = peak.value
    if s < MIN_TONE_SNR * n0:
        raise HetCalAnalysisError(
            f"Insufficient SNR: tone peak S={s:.6g} is below {MIN_TONE_SNR:g}*N0={MIN_TONE_SNR * n0:.6g} (tone absent or too weak)")

    rel_n0 = np.std(shot_corrected[noise_mask], ddof=1) / np.sqrt(np.count_nonzero(noise_mask)) / n0
    x = s / n0
    logger.debug("Spectral ratio X=%.6g (S=%.6g, N0=%.6g, peak at %.6g Hz)", x, s, n0, peak.frequency_hz)
    return UncertainValue.from_relative(x, propagate_uncertainty([rel_n0, peak.rel_u]), 'typeA', 'x_ratio')


def estimate_efficiency(x : UncertainValue, p_alpha : UncertainValue, enbw : EnbwResult, wavelength_m : float,
                        type_b_rel : float = DEFAULT_TYPE_B_REL, k : float = DEFAULT_COVERAGE_FACTOR) -> EfficiencyEstimate:
    """
    Heterodyne detection efficiency eta = hbar*omega * B_neq * X / (2 P_alpha) with its budget.

    Args:
        x (UncertainValue): spectral ratio X
        p_alpha (UncertainValue): calibrated signal power in W
        enbw (EnbwResult): equivalent noise bandwidth
        wavelength_m (float): signal wavelength
        type_b_rel (float): relative Type-B term for the efficiency. Default 0.5%
        k (float): coverage factor. Default 2

    Returns:
        EfficiencyEstimate

    Raises:
        HetCalInputException: nonpositive power, wavelength or coverage factor, negative X
        HetCalAnalysisError: eta > 1 + 3 u(eta) (inconsistent calibration)

    Example
    -------
        estimate_efficiency(UncertainValue(4.852e4), UncertainValue(10e-9), EnbwResult.from_value(1.12e6, 1e6), 1542e-9)
        # eta = 0.350
    """
    if x.value < 0:
        raise HetCalInputException(f"Spectral ratio X={x.value} must be >= 0")
    if p_alpha.value <= 0:
        raise HetCalInputException(f"Signal power P_alpha={p_alpha.value} W must be positive")
    if wavelength_m <= 0:
        raise HetCalInputException(f"wavelength_m={wavelength_m} must be positive")
    if k <= 0:
        raise HetCalInputException(f"Coverage factor k={k} must be positive")

    b_neq = enbw.enbw_hz
    eta = photon_energy(wavelength_m) * b_neq.value * x.value / (2 * p_alpha.value)
    budget = {
        'rel_p_alpha': p_alpha.rel,
        'rel_enbw': b_neq.rel,
        'rel_x': x.rel if x.value > 0 else 0.0,
        'rel_type_b': float(type_b_rel),
    }
    u_eta = eta * propagate_uncertainty(budget.values())
    if eta > 1 + 3 * u_eta:
        raise HetCalAnalysisError(f"Unphysical efficiency eta={eta:.4f} > 1 + 3u: inconsistent calibration inputs")
    return EfficiencyEstimate(eta=UncertainValue(eta, u_eta, 'combined', 'eta'),
                              expanded_u=k * u_eta,
                              k=k,
                              budget=budget,
                              x_ratio=x.value,
                              p_alpha_w=p_alpha.value,
                              enbw_hz=b_neq.value)


def estimate_from_datasets(datasets : Sequence[Dataset], enbw : EnbwResult, type_b_rel : float = DEFAULT_TYPE_B_REL,
                           k : float = DEFAULT_COVERAGE_FACTOR, u_rel_attenuation : float = DEFAULT_U_REL_ATTENUATION,
                           u_rel_responsivity : float = DEFAULT_U_REL_RESPONSIVITY, **window) -> EfficiencyEstimate:
    """
    Complete estimate from repeated acquisitions at one operating point.

    X is the mean across datasets with its standard error (Type A); a single dataset uses its
    within-trace estimate. P_alpha comes from the pooled, dark-corrected monitor record.

    Args:
        datasets (list[Dataset]): repeated acquisitions sharing wavelength, l and R
        enbw (EnbwResult): equivalent noise bandwidth
        type_b_rel, k: see :func:`estimate_efficiency`
        u_rel_attenuation, u_rel_responsivity (float): relative Type-B uncertainties of l and R

    Keyword Args:
        tone_halfwidth_hz, noise_region, exclude_regions: forwarded to :func:`extract_spectral_ratio`

    Returns:
        EfficiencyEstimate
    """
    datasets = list(datasets)
    if len(datasets) == 0:
        raise HetCalInputException("estimate_from_datasets needs at least one dataset")
    first = datasets[0]
    for ds in datasets[1:]:
        if (ds.wavelength_m, ds.attenuation_l, ds.responsivity) != (first.wavelength_m, first.attenuation_l, first.responsivity):
            raise HetCalInputException("Datasets of one operating point must share wavelength, attenuation l and responsivity R")

    ratios = [extract_spectral_ratio(ds, **window) for ds in datasets]
    if len(ratios) == 1:
        x = ratios[0]
    else:
        values = np.array([r.value for r in ratios])
        x = UncertainValue(float(np.mean(values)), float(np.std(values, ddof=1) / np.sqrt(values.size)), 'typeA', 'x_ratio')

    corrected = np.concatenate([ds.monitor_samples - ds.monitor_dark_mean for ds in datasets])
    cal = power_calibration_from_samples(corrected, first.attenuation_l, first.responsivity, u_rel_attenuation, u_rel_responsivity)
    p_alpha = calibrated_power(cal)

    estimate = estimate_efficiency(x, p_alpha, enbw, first.wavelength_m, type_b_rel, k)
    logger.info("Estimated %s from %d dataset(s), X=%.6g, P_alpha=%.6g W", estimate, len(datasets), x.value, p_alpha.value)
    return estimate


def budget_table(estimate : EfficiencyEstimate) -> pd.DataFrame:
    """
    Uncertainty budget as a table: one row per relative component plus the combined total.

    Columns: component, symbol, relative_u, absolute_u, variance_share
    """
    eta = estimate.eta.value
    total_var = sum(r**2 for r in estimate.budget.values())
    rows = []
    for key, rel in estimate.budget.items():
        rows.append({
            'component': key,
            'symbol': BUDGET_COMPONENTS.get(key, key),
            'relative_u': rel,
            'absolute_u': rel * eta,
            'variance_share': rel**2 / total_var if total_var > 0 else 0.0,
        })
    rows.append({
        'component': 'combined',
        'symbol': 'u(eta)/eta',
        'relative_u': np.sqrt(total_var),
        'absolute_u': estimate.eta.u_std,
        'variance_share': 1.0 if total_var > 0 else 0.0,
    })
    return pd.DataFrame(rows, columns=['component', 'symbol', 'relative_u', 'absolute_u', 'variance_share'])
