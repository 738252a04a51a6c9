# Copyright © 2026 The hetcal Authors. All Rights Reserved.

"""
Radiometric power calibration: P = V * l / R * 1e-6.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .uncertainty import UncertainValue, propagate_uncertainty
from ..constants import DEFAULT_U_REL_ATTENUATION, DEFAULT_U_REL_RESPONSIVITY, MICRO
from ..dataset import Dataset
from ..exceptions import HetCalAnalysisError, HetCalInputException

__all__ = [
    'PowerCalibration', 'calibrated_power', 'calibrate_transmission', 'calibrate_responsivity',
    'power_calibration_from_samples', 'power_calibration_from_dataset'
]


@dataclass(frozen=True)
class PowerCalibration():
    """
    Inputs of the signal-power calibration

    Args:
        attenuation_l (UncertainValue): transmission l between the monitor and the receiver plane
        responsivity_r (UncertainValue): monitor responsivity R in V/µW
        voltage_v (UncertainValue): dark-corrected monitor voltage V
    """
    attenuation_l: UncertainValue
    responsivity_r: UncertainValue
    voltage_v: UncertainValue

    def __post_init__(self):
        if self.attenuation_l.value <= 0:
            raise HetCalInputException(f"Attenuation l={self.attenuation_l.value} must be positive")
        if self.responsivity_r.value <= 0:
            raise HetCalInputException(f"Responsivity R={self.responsivity_r.value} must be positive")


def calibrated_power(cal : PowerCalibration) -> UncertainValue:
    """
    Calibrated signal power at the receiver plane in W

    Raises:
        HetCalAnalysisError: dark-corrected voltage <= 0 (signal off or miswired monitor)
    """
    if cal.voltage_v.value <= 0:
        raise HetCalAnalysisError(
            f"Dark-corrected monitor voltage V={cal.voltage_v.value:.6g} V is not positive: signal off or monitor miswired")
    power = cal.voltage_v.value * cal.attenuation_l.value / cal.responsivity_r.value * MICRO
    rel = propagate_uncertainty([cal.voltage_v.rel, cal.attenuation_l.rel, cal.responsivity_r.rel])
    return UncertainValue.from_relative(power, rel, 'combined', 'p_alpha')


def _ratio_calibration(numerators : Sequence[float], denominators : Sequence[float], type_b_rel : float, label : str) -> UncertainValue:
    numerators = np.asarray(numerators, dtype=np.float64)
    denominators = np.asarray(denominators, dtype=np.float64)
    if numerators.shape != denominators.shape or numerators.size == 0:
        raise HetCalInputException(f"{label} calibration needs paired, non-empty readings")
    if np.any(denominators <= 0):
        raise HetCalInputException(f"{label} calibration readings must be positive")
    ratios = numerators / denominators
    mean = float(np.mean(ratios))
    type_a_rel = np.std(ratios, ddof=1) / np.sqrt(ratios.size) / mean if ratios.size > 1 else 0.0
    return UncertainValue.from_relative(mean, propagate_uncertainty([type_a_rel, type_b_rel]), 'combined', label)


def calibrate_transmission(before_w : Sequence[float], after_w : Sequence[float], u_rel_powermeter : float = 0.0) -> UncertainValue:
    """
    Transmission of an attenuator from power readings taken before and after inserting it.

    The powermeter uncertainty enters twice (both readings). Works for the fixed attenuation l as well as for ND filters.
    """
    return _ratio_calibration(after_w, before_w, np.sqrt(2) * u_rel_powermeter, 'transmission')


def calibrate_responsivity(voltages_v : Sequence[float], powers_uw : Sequence[float], u_rel_powermeter : float = 0.0,
                           u_rel_voltmeter : float = 0.0) -> UncertainValue:
    """
    Monitor responsivity R (V/µW) from dark-corrected voltages against a reference powermeter
    """
    return _ratio_calibration(voltages_v, powers_uw, propagate_uncertainty([u_rel_powermeter, u_rel_voltmeter]), 'responsivity')


def power_calibration_from_samples(corrected_v : Sequence[float], attenuation_l : float, responsivity : float,
                                   u_rel_attenuation : float = DEFAULT_U_REL_ATTENUATION,
                                   u_rel_responsivity : float = DEFAULT_U_REL_RESPONSIVITY) -> PowerCalibration:
    """
    Power calibration from dark-corrected monitor voltages; V carries the standard error of their mean (Type A)
    """
    corrected_v = np.asarray(corrected_v, dtype=np.float64)
    if corrected_v.size == 0:
        raise HetCalInputException("Power calibration needs at least one monitor sample")
    u_v = np.std(corrected_v, ddof=1) / np.sqrt(corrected_v.size) if corrected_v.size > 1 else 0.0
    return PowerCalibration(
        attenuation_l=UncertainValue.from_relative(attenuation_l, u_rel_attenuation, 'typeB', 'attenuation_l'),
        responsivity_r=UncertainValue.from_relative(responsivity, u_rel_responsivity, 'typeB', 'responsivity'),
        voltage_v=UncertainValue(float(np.mean(corrected_v)), float(u_v), 'typeA', 'voltage'))


def power_calibration_from_dataset(ds : Dataset, u_rel_attenuation : float = DEFAULT_U_REL_ATTENUATION,
                                   u_rel_responsivity : float = DEFAULT_U_REL_RESPONSIVITY) -> PowerCalibration:
    """
    Power calibration from the monitor record of one acquisition
    """
    return power_calibration_from_samples(ds.monitor_samples - ds.monitor_dark_mean, ds.attenuation_l, ds.responsivity,
                                          u_rel_attenuation, u_rel_responsivity)
