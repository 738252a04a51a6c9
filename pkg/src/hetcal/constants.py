# Copyright © 2026 The hetcal Authors. All Rights Reserved.

"""
Physical constants and protocol defaults used throughout the package.
"""

import numpy as np
from scipy import constants as _si

# Exact SI values
HBAR = _si.hbar  # J s
C = _si.c  # m/s

# W per µW in the monitor calibration P = V*l/R*1e-6
MICRO = 1e-6

# Analyzer emulation
ANALYZER_ENBW_RATIO = 1.12
DEFAULT_NOISE_FLOOR = 1e-30
GAUSSIAN_ENBW_RATIO = np.sqrt(np.pi / (4 * np.log(2)))  # 1.0645

# Uncertainty budget defaults
DEFAULT_COVERAGE_FACTOR = 2.0
DEFAULT_TYPE_B_REL = 0.005
DEFAULT_ENBW_TYPE_B_REL = 0.003
DEFAULT_U_REL_ATTENUATION = 0.006
DEFAULT_U_REL_RESPONSIVITY = 0.0045

SCHEMA_VERSION = 1


def angular_frequency(wavelength : float) -> float:
    """Optical angular frequency (rad/s) for a vacuum wavelength in m"""
    return 2 * np.pi * C / wavelength


def photon_energy(wavelength : float) -> float:
    """Photon energy ħω (J) for a vacuum wavelength in m"""
    return HBAR * angular_frequency(wavelength)
