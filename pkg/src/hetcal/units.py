# Copyright © 2026 The hetcal Authors. All Rights Reserved.

import numpy as np

from .exceptions import HetCalInputException

__all__ = ['dbmv_to_linear', 'linear_to_dbmv']


def dbmv_to_linear(values_dbmv, reference_power : float = 1.0):
    """
    Convert analyzer levels in dBmV to linear power.

    Args:
        values_dbmv (float or array): levels in dBmV
        reference_power (float): linear power corresponding to 0 dBmV

    Returns:
        float or np.ndarray: reference_power * 10**(dBmV/10)
    """
    if reference_power <= 0:
        raise HetCalInputException(f"reference_power must be positive, was {reference_power}")
    return reference_power * np.power(10.0, np.asarray(values_dbmv, dtype=np.float64) / 10)


def linear_to_dbmv(values, reference_power : float = 1.0):
    """
    Convert linear power to analyzer levels in dBmV. Inverse of :func:`dbmv_to_linear`.

    Nonpositive values have no finite level; clamp before calling (see trace_synthesis).
    """
    if reference_power <= 0:
        raise HetCalInputException(f"reference_power must be positive, was {reference_power}")
    values = np.asarray(values, dtype=np.float64)
    if np.any(values <= 0):
        raise HetCalInputException("Linear power must be positive to convert to dBmV")
    return 10 * np.log10(values / reference_power)
