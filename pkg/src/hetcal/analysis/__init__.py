# Copyright © 2026 The hetcal Authors. All Rights Reserved.

from .uncertainty import (UncertainValue, Comparison, propagate_uncertainty, loss_chain_estimate, compare_estimates,
                          scaled_reference, weighted_mean)
from .enbw import EnbwResult, PeakFit, compute_enbw, fitted_peak, parabolic_peak
from .calibration import (PowerCalibration, calibrated_power, calibrate_transmission, calibrate_responsivity,
                          power_calibration_from_samples, power_calibration_from_dataset)
from .estimator import EfficiencyEstimate, extract_spectral_ratio, estimate_efficiency, estimate_from_datasets, budget_table
from ..units import dbmv_to_linear, linear_to_dbmv
