# Copyright © 2026 The hetcal Authors. All Rights Reserved.

import numpy as np

# ---------------------------
# Averaging Noise Functions
# ---------------------------
# f(rng, expected, n_avg, tone) -> one averaged realization of the linear per-bin power.
# tone is the coherent (CW) part of expected, or None when the bins carry noise only.

def gamma_averaging_noise(rng : np.random.Generator, expected : np.ndarray, n_avg : int, tone : np.ndarray = None) -> np.ndarray:
    return expected * rng.gamma(n_avg, 1.0 / n_avg, size=expected.shape)

def coherent_averaging_noise(rng : np.random.Generator, expected : np.ndarray, n_avg : int, tone : np.ndarray = None) -> np.ndarray:
    if tone is None:
        return gamma_averaging_noise(rng, expected, n_avg)
    noise = np.clip(expected - tone, 0, None)
    has_noise = noise > 0
    safe_noise = np.where(has_noise, noise, 1.0)
    # Averaged |tone + complex gaussian noise|^2: scaled non-central chi-square with 2*n_avg degrees of freedom
    nonc = 2 * n_avg * tone / safe_noise
    draws = safe_noise / (2 * n_avg) * rng.noncentral_chisquare(2 * n_avg, nonc, size=expected.shape)
    return np.where(has_noise, draws, tone)

def no_averaging_noise(rng : np.random.Generator, expected : np.ndarray, n_avg : int, tone : np.ndarray = None) -> np.ndarray:
    return expected

averaging_noise_functions = {
    'multiplicative': gamma_averaging_noise,
    'gamma': gamma_averaging_noise,
    'coherent': coherent_averaging_noise,
    'none': no_averaging_noise,
}

# ---------------------------
# Readout Noise Functions
# ---------------------------

def normal_readout_noise(rng : np.random.Generator, values : np.ndarray, std : float) -> np.ndarray:
    return values + rng.normal(0, std, size=values.shape)

def no_readout_noise(rng : np.random.Generator, values : np.ndarray, std : float) -> np.ndarray:
    return values

readout_noise_functions = {
    'normal': normal_readout_noise,
    'gaussian': normal_readout_noise,
    'none': no_readout_noise,
}
