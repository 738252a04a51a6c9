# Copyright © 2026 The hetcal Authors. All Rights Reserved.

"""
Synthesis of analyzer traces and power-monitor records from the receiver model.
"""

from typing import Optional
import warnings

import numpy as np

from .dataset import Trace
from .esa import EsaConfig, filter_enbw, filter_power_response, frequency_axis
from .exceptions import HetCalFloorClampWarning, HetCalInputException
from .parameterized_model import ParameterizedModel
from .receiver_model import FieldParams, ReceiverParams, beat_power_rms, shot_noise_variance_density
from .units import linear_to_dbmv
from .utils.noise_functions import averaging_noise_functions, readout_noise_functions
from .utils.parameters import Interval

__all__ = [
    'TRACE_KINDS', 'MonitorModel', 'tone_spectrum', 'expected_spectrum', 'sample_trace',
    'synthesize_tone_cal_trace', 'synthesize_monitor_samples'
]

TRACE_KINDS = ('electronic', 'shot', 'quadrature')

# Analyzer dynamic range assumed for tone-calibration traces
TONE_CAL_FLOOR_DBC = -70.0


class MonitorModel(ParameterizedModel):
    """
    Power-monitor photodetector read by a voltmeter.

    Keyword Args
    ------------
        responsivity : float
            R in V/µW. Default 0.5
        dark_offset : float
            Output with the beam blocked, V. Default 0.01
        readout_noise_std : float
            Standard deviation of the voltage readout, V. Default 1e-4
        readout_noise_dist : str
            'normal' (default) or 'none'
    """
    config_key = 'monitor'

    default_parameters = {
        'responsivity': 0.5,
        'dark_offset': 0.01,
        'readout_noise_std': 1e-4,
        'readout_noise_dist': 'normal',
    }

    parameter_limits = {
        'responsivity': Interval(0, np.inf, '()'),
        'readout_noise_std': Interval(0, np.inf, '[)'),
    }

    def validate(self) -> None:
        if self.parameters['readout_noise_dist'] not in readout_noise_functions:
            raise HetCalInputException(
                f"monitor.readout_noise_dist='{self.parameters['readout_noise_dist']}' is not one of {', '.join(readout_noise_functions)}")


def tone_spectrum(rx : ReceiverParams, fields : FieldParams, cfg : EsaConfig) -> np.ndarray:
    """
    Per-bin linear power of the heterodyne beat tone alone, beat_power_rms * |H(f - f_IF)|^2
    """
    cfg.require_in_span(fields['if_hz'])
    return beat_power_rms(rx, fields) * filter_power_response(cfg, frequency_axis(cfg) - fields['if_hz'])


def expected_spectrum(rx : ReceiverParams, fields : FieldParams, cfg : EsaConfig, kind : str, s_elec : float = 0.0) -> np.ndarray:
    """
    Expected (noise-free) linear power per bin of one acquisition trace.

    Args:
        rx (ReceiverParams): receiver
        fields (FieldParams): fields at the receiver, attenuation already applied
        cfg (EsaConfig): analyzer settings
        kind (str): 'electronic' (both inputs blocked), 'shot' (LO only) or 'quadrature' (signal + LO)
        s_elec (float): white electronic noise density, output units^2/Hz

    Returns:
        np.ndarray: n_bins expected powers

    Raises:
        HetCalInputException: unknown kind, negative s_elec, IF tone outside span for kind='quadrature'
    """
    if kind not in TRACE_KINDS:
        raise HetCalInputException(f"Unknown trace kind '{kind}', expected one of {', '.join(TRACE_KINDS)}")
    if s_elec < 0:
        raise HetCalInputException(f"Electronic noise density s_elec={s_elec} must be >= 0")

    enbw = filter_enbw(cfg)
    n_bins = int(cfg['n_bins'])
    if kind == 'electronic':
        return np.full(n_bins, s_elec * enbw)

    shot_level = np.full(n_bins, (shot_noise_variance_density(rx, fields) + s_elec) * enbw)
    if kind == 'shot':
        return shot_level
    return shot_level + tone_spectrum(rx, fields, cfg)


def sample_trace(expected, cfg : EsaConfig, rng_seed = None, tone : Optional[np.ndarray] = None, deterministic : bool = False) -> Trace:
    """
    Draw one averaged analyzer trace around the expected per-bin power and convert it to dBmV.

    Noise bins follow the unit-mean gamma law of shape n_avg. Bins carrying a coherent tone
    (given by ``tone``) follow cfg['tone_statistics'].
    Powers below cfg['noise_floor'] are clamped to it with a HetCalFloorClampWarning.

    Args:
        expected (array[float]): expected linear power per bin
        cfg (EsaConfig): analyzer settings
        rng_seed (int, SeedSequence or Generator): random stream. Identical seeds give identical traces
        tone (array[float], optional): coherent tone part of expected
        deterministic (bool): noise-free (n_avg -> infinity) mode

    Returns:
        Trace
    """
    expected = np.asarray(expected, dtype=np.float64)
    if expected.shape != (int(cfg['n_bins']),):
        raise HetCalInputException(f"Expected spectrum has shape {expected.shape}, analyzer has {int(cfg['n_bins'])} bins")

    if deterministic:
        values = expected.copy()
    else:
        rng = np.random.default_rng(rng_seed)
        noise_fcn = averaging_noise_functions[cfg['tone_statistics']]
        values = noise_fcn(rng, expected, int(cfg['n_avg']), None if tone is None else np.asarray(tone, dtype=np.float64))

    floor = cfg['noise_floor']
    clamped = values < floor
    if np.any(clamped):
        warnings.warn(f"{int(np.count_nonzero(clamped))} bin(s) below the noise floor {floor} were clamped before dBmV conversion", HetCalFloorClampWarning)
        values = np.maximum(values, floor)

    return Trace(frequency_axis(cfg), linear_to_dbmv(values, cfg['reference_power']))


def synthesize_tone_cal_trace(cfg : EsaConfig, tone_hz : float, tone_power : float, rng_seed = None,
                              floor_power : Optional[float] = None, deterministic : bool = False) -> Trace:
    """
    Trace of one spectrally narrow tone read through the resolution-bandwidth filter.

    Args:
        cfg (EsaConfig): analyzer settings
        tone_hz (float): tone frequency, inside the span
        tone_power (float): linear tone power (> 0)
        rng_seed: random stream
        floor_power (float, optional): linear noise floor added to every bin. Default 70 dB below the tone
        deterministic (bool): noise-free mode

    Returns:
        Trace
    """
    cfg.require_in_span(tone_hz, 'tone_hz')
    if tone_power <= 0:
        raise HetCalInputException(f"tone_power={tone_power} must be positive")
    if floor_power is None:
        floor_power = tone_power * 10**(TONE_CAL_FLOOR_DBC / 10)
    tone = tone_power * filter_power_response(cfg, frequency_axis(cfg) - tone_hz)
    return sample_trace(tone + floor_power, cfg, rng_seed, tone=tone, deterministic=deterministic)


def synthesize_monitor_samples(mon : MonitorModel, p_at_monitor : float, n : int, rng_seed = None, deterministic : bool = False) -> np.ndarray:
    """
    Voltmeter readings of the power monitor, R * p + dark_offset + readout noise.

    Args:
        mon (MonitorModel): monitor detector
        p_at_monitor (float): optical power on the monitor in µW (0 for a dark batch)
        n (int): number of samples (>= 1)
        rng_seed: random stream
        deterministic (bool): noise-free mode

    Returns:
        np.ndarray: n voltages
    """
    if n < 1:
        raise HetCalInputException(f"Number of monitor samples n={n} must be >= 1")
    if p_at_monitor < 0:
        raise HetCalInputException(f"Monitor power {p_at_monitor} µW must be >= 0")
    values = np.full(int(n), mon['responsivity'] * p_at_monitor + mon['dark_offset'])
    if deterministic:
        return values
    rng = np.random.default_rng(rng_seed)
    return readout_noise_functions[mon['readout_noise_dist']](rng, values, mon['readout_noise_std'])
