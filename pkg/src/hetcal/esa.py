# Copyright © 2026 The hetcal Authors. All Rights Reserved.

"""
Electrical spectrum analyzer emulation settings and resolution-bandwidth filter shapes.
"""

from functools import lru_cache
import re

import numpy as np
from scipy.optimize import brentq
from scipy.special import gamma as gamma_fcn

from .constants import ANALYZER_ENBW_RATIO, DEFAULT_NOISE_FLOOR, GAUSSIAN_ENBW_RATIO
from .exceptions import HetCalInputException
from .parameterized_model import ParameterizedModel
from .utils.noise_functions import averaging_noise_functions
from .utils.parameters import Interval

__all__ = [
    'FILTER_FAMILIES', 'EsaConfig', 'filter_power_response', 'filter_enbw', 'supergaussian_order',
    'supergaussian_enbw_ratio', 'frequency_axis', 'format_filter_family', 'parse_filter_family'
]

FILTER_FAMILIES = ('gaussian', 'supergaussian', 'rectangular')

_FAMILY_PATTERN = re.compile(r'^\s*supergaussian\s*\(\s*([^)]+?)\s*\)\s*$')


def supergaussian_enbw_ratio(order : float) -> float:
    """
    ENBW/RBW of the power response exp(-ln2 (2|f|/RBW)^(2 order))
    """
    return gamma_fcn(1 + 1 / (2 * order)) / np.log(2)**(1 / (2 * order))


@lru_cache(maxsize=32)
def supergaussian_order(ratio : float = ANALYZER_ENBW_RATIO) -> float:
    """
    Supergaussian order p whose ENBW/RBW equals ratio. Solved once per ratio and cached.

    Args:
        ratio (float): Target ENBW/RBW, between the rectangular limit 1 and 4.16 (p = 0.25)

    Returns:
        float: order p (p = 1 is the gaussian family)
    """
    lower, upper = 0.25, 50.0
    if not supergaussian_enbw_ratio(upper) < ratio < supergaussian_enbw_ratio(lower):
        raise HetCalInputException(f"ENBW/RBW ratio {ratio} cannot be reached by a supergaussian filter")
    return brentq(lambda p: supergaussian_enbw_ratio(p) - ratio, lower, upper, xtol=1e-14)


def calc_filter_order(params):
    if params['filter_family'] != 'supergaussian':
        return {'effective_order': None}
    order = params['filter_order']
    return {'effective_order': supergaussian_order() if order is None else order}


def calc_enbw(params):
    family = params['filter_family']
    rbw = params['rbw_hz']
    if family == 'gaussian':
        return {'enbw_hz': rbw * GAUSSIAN_ENBW_RATIO}
    if family == 'supergaussian':
        return {'enbw_hz': rbw * supergaussian_enbw_ratio(params['effective_order'])}
    return {'enbw_hz': rbw}


class EsaConfig(ParameterizedModel):
    """
    Spectrum-analyzer emulation settings.

    Keyword Args
    ------------
        center_hz : float
            Center frequency. Default 20 MHz
        span_hz : float
            Frequency span. Default 10 MHz
        rbw_hz : float
            Resolution bandwidth (-3 dB full width of the power response). Default 1 MHz
        n_bins : int
            Trace points, >= 32. Default 1001 (odd, so the center falls on a bin)
        n_avg : int
            Averaged sweeps per trace, >= 1. Default 100
        filter_family : str
            One of 'gaussian', 'supergaussian', 'rectangular'. Default 'gaussian'
        filter_order : float or None
            Supergaussian order p. None selects the order giving ENBW/RBW = 1.12
        reference_power : float
            Linear power displayed as 0 dBmV. Default 1
        noise_floor : float
            Linear floor applied before log conversion. Default 1e-30
        tone_statistics : str
            Averaging model of tone-bearing bins: 'multiplicative' (default, the gamma law of the noise bins)
            or 'coherent' (noncentral chi-square of a CW tone in noise)

    Derived parameters: effective_order, enbw_hz (analytic ENBW of the filter family)
    """
    config_key = 'esa'

    default_parameters = {
        'center_hz': 20e6,
        'span_hz': 10e6,
        'rbw_hz': 1e6,
        'n_bins': 1001,
        'n_avg': 100,
        'filter_family': 'gaussian',
        'filter_order': None,
        'reference_power': 1.0,
        'noise_floor': DEFAULT_NOISE_FLOOR,
        'tone_statistics': 'multiplicative',
    }

    parameter_limits = {
        'center_hz': Interval(0, np.inf, '[)'),
        'span_hz': Interval(0, np.inf, '()'),
        'rbw_hz': Interval(0, np.inf, '()'),
        'n_bins': Interval(32, np.inf, '[)'),
        'n_avg': Interval(1, np.inf, '[)'),
        'filter_order': Interval(0.25, 50, '[]'),
        'reference_power': Interval(0, np.inf, '()'),
        'noise_floor': Interval(0, np.inf, '()'),
    }

    param_callbacks = {
        'filter_family': [calc_filter_order, calc_enbw],
        'filter_order': [calc_filter_order, calc_enbw],
        'rbw_hz': [calc_enbw],
    }

    derived_parameters = ['effective_order', 'enbw_hz']

    def __init__(self, **kwargs):
        family = kwargs.get('filter_family')
        if isinstance(family, str) and family.strip().startswith('supergaussian('):
            # Accept the serialized 'supergaussian(p)' form
            kwargs['filter_family'], kwargs['filter_order'] = parse_filter_family(family)
        super().__init__(**kwargs)

    def validate(self) -> None:
        p = self.parameters
        if p['filter_family'] not in FILTER_FAMILIES:
            raise HetCalInputException(f"esa.filter_family='{p['filter_family']}' is not one of {', '.join(FILTER_FAMILIES)}")
        if p['tone_statistics'] not in averaging_noise_functions:
            raise HetCalInputException(f"esa.tone_statistics='{p['tone_statistics']}' is not one of {', '.join(averaging_noise_functions)}")
        for key in ('n_bins', 'n_avg'):
            if int(p[key]) != p[key]:
                raise HetCalInputException(f"esa.{key}={p[key]} must be an integer")
        if p['rbw_hz'] > p['span_hz']:
            raise HetCalInputException(f"esa.rbw_hz={p['rbw_hz']} exceeds esa.span_hz={p['span_hz']}")

    @property
    def bin_width_hz(self) -> float:
        return self['span_hz'] / (self['n_bins'] - 1)

    def contains(self, frequency_hz : float) -> bool:
        """
        Is frequency_hz strictly inside the span
        """
        return abs(frequency_hz - self['center_hz']) < self['span_hz'] / 2

    def require_in_span(self, frequency_hz : float, name : str = 'fields.if_hz') -> None:
        if not self.contains(frequency_hz):
            raise HetCalInputException(
                f"{name}={frequency_hz} lies outside the analyzer span "
                f"(esa.center_hz={self['center_hz']}, esa.span_hz={self['span_hz']})")


def format_filter_family(cfg : EsaConfig) -> str:
    """
    Filter family as written in documents: 'gaussian', 'rectangular' or 'supergaussian(<p>)'
    """
    if cfg['filter_family'] == 'supergaussian':
        return f"supergaussian({float(cfg['effective_order'])!r})"
    return cfg['filter_family']


def parse_filter_family(text : str) -> tuple:
    """
    Inverse of :func:`format_filter_family`

    Returns:
        tuple[str, float or None]: family and supergaussian order (None for other families)
    """
    match = _FAMILY_PATTERN.match(text)
    if match is not None:
        try:
            return 'supergaussian', float(match.group(1))
        except ValueError:
            raise HetCalInputException(f"Invalid supergaussian order in filter family '{text}'") from None
    text = text.strip()
    if text not in FILTER_FAMILIES:
        raise HetCalInputException(f"Unknown filter family '{text}'")
    return text, None


def filter_power_response(cfg : EsaConfig, f_offset):
    """
    Normalized power response |H(f)/H(0)|^2 of the resolution-bandwidth filter.

    The -3 dB full width of every family equals the RBW. The rectangular response takes the
    value 1/2 exactly on its edges, so its sampled trapezoid integral equals the RBW when the
    edges fall on bins.

    Args:
        cfg (EsaConfig): analyzer settings
        f_offset (float or array): offset from the filter center in Hz

    Returns:
        float or np.ndarray: response in [0, 1]
    """
    f = np.abs(np.asarray(f_offset, dtype=np.float64))
    rbw = cfg['rbw_hz']
    family = cfg['filter_family']
    if family == 'gaussian':
        response = np.exp(-4 * np.log(2) * f**2 / rbw**2)
    elif family == 'supergaussian':
        response = np.exp(-np.log(2) * (2 * f / rbw)**(2 * cfg['effective_order']))
    else:
        edge = np.isclose(f, rbw / 2, rtol=1e-9, atol=0)
        response = np.where(edge, 0.5, np.where(f < rbw / 2, 1.0, 0.0))
    if response.ndim == 0:
        return float(response)
    return response


def filter_enbw(cfg : EsaConfig) -> float:
    """
    Analytic equivalent noise bandwidth (Hz) of the configured filter
    """
    return cfg['enbw_hz']


def frequency_axis(cfg : EsaConfig) -> np.ndarray:
    """
    Uniform ascending axis of n_bins points covering center +- span/2
    """
    half = cfg['span_hz'] / 2
    return np.linspace(cfg['center_hz'] - half, cfg['center_hz'] + half, int(cfg['n_bins']))
