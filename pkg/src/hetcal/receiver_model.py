# Copyright © 2026 The hetcal Authors. All Rights Reserved.

"""
Closed-form model of a lossy, imbalanced balanced heterodyne receiver.

All quantities are expectations of the difference photocurrent written in output units
(K·g scaled photon-rate units); no operator algebra is simulated.
"""

import numpy as np

from .constants import photon_energy
from .exceptions import HetCalInputException
from .parameterized_model import ParameterizedModel
from .utils.parameters import Interval

__all__ = [
    'ReceiverParams', 'FieldParams', 'ChannelParams', 'GaussianBeam',
    'lumped_efficiency', 'shot_noise_variance_density', 'beat_power_rms',
    'gaussian_mode_overlap', 'apply_attenuation', 'x_based_efficiency', 'relative_correction'
]


def calc_detector_average(params):
    return {
        'eta_av': 0.5 * (params['eta1'] + params['eta2']),
        'delta_eta': params['eta1'] - params['eta2']
    }


class ReceiverParams(ParameterizedModel):
    """
    Ground-truth physical parameters of a balanced heterodyne receiver.

    The beam splitter sends (1/2 + delta_tau) of each input power toward detector 1 and
    (1/2 - delta_tau) toward detector 2; delta_eta = eta1 - eta2 pairs with +delta_tau.

    Keyword Args
    ------------
        delta_tau : Optional, float
            Beam-splitter imbalance, 4*delta_tau**2 <= 1. Default 0
        tau_alpha : Optional, float
            Signal-path transmission in (0, 1]. Default 1
        tau_beta : Optional, float
            LO-path transmission in (0, 1]. Default 1
        eta1, eta2 : Optional, float
            Photodiode quantum efficiencies in (0, 1]. Default 1
        eta_mm : Optional, float
            Mode-overlap power factor in [0, 1]. Default 1
        k_conv : Optional, float
            Opto-electronic conversion factor K. Default 1
        gain : Optional, float
            Average electronic gain g. Default 1
        noise_factor : Optional, float
            Amplifier excess-noise factor F >= 1. Default 1 (purely additive amplifier noise)

    Derived parameters: eta_av, delta_eta
    """
    config_key = 'receiver'

    default_parameters = {
        'delta_tau': 0.0,
        'tau_alpha': 1.0,
        'tau_beta': 1.0,
        'eta1': 1.0,
        'eta2': 1.0,
        'eta_mm': 1.0,
        'k_conv': 1.0,
        'gain': 1.0,
        'noise_factor': 1.0,
    }

    parameter_limits = {
        'tau_alpha': Interval(0, 1, '(]'),
        'tau_beta': Interval(0, 1, '(]'),
        'eta1': Interval(0, 1, '(]'),
        'eta2': Interval(0, 1, '(]'),
        'eta_mm': Interval(0, 1, '[]'),
        'k_conv': Interval(0, np.inf, '()'),
        'gain': Interval(0, np.inf, '()'),
        'noise_factor': Interval(1, np.inf, '[)'),
    }

    param_callbacks = {
        'eta1': [calc_detector_average],
        'eta2': [calc_detector_average],
    }

    derived_parameters = ['eta_av', 'delta_eta']

    def validate(self) -> None:
        delta_tau = self.parameters['delta_tau']
        if not np.isfinite(delta_tau) or 4 * delta_tau**2 > 1:
            raise HetCalInputException(f"receiver.delta_tau={delta_tau} violates 4*delta_tau**2 <= 1")


def calc_photon_energy(params):
    energy = photon_energy(params['wavelength'])
    return {
        'photon_energy': energy,
        'signal_power_w': energy * params['photon_flux_signal'],
        'lo_power_w': energy * params['photon_flux_lo'],
    }


class FieldParams(ParameterizedModel):
    """
    Coherent signal and local-oscillator fields at the receiver reference plane.

    Keyword Args
    ------------
        photon_flux_signal : float
            |alpha|^2 in photons/s (>= 0)
        photon_flux_lo : float
            |beta|^2 in photons/s (> 0)
        wavelength : float
            Signal vacuum wavelength in m. Default 1542 nm
        if_hz : float
            Intermediate frequency in Hz. Default 20 MHz
        max_flux_ratio : float
            Largest admissible |alpha|^2/|beta|^2. Default 1e-3

    Derived parameters: photon_energy (J), signal_power_w, lo_power_w
    """
    config_key = 'fields'

    default_parameters = {
        'photon_flux_signal': 7.76e10,
        'photon_flux_lo': 7.76e15,
        'wavelength': 1542e-9,
        'if_hz': 20e6,
        'max_flux_ratio': 1e-3,
    }

    parameter_limits = {
        'photon_flux_signal': Interval(0, np.inf, '[)'),
        'photon_flux_lo': Interval(0, np.inf, '()'),
        'wavelength': Interval(0, np.inf, '()'),
        'if_hz': Interval(0, np.inf, '()'),
        'max_flux_ratio': Interval(0, np.inf, '()'),
    }

    param_callbacks = {
        'photon_flux_signal': [calc_photon_energy],
        'photon_flux_lo': [calc_photon_energy],
        'wavelength': [calc_photon_energy],
    }

    derived_parameters = ['photon_energy', 'signal_power_w', 'lo_power_w']

    def validate(self) -> None:
        ratio = self.parameters['photon_flux_signal'] / self.parameters['photon_flux_lo']
        if ratio > self.parameters['max_flux_ratio']:
            raise HetCalInputException(
                f"fields.photon_flux_signal/fields.photon_flux_lo={ratio:.3g} exceeds max_flux_ratio={self.parameters['max_flux_ratio']} (weak-signal regime)")

    @classmethod
    def from_power(cls, signal_power_w : float, lo_power_w : float, wavelength : float = 1542e-9, if_hz : float = 20e6, **kwargs) -> "FieldParams":
        """
        Build fields from optical powers in W

        Example
        -------
            fields = FieldParams.from_power(10e-9, 1e-3, wavelength=1542e-9, if_hz=20e6)
        """
        energy = photon_energy(wavelength)
        return cls(photon_flux_signal=signal_power_w / energy,
                   photon_flux_lo=lo_power_w / energy,
                   wavelength=wavelength,
                   if_hz=if_hz,
                   **kwargs)


def calc_total_transmission(params):
    return {
        'total_transmission': float(np.prod(params['transmissions'])) if len(params['transmissions']) > 0 else 1.0
    }


class ChannelParams(ParameterizedModel):
    """
    Ordered chain of power transmission factors in the signal path (ND filters, channel loss).

    Keyword Args
    ------------
        transmissions : list[float]
            Factors T_i in (0, 1]. Default [] (lossless)

    Derived parameters: total_transmission
    """
    config_key = 'channel'

    default_parameters = {
        'transmissions': [],
    }

    param_callbacks = {
        'transmissions': [calc_total_transmission],
    }

    derived_parameters = ['total_transmission']

    def validate(self) -> None:
        for i, factor in enumerate(self.parameters['transmissions']):
            if not 0 < factor <= 1:
                raise HetCalInputException(f"channel.transmissions[{i}]={factor} outside admissible range (0, 1]")

    def with_factor(self, transmission : float) -> "ChannelParams":
        """New channel with one more factor appended at the end of the chain"""
        return self.replace(transmissions=list(self.parameters['transmissions']) + [transmission])


class GaussianBeam(ParameterizedModel):
    """
    Fundamental Gaussian field mode.

    Keyword Args
    ------------
        waist : float
            1/e field radius w in m
        lateral_offset : float
            Transverse displacement d in m. Default 0
    """
    config_key = 'beam'

    default_parameters = {
        'waist': 1e-3,
        'lateral_offset': 0.0,
    }

    parameter_limits = {
        'waist': Interval(0, np.inf, '()'),
        'lateral_offset': Interval(0, np.inf, '[)'),
    }


def lumped_efficiency(rx : ReceiverParams) -> float:
    """
    Lumped (effective) heterodyne efficiency (1 - 4 delta_tau^2) tau_alpha eta_av eta_mm

    Args:
        rx (ReceiverParams): receiver

    Returns:
        float: efficiency in [0, 1]
    """
    p = rx.parameters
    return (1 - 4 * p['delta_tau']**2) * p['tau_alpha'] * p['eta_av'] * p['eta_mm']


def shot_noise_variance_density(rx : ReceiverParams, fields : FieldParams) -> float:
    """
    LO shot-noise variance per Hz of the difference current, electronic noise excluded:
    K^2 g^2 F tau_beta |beta|^2 (eta_av + delta_eta delta_tau)
    """
    p = rx.parameters
    return (p['k_conv'] * p['gain'])**2 * p['noise_factor'] * p['tau_beta'] * fields['photon_flux_lo'] \
        * (p['eta_av'] + p['delta_eta'] * p['delta_tau'])


def beat_power_rms(rx : ReceiverParams, fields : FieldParams) -> float:
    """
    Mean-square beat amplitude <I_->^2_RMS of the heterodyne tone:
    K^2 g^2 2 (1 - 4 delta_tau^2) tau_alpha tau_beta eta_mm eta_av^2 |alpha|^2 |beta|^2
    """
    p = rx.parameters
    return (p['k_conv'] * p['gain'])**2 * 2 * (1 - 4 * p['delta_tau']**2) * p['tau_alpha'] * p['tau_beta'] \
        * p['eta_mm'] * p['eta_av']**2 * fields['photon_flux_signal'] * fields['photon_flux_lo']


def gaussian_mode_overlap(a : GaussianBeam, b : GaussianBeam) -> float:
    """
    Power overlap |gamma|^2 of two coaxial, normalized fundamental Gaussian field modes.

    Offsets are measured from a common axis; only their difference matters.

    Args:
        a, b (GaussianBeam): the two modes

    Returns:
        float: (2 w1 w2 / (w1^2 + w2^2))^2 exp(-2 d^2 / (w1^2 + w2^2))
    """
    w1, w2 = a['waist'], b['waist']
    d = a['lateral_offset'] - b['lateral_offset']
    w_sq = w1**2 + w2**2
    return (2 * w1 * w2 / w_sq)**2 * np.exp(-2 * d**2 / w_sq)


def apply_attenuation(fields : FieldParams, ch : ChannelParams) -> FieldParams:
    """
    Scale the signal photon flux by the channel transmission; the LO is untouched.
    """
    return fields.replace(photon_flux_signal=fields['photon_flux_signal'] * ch['total_transmission'])


def x_based_efficiency(rx : ReceiverParams, fields : FieldParams) -> float:
    """
    Efficiency recovered by the spectral-ratio estimator, beat / (2 shot |alpha|^2).

    Equals :func:`lumped_efficiency` when F = 1 and delta_eta*delta_tau = 0.
    """
    if fields['photon_flux_signal'] == 0:
        raise HetCalInputException("fields.photon_flux_signal must be positive to form the beat/shot ratio")
    return beat_power_rms(rx, fields) / (2 * shot_noise_variance_density(rx, fields) * fields['photon_flux_signal'])


def relative_correction(rx : ReceiverParams) -> float:
    """
    Relative deviation of the ratio-based efficiency from the lumped efficiency,
    (eta_av / (F (eta_av + delta_eta delta_tau))) - 1. Field independent.
    """
    p = rx.parameters
    return p['eta_av'] / (p['noise_factor'] * (p['eta_av'] + p['delta_eta'] * p['delta_tau'])) - 1
