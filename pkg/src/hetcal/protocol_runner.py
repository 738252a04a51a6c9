# Copyright © 2026 The hetcal Authors. All Rights Reserved.

"""
Acquisition sequence over the simulated receiver and the validation sweeps.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .analysis import (EnbwResult, UncertainValue, compare_estimates, compute_enbw,
                       estimate_from_datasets, loss_chain_estimate, scaled_reference)
from .constants import (DEFAULT_COVERAGE_FACTOR, DEFAULT_ENBW_TYPE_B_REL, DEFAULT_TYPE_B_REL,
                        DEFAULT_U_REL_ATTENUATION, DEFAULT_U_REL_RESPONSIVITY, MICRO)
from .dataset import Dataset, ToneCalibration
from .esa import EsaConfig
from .exceptions import HetCalInputException
from .receiver_model import ChannelParams, FieldParams, ReceiverParams, apply_attenuation, lumped_efficiency
from .sweep_report import SweepGrid, SweepPoint, SweepReport
from .trace_synthesis import (MonitorModel, expected_spectrum, sample_trace, synthesize_monitor_samples,
                              synthesize_tone_cal_trace, tone_spectrum)

__all__ = [
    'SWEEP_AXES', 'DEFAULT_TIMESTAMP', 'LossChainUncertainty', 'AnalysisOptions', 'Scenario', 'SweepSpec',
    'derive_seed', 'acquire_dataset', 'run_protocol', 'tone_calibration', 'tone_calibrations', 'run_point', 'run_sweep',
    'run_grid'
]

logger = logging.getLogger(__name__)

SWEEP_AXES = ('signal_power', 'attenuation', 'if_frequency')

DEFAULT_TIMESTAMP = '2000-01-01T00:00:00+00:00'

# Random streams of one acquisition, in protocol order
_STREAMS = ('electronic', 'monitor_dark', 'shot', 'quadrature', 'monitor')

# Entropy tags separating protocol acquisitions from tone calibrations
_ACQUISITION_TAG = 0
_TONE_CAL_TAG = 1
_GRID_TAG = 2


def default_receiver() -> ReceiverParams:
    """Free-space receiver with lumped efficiency 0.345"""
    return ReceiverParams(tau_alpha=0.5, eta1=0.75, eta2=0.75, eta_mm=0.92)


@dataclass(frozen=True)
class LossChainUncertainty():
    """
    Uncertainties of the independently measured loss-chain factors

    Args:
        u_rel_tau_alpha (float): relative u of the signal-path transmission
        u_rel_eta_av (float): relative u of the average quantum efficiency
        u_rel_eta_mm (float): relative u of the mode overlap
        u_delta_tau (float): absolute u of the beam-splitter imbalance
    """
    u_rel_tau_alpha: float = 0.015
    u_rel_eta_av: float = 0.02
    u_rel_eta_mm: float = 0.0265
    u_delta_tau: float = 0.01

    def reference(self, rx : ReceiverParams) -> UncertainValue:
        """
        Loss-chain efficiency eta_sep of the receiver (no channel)
        """
        factors = [
            UncertainValue.from_relative(rx['tau_alpha'], self.u_rel_tau_alpha, 'typeB', 'tau_alpha'),
            UncertainValue.from_relative(rx['eta_av'], self.u_rel_eta_av, 'typeB', 'eta_av'),
            UncertainValue.from_relative(rx['eta_mm'], self.u_rel_eta_mm, 'typeB', 'eta_mm'),
        ]
        return loss_chain_estimate(factors, UncertainValue(rx['delta_tau'], self.u_delta_tau, 'typeB', 'delta_tau'))


@dataclass(frozen=True)
class AnalysisOptions():
    """
    Settings of the analysis pipeline applied to simulated acquisitions
    """
    type_b_rel: float = DEFAULT_TYPE_B_REL
    k: float = DEFAULT_COVERAGE_FACTOR
    u_rel_attenuation: float = DEFAULT_U_REL_ATTENUATION
    u_rel_responsivity: float = DEFAULT_U_REL_RESPONSIVITY
    enbw_type_b_rel: float = DEFAULT_ENBW_TYPE_B_REL
    enbw_hz: Optional[float] = None
    tone_halfwidth_hz: Optional[float] = None
    noise_region: Optional[Tuple[float, float]] = None

    @property
    def window(self) -> dict:
        return {'tone_halfwidth_hz': self.tone_halfwidth_hz, 'noise_region': self.noise_region}


@dataclass(frozen=True)
class Scenario():
    """
    One simulated operating point of the calibration protocol.

    Args:
        rx (ReceiverParams): ground-truth receiver
        fields (FieldParams): signal and LO at the receiver reference plane, before the channel
        channel (ChannelParams): transmissions between the monitor tap and the receiver (sweep ND filters)
        esa (EsaConfig): analyzer settings
        monitor (MonitorModel): power monitor
        s_elec (float): white electronic noise density, output units^2/Hz
        n_repeats (int): acquisitions per point. Default 10
        seed (int): base seed
        attenuation_l (float): fixed transmission l between the monitor and the receiver plane. Default 0.01
        n_dark (int): samples of the both-blocked monitor batch. Default 100
        n_monitor (int): monitor samples recorded with each quadrature trace. Default 100
        deterministic (bool): noise-free expectation mode
        timestamp (str): ISO 8601 time written into datasets
        loss_chain (LossChainUncertainty): uncertainties of the independent loss-chain reference
        u_rel_transmission (float): relative u of the channel transmission product
        analysis (AnalysisOptions): analysis settings
    """
    rx: ReceiverParams = field(default_factory=default_receiver)
    fields: FieldParams = field(default_factory=FieldParams)
    channel: ChannelParams = field(default_factory=ChannelParams)
    esa: EsaConfig = field(default_factory=EsaConfig)
    monitor: MonitorModel = field(default_factory=MonitorModel)
    s_elec: float = 6e14
    n_repeats: int = 10
    seed: int = 0
    attenuation_l: float = 0.01
    n_dark: int = 100
    n_monitor: int = 100
    deterministic: bool = False
    timestamp: str = DEFAULT_TIMESTAMP
    loss_chain: LossChainUncertainty = field(default_factory=LossChainUncertainty)
    u_rel_transmission: float = 0.0
    analysis: AnalysisOptions = field(default_factory=AnalysisOptions)

    def __post_init__(self):
        for name in ('n_repeats', 'n_dark', 'n_monitor'):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise HetCalInputException(f"scenario.{name}={value} must be an integer >= 1")
        if int(self.seed) != self.seed or self.seed < 0:
            raise HetCalInputException(f"scenario.seed={self.seed} must be a non-negative integer")
        if self.s_elec < 0:
            raise HetCalInputException(f"scenario.s_elec={self.s_elec} must be >= 0")
        if not 0 < self.attenuation_l <= 1:
            raise HetCalInputException(f"scenario.attenuation_l={self.attenuation_l} outside admissible range (0, 1]")
        if self.u_rel_transmission < 0:
            raise HetCalInputException(f"scenario.u_rel_transmission={self.u_rel_transmission} must be >= 0")
        self.esa.require_in_span(self.fields['if_hz'])

    def replace(self, **changes) -> "Scenario":
        return replace(self, **changes)

    @property
    def eta_true(self) -> float:
        """
        Ground-truth efficiency seen behind the channel
        """
        return lumped_efficiency(self.rx) * self.channel['total_transmission']

    @property
    def p_monitor_uw(self) -> float:
        """
        Optical power on the monitor in µW
        """
        return self.fields['signal_power_w'] / self.attenuation_l / MICRO

    def reference(self) -> UncertainValue:
        """
        Loss-chain reference eta_sep scaled by the channel transmission
        """
        total = self.channel['total_transmission']
        transmission = UncertainValue.from_relative(total, self.u_rel_transmission, 'typeB', 'transmission')
        return scaled_reference(self.loss_chain.reference(self.rx), transmission)


@dataclass(frozen=True)
class SweepSpec():
    """
    Validation experiment: one scenario varied along one axis

    Args:
        axis (str): 'signal_power' (W), 'attenuation' (extra channel transmission T) or 'if_frequency' (Hz)
        points (list[float]): axis values, at least 2
        base (Scenario): scenario the points derive from
    """
    axis: str
    points: Tuple[float, ...]
    base: Scenario = field(default_factory=Scenario)

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(float(p) for p in self.points))
        if self.axis not in SWEEP_AXES:
            raise HetCalInputException(f"sweep.axis='{self.axis}' is not one of {', '.join(SWEEP_AXES)}")
        if len(self.points) < 2:
            raise HetCalInputException(f"sweep.points needs at least 2 values, got {len(self.points)}")
        for value in self.points:
            if self.axis == 'attenuation' and not 0 < value <= 1:
                raise HetCalInputException(f"sweep.points value {value} outside admissible transmission range (0, 1]")
            if value <= 0:
                raise HetCalInputException(f"sweep.points value {value} must be positive for axis {self.axis}")
        for j in range(len(self.points)):
            self.scenario_at(j)

    def scenario_at(self, j : int) -> Scenario:
        """
        Scenario of point j
        """
        base = self.base
        value = self.points[j]
        if self.axis == 'signal_power':
            return base.replace(fields=base.fields.replace(photon_flux_signal=value / base.fields['photon_energy']))
        if self.axis == 'attenuation':
            return base.replace(channel=base.channel.with_factor(value))
        return base.replace(fields=base.fields.replace(if_hz=value), esa=base.esa.replace(center_hz=value))


def derive_seed(base_seed : int, point : int, repeat : int, tag : int = _ACQUISITION_TAG) -> int:
    """
    Independent, reproducible seed of repeat i at sweep point j
    """
    return int(np.random.SeedSequence([base_seed, point, repeat, tag]).generate_state(1)[0])


def acquire_dataset(sc : Scenario, seed : int) -> Dataset:
    """
    One pass of the acquisition sequence:

    1. both inputs blocked: electronic trace and the monitor dark batch
    2. LO only: shot-noise reference trace
    3. signal + LO: quadrature trace with synchronous monitor samples
    """
    streams = dict(zip(_STREAMS, np.random.SeedSequence(seed).spawn(len(_STREAMS))))
    fields_rx = apply_attenuation(sc.fields, sc.channel)
    det = sc.deterministic

    electronic = sample_trace(expected_spectrum(sc.rx, fields_rx, sc.esa, 'electronic', sc.s_elec), sc.esa,
                              streams['electronic'], deterministic=det)
    dark = synthesize_monitor_samples(sc.monitor, 0.0, sc.n_dark, streams['monitor_dark'], deterministic=det)

    shot = sample_trace(expected_spectrum(sc.rx, fields_rx, sc.esa, 'shot', sc.s_elec), sc.esa,
                        streams['shot'], deterministic=det)

    quadrature = sample_trace(expected_spectrum(sc.rx, fields_rx, sc.esa, 'quadrature', sc.s_elec), sc.esa,
                              streams['quadrature'], tone=tone_spectrum(sc.rx, fields_rx, sc.esa), deterministic=det)
    samples = synthesize_monitor_samples(sc.monitor, sc.p_monitor_uw, sc.n_monitor, streams['monitor'], deterministic=det)

    return Dataset(esa=sc.esa,
                   trace_electronic=electronic,
                   trace_shot=shot,
                   trace_quadrature=quadrature,
                   monitor_samples=samples,
                   monitor_dark_mean=float(np.mean(dark)),
                   responsivity=sc.monitor['responsivity'],
                   attenuation_l=sc.attenuation_l,
                   wavelength_m=sc.fields['wavelength'],
                   if_hz=sc.fields['if_hz'],
                   seed=seed,
                   timestamp=sc.timestamp,
                   ground_truth={'eta_true': sc.eta_true, 'p_alpha_w': sc.fields['signal_power_w']})


def run_protocol(sc : Scenario, point_index : int = 0) -> List[Dataset]:
    """
    Run the acquisition sequence n_repeats times

    Args:
        sc (Scenario): operating point
        point_index (int): sweep point index, part of the seed derivation

    Returns:
        list[Dataset]: one dataset per repeat, each with its own derived seed
    """
    datasets = [acquire_dataset(sc, derive_seed(sc.seed, point_index, i)) for i in range(sc.n_repeats)]
    logger.debug("Point %d: acquired %d dataset(s) (eta_true=%.6g)", point_index, len(datasets), sc.eta_true)
    return datasets


def tone_calibration(sc : Scenario, point_index : int = 0, repeat : int = 0) -> ToneCalibration:
    """
    Narrow-tone calibration trace at the analyzer center for the scenario's analyzer settings
    """
    seed = derive_seed(sc.seed, point_index, repeat, _TONE_CAL_TAG)
    tone_power = sc.esa['reference_power']
    trace = synthesize_tone_cal_trace(sc.esa, sc.esa['center_hz'], tone_power, seed, deterministic=sc.deterministic)
    return ToneCalibration(sc.esa, trace, sc.esa['center_hz'], tone_power, seed)


def tone_calibrations(sc : Scenario, point_index : int = 0) -> List[ToneCalibration]:
    """
    Tone calibration traces of one point: one per repeat, a single trace in noise-free mode
    """
    n = 1 if sc.deterministic else sc.n_repeats
    return [tone_calibration(sc, point_index, i) for i in range(n)]


def _enbw_for(sc : Scenario, point_index : int) -> EnbwResult:
    options = sc.analysis
    if options.enbw_hz is not None:
        return EnbwResult.from_value(options.enbw_hz, sc.esa['rbw_hz'], options.enbw_type_b_rel)
    traces = [cal.trace for cal in tone_calibrations(sc, point_index)]
    return compute_enbw(traces, sc.esa['rbw_hz'], sc.esa['reference_power'], options.enbw_type_b_rel)


def run_point(sc : Scenario, point_index : int = 0, axis_value : Optional[float] = None) -> SweepPoint:
    """
    Acquire, calibrate the ENBW, estimate and compare one operating point with the ground truth
    eta_true (behind the channel) and with the loss-chain reference
    """
    datasets = run_protocol(sc, point_index)
    enbw = _enbw_for(sc, point_index)
    options = sc.analysis
    estimate = estimate_from_datasets(datasets, enbw, options.type_b_rel, options.k,
                                      options.u_rel_attenuation, options.u_rel_responsivity, **options.window)
    eta_true = datasets[0].ground_truth['eta_true']
    reference = sc.reference()
    comparison = compare_estimates(estimate, UncertainValue(eta_true), options.k)
    reference_comparison = compare_estimates(estimate, reference, options.k)
    logger.info("Point %d (%s): %s, eta_true=%.6g, E_n=%.3f (loss chain %.3f)", point_index, axis_value, estimate,
                eta_true, comparison.e_n, reference_comparison.e_n)
    return SweepPoint(axis_value=axis_value,
                      estimate=estimate,
                      eta_true=eta_true,
                      eta_ref=reference,
                      e_n=comparison.e_n,
                      e_n_ref=reference_comparison.e_n)


def run_sweep(spec : SweepSpec, max_workers : int = 1) -> SweepReport:
    """
    Run every point of a validation sweep and collect the report.

    Points are independent and may run on a thread pool; the report keeps point order.

    Args:
        spec (SweepSpec): sweep
        max_workers (int): worker threads. Default 1 (sequential)

    Returns:
        SweepReport
    """
    if max_workers < 1:
        raise HetCalInputException(f"max_workers={max_workers} must be >= 1")
    jobs = [(spec.scenario_at(j), j, value) for j, value in enumerate(spec.points)]
    logger.info("Sweep along %s over %d point(s)", spec.axis, len(jobs))
    if max_workers == 1:
        points = [run_point(*job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            points = list(pool.map(lambda job: run_point(*job), jobs))
    return SweepReport(spec.axis, points)


def run_grid(if_points : Sequence[float], power_points : Sequence[float], base : Optional[Scenario] = None,
             max_workers : int = 1) -> SweepGrid:
    """
    Signal-power sweep repeated at every intermediate frequency (analyzer center following the IF).

    Each IF draws its own random streams from the base seed.

    Args:
        if_points (list[float]): intermediate frequencies in Hz, at least 1
        power_points (list[float]): signal powers in W, at least 2
        base (Scenario): scenario the grid derives from. Default Scenario()
        max_workers (int): worker threads of each power sweep

    Returns:
        SweepGrid
    """
    base = Scenario() if base is None else base
    if len(if_points) == 0:
        raise HetCalInputException("run_grid needs at least one IF")
    reports = []
    for i, if_hz in enumerate(if_points):
        if if_hz <= 0:
            raise HetCalInputException(f"IF {if_hz} must be positive")
        sc = base.replace(fields=base.fields.replace(if_hz=if_hz), esa=base.esa.replace(center_hz=if_hz),
                          seed=derive_seed(base.seed, i, 0, _GRID_TAG))
        logger.info("Grid row %d: IF %.6g Hz", i, if_hz)
        reports.append(run_sweep(SweepSpec('signal_power', power_points, sc), max_workers))
    return SweepGrid(if_points, reports)
