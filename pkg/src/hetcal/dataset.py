# Copyright © 2026 The hetcal Authors. All Rights Reserved.

"""
Analyzer traces, protocol acquisitions and their JSON documents.
"""

from dataclasses import dataclass, field
import json
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .constants import SCHEMA_VERSION
from .esa import EsaConfig, format_filter_family
from .exceptions import HetCalDataError, HetCalException
from .units import dbmv_to_linear
from .utils.serialization import dumps_document, write_atomic

__all__ = [
    'Trace', 'Dataset', 'ToneCalibration', 'dataset_to_document', 'dataset_from_document',
    'persist_dataset', 'load_dataset', 'persist_tone_trace', 'load_tone_trace'
]

ESA_KEYS = ('center_hz', 'span_hz', 'rbw_hz', 'n_bins', 'n_avg', 'filter_family', 'reference_power')


class Trace():
    """
    One displayed analyzer trace: a uniform, ascending frequency axis and a level per bin in dBmV.

    Args:
        freq_hz (array[float]): Frequency axis, where values_dbmv[n] is displayed at freq_hz[n]
        values_dbmv (array[float]): Levels in dBmV
    """

    __slots__ = ['freq_hz', 'values_dbmv']

    def __init__(self, freq_hz, values_dbmv):
        self.freq_hz = np.array(freq_hz, dtype=np.float64)
        self.values_dbmv = np.array(values_dbmv, dtype=np.float64)
        if self.freq_hz.ndim != 1 or self.freq_hz.shape != self.values_dbmv.shape:
            raise HetCalDataError(f"Trace axis and values differ in shape ({self.freq_hz.shape} vs {self.values_dbmv.shape})")

    def __len__(self) -> int:
        return len(self.freq_hz)

    def __eq__(self, other : "Trace") -> bool:
        """Compare 2 Traces

        Args:
            other (Trace)

        Returns:
            bool: If axis and levels are identical
        """
        return isinstance(other, Trace) and np.array_equal(self.freq_hz, other.freq_hz) and np.array_equal(self.values_dbmv, other.values_dbmv)

    @property
    def bin_width_hz(self) -> float:
        return (self.freq_hz[-1] - self.freq_hz[0]) / (len(self) - 1)

    def to_linear(self, reference_power : float = 1.0) -> np.ndarray:
        """
        Linear power per bin
        """
        return dbmv_to_linear(self.values_dbmv, reference_power)

    def check_axis(self) -> None:
        """
        Raise HetCalDataError unless the axis is strictly ascending and uniformly spaced
        """
        if len(self) < 2:
            raise HetCalDataError("Trace axis needs at least 2 points")
        steps = np.diff(self.freq_hz)
        if not np.all(steps > 0):
            raise HetCalDataError("Trace frequency axis is not monotone ascending")
        if not np.allclose(steps, self.bin_width_hz, rtol=1e-6, atol=0):
            raise HetCalDataError("Trace frequency axis is not uniformly spaced")

    def plot(self, **kwargs):
        """
        Plot the trace in dBmV against frequency in MHz

        Keyword Args:
            label (str): legend label
            title (str): plot title. Default is no title
            ax (matplotlib.axes.Axes): existing axes to draw into

        Returns:
            Figure
        """
        from .visualize import plot_traces
        return plot_traces({kwargs.pop('label', 'trace'): self}, **kwargs)


@dataclass
class Dataset():
    """
    One protocol acquisition: the electronic, shot (LO only) and quadrature (signal + LO) traces on a
    shared axis, the synchronous power-monitor record and metadata.

    Monitor samples are raw voltages; monitor_dark_mean is the mean of the both-blocked batch.
    ground_truth, when present, holds eta_true and p_alpha_w.
    """
    esa: EsaConfig
    trace_electronic: Trace
    trace_shot: Trace
    trace_quadrature: Trace
    monitor_samples: np.ndarray
    monitor_dark_mean: float
    responsivity: float
    attenuation_l: float
    wavelength_m: float
    if_hz: float
    seed: int
    timestamp: str
    ground_truth: Optional[dict] = field(default=None)

    def __post_init__(self):
        self.monitor_samples = np.array(self.monitor_samples, dtype=np.float64).ravel()
        self.validate()

    def validate(self) -> None:
        """
        Raise HetCalDataError unless the traces share one uniform axis matching the analyzer settings
        and at least one monitor sample is present
        """
        self.trace_shot.check_axis()
        for name in ('trace_electronic', 'trace_quadrature'):
            if not np.array_equal(getattr(self, name).freq_hz, self.trace_shot.freq_hz):
                raise HetCalDataError(f"{name} does not share the frequency axis of trace_shot")
        if len(self.trace_shot) != self.esa['n_bins']:
            raise HetCalDataError(f"Trace length {len(self.trace_shot)} differs from esa.n_bins={self.esa['n_bins']}")
        if not np.isclose(self.trace_shot.bin_width_hz, self.esa.bin_width_hz, rtol=1e-6):
            raise HetCalDataError(f"Trace spacing {self.trace_shot.bin_width_hz} Hz differs from esa.span_hz/(n_bins-1)")
        if self.monitor_samples.size < 1:
            raise HetCalDataError("Dataset needs at least one monitor sample")

    @property
    def freq_hz(self) -> np.ndarray:
        return self.trace_shot.freq_hz

    def to_document(self) -> dict:
        return dataset_to_document(self)

    def plot(self, **kwargs):
        """
        Plot the three traces of the acquisition in one figure
        """
        from .visualize import plot_traces
        return plot_traces({
            'electronic': self.trace_electronic,
            'shot': self.trace_shot,
            'quadrature': self.trace_quadrature}, **kwargs)


@dataclass
class ToneCalibration():
    """
    Trace of a single narrow tone used to calibrate the equivalent noise bandwidth
    """
    esa: EsaConfig
    trace: Trace
    tone_hz: float
    tone_power: float
    seed: Optional[int] = None


def _esa_document(cfg : EsaConfig) -> dict:
    return {
        'center_hz': float(cfg['center_hz']),
        'span_hz': float(cfg['span_hz']),
        'rbw_hz': float(cfg['rbw_hz']),
        'n_bins': int(cfg['n_bins']),
        'n_avg': int(cfg['n_avg']),
        'filter_family': format_filter_family(cfg),
        'reference_power': float(cfg['reference_power']),
    }


def _esa_from_document(doc : dict) -> EsaConfig:
    missing = [key for key in ESA_KEYS if key not in doc]
    if missing:
        raise HetCalDataError(f"Document esa section is missing {', '.join(missing)}")
    try:
        return EsaConfig(**{key: doc[key] for key in ESA_KEYS})
    except HetCalException as err:
        raise HetCalDataError(f"Invalid esa section: {err}") from err


def _require(doc : dict, keys, section : str = 'document') -> None:
    if not isinstance(doc, dict):
        raise HetCalDataError(f"{section} must be a JSON object")
    missing = [key for key in keys if key not in doc]
    if missing:
        raise HetCalDataError(f"{section} is missing required key(s): {', '.join(missing)}")


def _check_version(doc : dict) -> None:
    if doc.get('version') != SCHEMA_VERSION:
        raise HetCalDataError(f"Unsupported schema version {doc.get('version')!r} (expected {SCHEMA_VERSION})")


def _float_list(values) -> list:
    return [float(v) for v in values]


def _parse_json(text : str, source : str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise HetCalDataError(f"Malformed JSON in {source}: {err.msg} (line {err.lineno}, column {err.colno})") from err


def dataset_to_document(ds : Dataset) -> dict:
    """
    Self-contained JSON-compatible document of a dataset
    """
    doc = {
        'version': SCHEMA_VERSION,
        'esa': _esa_document(ds.esa),
        'freq_hz': _float_list(ds.freq_hz),
        'trace_electronic_dbmv': _float_list(ds.trace_electronic.values_dbmv),
        'trace_shot_dbmv': _float_list(ds.trace_shot.values_dbmv),
        'trace_quadrature_dbmv': _float_list(ds.trace_quadrature.values_dbmv),
        'monitor': {
            'samples_v': _float_list(ds.monitor_samples),
            'dark_mean_v': float(ds.monitor_dark_mean),
            'responsivity_v_per_uw': float(ds.responsivity),
            'attenuation_l': float(ds.attenuation_l),
        },
        'metadata': {
            'wavelength_m': float(ds.wavelength_m),
            'if_hz': float(ds.if_hz),
            'seed': ds.seed,
            'timestamp_iso8601': ds.timestamp,
        },
    }
    if ds.ground_truth is not None:
        doc['ground_truth'] = {key: float(value) for key, value in ds.ground_truth.items()}
    return doc


def dataset_from_document(doc : dict) -> Dataset:
    """
    Build a dataset from its document

    Raises:
        HetCalDataError: missing keys, schema-version mismatch, inconsistent or non-monotone axis
    """
    _require(doc, ('version', 'esa', 'freq_hz', 'trace_electronic_dbmv', 'trace_shot_dbmv',
                   'trace_quadrature_dbmv', 'monitor', 'metadata'))
    _check_version(doc)
    _require(doc['monitor'], ('samples_v', 'dark_mean_v', 'responsivity_v_per_uw', 'attenuation_l'), 'monitor')
    _require(doc['metadata'], ('wavelength_m', 'if_hz', 'seed', 'timestamp_iso8601'), 'metadata')
    esa = _esa_from_document(doc['esa'])
    try:
        traces = {key: Trace(doc['freq_hz'], doc[f'{key}_dbmv'])
                  for key in ('trace_electronic', 'trace_shot', 'trace_quadrature')}
        monitor = doc['monitor']
        metadata = doc['metadata']
        return Dataset(esa=esa,
                       monitor_samples=monitor['samples_v'],
                       monitor_dark_mean=float(monitor['dark_mean_v']),
                       responsivity=float(monitor['responsivity_v_per_uw']),
                       attenuation_l=float(monitor['attenuation_l']),
                       wavelength_m=float(metadata['wavelength_m']),
                       if_hz=float(metadata['if_hz']),
                       seed=metadata['seed'],
                       timestamp=str(metadata['timestamp_iso8601']),
                       ground_truth=doc.get('ground_truth'),
                       **traces)
    except (TypeError, ValueError) as err:
        raise HetCalDataError(f"Invalid dataset values: {err}") from err


def persist_dataset(ds : Dataset, path : Union[str, Path]) -> Path:
    """
    Write a dataset as one UTF-8 JSON document (atomic replace)
    """
    return write_atomic(path, dumps_document(dataset_to_document(ds)))


def load_dataset(path : Union[str, Path]) -> Dataset:
    """
    Read a dataset written by :func:`persist_dataset`

    Raises:
        HetCalDataError: unreadable, truncated or malformed document
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as err:
        raise HetCalDataError(f"Cannot read dataset {path}: {err}") from err
    return dataset_from_document(_parse_json(text, str(path)))


def persist_tone_trace(cal : ToneCalibration, path : Union[str, Path]) -> Path:
    """
    Write a tone-calibration trace as a JSON document
    """
    doc = {
        'version': SCHEMA_VERSION,
        'esa': _esa_document(cal.esa),
        'freq_hz': _float_list(cal.trace.freq_hz),
        'trace_dbmv': _float_list(cal.trace.values_dbmv),
        'metadata': {
            'tone_hz': float(cal.tone_hz),
            'tone_power': float(cal.tone_power),
            'seed': cal.seed,
        },
    }
    return write_atomic(path, dumps_document(doc))


def load_tone_trace(path : Union[str, Path]) -> ToneCalibration:
    """
    Read a tone-calibration document written by :func:`persist_tone_trace`
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as err:
        raise HetCalDataError(f"Cannot read tone trace {path}: {err}") from err
    doc = _parse_json(text, str(path))
    _require(doc, ('version', 'esa', 'freq_hz', 'trace_dbmv', 'metadata'))
    _check_version(doc)
    _require(doc['metadata'], ('tone_hz', 'tone_power'), 'metadata')
    try:
        trace = Trace(doc['freq_hz'], doc['trace_dbmv'])
        trace.check_axis()
        return ToneCalibration(esa=_esa_from_document(doc['esa']),
                               trace=trace,
                               tone_hz=float(doc['metadata']['tone_hz']),
                               tone_power=float(doc['metadata']['tone_power']),
                               seed=doc['metadata'].get('seed'))
    except (TypeError, ValueError) as err:
        raise HetCalDataError(f"Invalid tone trace values: {err}") from err
