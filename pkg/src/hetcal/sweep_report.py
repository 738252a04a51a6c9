# Copyright © 2026 The hetcal Authors. All Rights Reserved.

from collections import UserList
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from .analysis import EfficiencyEstimate, UncertainValue, compare_estimates, weighted_mean
from .exceptions import HetCalInputException
from .utils.serialization import dumps_document, write_atomic

__all__ = ['SweepPoint', 'SweepReport', 'SweepGrid', 'REPORT_COLUMNS']

REPORT_COLUMNS = ['axis_value', 'eta', 'u_std', 'expanded_u_k2', 'eta_true', 'e_n']


@dataclass(frozen=True)
class SweepPoint():
    """
    Result at one sweep point

    Args:
        axis_value (float): value of the swept quantity
        estimate (EfficiencyEstimate): protocol estimate
        eta_true (float): ground-truth efficiency behind the channel
        eta_ref (UncertainValue): independent loss-chain reference
        e_n (float): normalized error of the estimate against eta_true
        e_n_ref (float): normalized error of the estimate against eta_ref
    """
    axis_value: float
    estimate: EfficiencyEstimate
    eta_true: float
    eta_ref: UncertainValue
    e_n: float
    e_n_ref: float

    @property
    def agree(self) -> bool:
        return self.e_n <= 1

    def row(self) -> dict:
        return {
            'axis_value': self.axis_value,
            'eta': self.estimate.eta.value,
            'u_std': self.estimate.eta.u_std,
            'expanded_u_k2': 2 * self.estimate.eta.u_std,
            'eta_true': self.eta_true,
            'e_n': self.e_n,
        }

    def to_dict(self) -> dict:
        doc = self.row()
        doc.update({
            'eta_ref': self.eta_ref.value,
            'u_ref': self.eta_ref.u_std,
            'e_n_ref': self.e_n_ref,
            'agree': self.agree,
            'estimate': self.estimate.to_dict(),
        })
        return doc


class SweepReport(UserList):
    """
    `SweepReport` is the ordered list of :class:`SweepPoint` results of one validation sweep, with a summary
    and tabular (CSV / JSON) emission.

    Args:
        axis (str): swept quantity ('signal_power', 'attenuation' or 'if_frequency')
        points (list[SweepPoint]): one entry per sweep point, in sweep order
    """

    __slots__ = ['axis', 'data']

    def __init__(self, axis : str, points : Optional[List[SweepPoint]] = None):
        self.axis = axis
        self.data = list(points) if points is not None else []

    def __eq__(self, other : "SweepReport") -> bool:
        return isinstance(other, SweepReport) and self.axis == other.axis and self.data == other.data

    @property
    def etas(self) -> np.ndarray:
        return np.array([point.estimate.eta.value for point in self.data])

    @property
    def u_stds(self) -> np.ndarray:
        return np.array([point.estimate.eta.u_std for point in self.data])

    @property
    def axis_values(self) -> np.ndarray:
        return np.array([point.axis_value for point in self.data])

    def max_pairwise_e_n(self) -> float:
        """
        Largest normalized error between any two estimates of the sweep
        """
        values = [compare_estimates(a.estimate, b.estimate).e_n for a, b in combinations(self.data, 2)]
        return max(values) if values else 0.0

    def slope(self) -> Optional[float]:
        """
        Weighted fit slope: log-log of eta against T for attenuation sweeps, linear eta against power for power sweeps.
        None for other axes.
        """
        if len(self.data) < 2:
            return None
        etas, u = self.etas, self.u_stds
        if self.axis == 'attenuation':
            # sigma(log eta) = u/eta
            return float(np.polyfit(np.log(self.axis_values), np.log(etas), 1, w=etas / u)[0])
        if self.axis == 'signal_power':
            return float(np.polyfit(self.axis_values, etas, 1, w=1 / u)[0])
        return None

    def summary(self) -> dict:
        """
        Summary of the sweep

        Returns:
            dict: mean_eta, weighted_mean_eta, weighted_mean_u, spread, mean_expanded_u, slope,
            max_pairwise_e_n, fraction_agree
        """
        etas = self.etas
        representative = weighted_mean([point.estimate for point in self.data])
        return {
            'axis': self.axis,
            'n_points': len(self.data),
            'mean_eta': float(np.mean(etas)),
            'weighted_mean_eta': representative.value,
            'weighted_mean_u': representative.u_std,
            'spread': float(np.max(etas) - np.min(etas)),
            'mean_expanded_u': float(np.mean([point.estimate.expanded_u for point in self.data])),
            'slope': self.slope(),
            'max_pairwise_e_n': self.max_pairwise_e_n(),
            'fraction_agree': float(np.mean([point.agree for point in self.data])),
        }

    def to_dataframe(self) -> pd.DataFrame:
        """
        One row per point with columns axis_value, eta, u_std, expanded_u_k2, eta_true, e_n
        """
        return pd.DataFrame([point.row() for point in self.data], columns=REPORT_COLUMNS)

    def to_csv(self, path : Union[str, Path, None] = None) -> str:
        """
        CSV text of :meth:`to_dataframe`, optionally written atomically to path
        """
        text = self.to_dataframe().to_csv(index=False)
        if path is not None:
            write_atomic(path, text)
        return text

    def to_dict(self) -> dict:
        return {
            'axis': self.axis,
            'points': [point.to_dict() for point in self.data],
            'summary': self.summary(),
        }

    def to_json(self, path : Union[str, Path, None] = None) -> str:
        """
        JSON document with the per-point rows, the full budget of each estimate and the summary
        """
        text = dumps_document(self.to_dict())
        if path is not None:
            write_atomic(path, text)
        return text

    def plot(self, **kwargs):
        """
        Plot eta with its expanded uncertainty against the axis value

        Returns:
            Figure
        """
        from .visualize import plot_sweep
        return plot_sweep(self, **kwargs)


class SweepGrid(UserList):
    """
    `SweepGrid` holds one signal-power :class:`SweepReport` per intermediate frequency, the two-axis
    stability check of the protocol.

    Args:
        if_values (list[float]): intermediate frequencies in Hz, one per report
        reports (list[SweepReport]): power sweeps in the order of if_values
    """

    __slots__ = ['if_values', 'data']

    def __init__(self, if_values : List[float], reports : Optional[List[SweepReport]] = None):
        self.if_values = [float(value) for value in if_values]
        self.data = list(reports) if reports is not None else []
        if len(self.data) != len(self.if_values):
            raise HetCalInputException(f"SweepGrid needs one report per IF, got {len(self.data)} for {len(self.if_values)}")

    def __eq__(self, other : "SweepGrid") -> bool:
        return isinstance(other, SweepGrid) and self.if_values == other.if_values and self.data == other.data

    @property
    def points(self) -> List[SweepPoint]:
        return [point for report in self.data for point in report]

    def per_if(self) -> List[UncertainValue]:
        """
        Weighted mean efficiency of each power sweep
        """
        return [weighted_mean([point.estimate for point in report]) for report in self.data]

    def summary(self) -> dict:
        """
        Summary over the whole grid

        Returns:
            dict: weighted_mean_eta and weighted_mean_u over every point (points taken as independent),
            if_spread of the per-IF weighted means, max_if_e_n between per-IF weighted means, fraction_agree
        """
        points = self.points
        overall = weighted_mean([point.estimate for point in points])
        per_if = self.per_if()
        values = [v.value for v in per_if]
        pairs = [compare_estimates(a, b).e_n for a, b in combinations(per_if, 2)]
        return {
            'n_if': len(self.data),
            'n_points': len(points),
            'weighted_mean_eta': overall.value,
            'weighted_mean_u': overall.u_std,
            'if_spread': float(np.max(values) - np.min(values)),
            'max_if_e_n': max(pairs) if pairs else 0.0,
            'fraction_agree': float(np.mean([point.agree for point in points])),
        }

    def to_dataframe(self) -> pd.DataFrame:
        """
        One row per grid point: if_hz followed by the sweep report columns (axis_value is the signal power)
        """
        frames = [report.to_dataframe().assign(if_hz=if_hz) for if_hz, report in zip(self.if_values, self.data)]
        return pd.concat(frames, ignore_index=True)[['if_hz'] + REPORT_COLUMNS]

    def to_csv(self, path : Union[str, Path, None] = None) -> str:
        text = self.to_dataframe().to_csv(index=False)
        if path is not None:
            write_atomic(path, text)
        return text

    def to_json(self, path : Union[str, Path, None] = None) -> str:
        doc = {
            'if_values': self.if_values,
            'reports': [report.to_dict() for report in self.data],
            'summary': self.summary(),
        }
        text = dumps_document(doc)
        if path is not None:
            write_atomic(path, text)
        return text
