# Copyright © 2026 The hetcal Authors. All Rights Reserved.

"""
Relative-quadrature uncertainty arithmetic, loss-chain references and normalized-error comparison.
"""

from dataclasses import asdict, dataclass
from typing import Iterable, NamedTuple, Union

import numpy as np

from ..constants import DEFAULT_COVERAGE_FACTOR
from ..exceptions import HetCalInputException

__all__ = [
    'UNCERTAINTY_KINDS', 'UncertainValue', 'Comparison', 'propagate_uncertainty', 'loss_chain_estimate',
    'compare_estimates', 'scaled_reference', 'weighted_mean'
]

UNCERTAINTY_KINDS = ('typeA', 'typeB', 'combined')


@dataclass(frozen=True)
class UncertainValue():
    """
    A value with its standard uncertainty (k = 1) in the same units.

    Args:
        value (float): best estimate
        u_std (float): standard uncertainty, >= 0
        kind (str): 'typeA' (statistical), 'typeB' (otherwise evaluated) or 'combined'
        label (str): optional name used in budgets
    """
    value: float
    u_std: float = 0.0
    kind: str = 'combined'
    label: str = ''

    def __post_init__(self):
        if not self.u_std >= 0:
            raise HetCalInputException(f"Standard uncertainty must be >= 0, was {self.u_std}")
        if self.kind not in UNCERTAINTY_KINDS:
            raise HetCalInputException(f"Uncertainty kind '{self.kind}' is not one of {', '.join(UNCERTAINTY_KINDS)}")

    @classmethod
    def from_relative(cls, value : float, u_rel : float, kind : str = 'combined', label : str = '') -> "UncertainValue":
        return cls(value, abs(value) * u_rel, kind, label)

    @property
    def rel(self) -> float:
        """
        Relative standard uncertainty u/|value| (0 for an exact zero, inf for an uncertain zero)
        """
        if self.value == 0:
            return 0.0 if self.u_std == 0 else np.inf
        return self.u_std / abs(self.value)

    def expanded(self, k : float = DEFAULT_COVERAGE_FACTOR) -> float:
        """Expanded uncertainty U = k u"""
        return k * self.u_std

    def to_dict(self) -> dict:
        return asdict(self)

    def __str__(self) -> str:
        return f"{self.value:.6g} ± {self.u_std:.2g} ({self.kind})"


class Comparison(NamedTuple):
    e_n: float
    agree: bool


def propagate_uncertainty(rel_components : Iterable[float]) -> float:
    """
    Combined relative standard uncertainty of a product of independent factors: sqrt(sum r_i^2)

    Args:
        rel_components (list[float]): relative standard uncertainties, each >= 0

    Returns:
        float: combined relative uncertainty (0 for no components)

    Example
    -------
        propagate_uncertainty([0.0075, 0.003, 0.002])  # 0.00832
    """
    components = np.asarray(list(rel_components), dtype=np.float64)
    if np.any(components < 0) or np.any(np.isnan(components)):
        raise HetCalInputException("Relative uncertainty components must be >= 0")
    return float(np.sqrt(np.sum(components**2)))


def loss_chain_estimate(components : Iterable[UncertainValue], delta_tau : UncertainValue) -> UncertainValue:
    """
    Independent efficiency reference eta_sep = (1 - 4 delta_tau^2) * prod(factors).

    The imbalance enters with sensitivity 8 delta_tau / (1 - 4 delta_tau^2) on the relative uncertainty.

    Args:
        components (list[UncertainValue]): independently measured factors (tau_alpha, eta_av, eta_mm, ...)
        delta_tau (UncertainValue): beam-splitter imbalance

    Returns:
        UncertainValue: eta_sep with combined standard uncertainty
    """
    components = list(components)
    for factor in components:
        if factor.value <= 0:
            raise HetCalInputException(f"Loss-chain factor {factor.label or factor.value} must be positive")
    balance = 1 - 4 * delta_tau.value**2
    if balance <= 0:
        raise HetCalInputException(f"delta_tau={delta_tau.value} violates 4*delta_tau**2 < 1")

    value = balance * float(np.prod([factor.value for factor in components]))
    rel = [factor.rel for factor in components]
    rel.append(8 * abs(delta_tau.value) * delta_tau.u_std / balance)
    return UncertainValue.from_relative(value, propagate_uncertainty(rel), 'combined', 'eta_sep')


def _expanded(estimate, k : float) -> float:
    if hasattr(estimate, 'expanded_u'):
        return estimate.expanded_u
    return estimate.expanded(k)


def _value(estimate) -> float:
    if hasattr(estimate, 'eta'):
        return estimate.eta.value
    return estimate.value


def compare_estimates(a, b, k : float = DEFAULT_COVERAGE_FACTOR) -> Comparison:
    """
    Normalized error E_n = |a - b| / sqrt(U_a^2 + U_b^2) between two results.

    Args:
        a (EfficiencyEstimate or UncertainValue): first result. An EfficiencyEstimate contributes its own expanded uncertainty
        b (EfficiencyEstimate or UncertainValue): second result
        k (float): coverage factor applied to UncertainValue inputs

    Returns:
        Comparison: (e_n, agree) with agree = e_n <= 1

    Raises:
        HetCalInputException: both expanded uncertainties are zero
    """
    u_a, u_b = _expanded(a, k), _expanded(b, k)
    combined = np.hypot(u_a, u_b)
    if combined == 0:
        raise HetCalInputException("Cannot compare results with zero expanded uncertainties")
    e_n = float(abs(_value(a) - _value(b)) / combined)
    return Comparison(e_n, e_n <= 1)


def scaled_reference(eta_sep : UncertainValue, transmission : Union[UncertainValue, float]) -> UncertainValue:
    """
    Reference efficiency behind an additional transmission T, relative uncertainties combined in quadrature
    """
    if not isinstance(transmission, UncertainValue):
        transmission = UncertainValue(float(transmission), 0.0, 'typeB')
    if not 0 < transmission.value <= 1:
        raise HetCalInputException(f"Transmission {transmission.value} outside admissible range (0, 1]")
    return UncertainValue.from_relative(eta_sep.value * transmission.value,
                                        propagate_uncertainty([eta_sep.rel, transmission.rel]),
                                        'combined', eta_sep.label)


def weighted_mean(estimates : Iterable) -> UncertainValue:
    """
    Inverse-variance weighted mean of independent results (EfficiencyEstimate or UncertainValue)
    """
    values = [estimate.eta if hasattr(estimate, 'eta') else estimate for estimate in estimates]
    if len(values) == 0:
        raise HetCalInputException("weighted_mean needs at least one value")
    u = np.array([v.u_std for v in values])
    if np.any(u <= 0):
        raise HetCalInputException("weighted_mean needs strictly positive standard uncertainties")
    weights = 1 / u**2
    mean = float(np.sum(weights * np.array([v.value for v in values])) / np.sum(weights))
    return UncertainValue(mean, float(1 / np.sqrt(np.sum(weights))), 'combined', 'weighted_mean')
