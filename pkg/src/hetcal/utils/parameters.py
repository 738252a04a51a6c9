# Copyright © 2026 The hetcal Authors. All Rights Reserved.

from collections import UserDict, namedtuple
from copy import deepcopy
from numbers import Number

import numpy as np

from ..exceptions import HetCalInputException, HetCalTypeError

from typing import TYPE_CHECKING
if TYPE_CHECKING:  # Fix circular import issue in ModelParameters init
    from hetcal.parameterized_model import ParameterizedModel


class Interval(namedtuple('Interval', ['lower', 'upper', 'closed'])):
    """
    Admissible range of a scalar parameter.

    Args:
        lower (float): Lower bound (default -inf)
        upper (float): Upper bound (default inf)
        closed (str): One of '[]', '[)', '(]', '()'
    """
    __slots__ = ()

    def __new__(cls, lower : float = -np.inf, upper : float = np.inf, closed : str = '[]'):
        if closed not in ('[]', '[)', '(]', '()'):
            raise HetCalTypeError(f"Unsupported interval closure '{closed}'")
        return super().__new__(cls, lower, upper, closed)

    def __contains__(self, value : float) -> bool:
        lower_ok = value >= self.lower if self.closed[0] == '[' else value > self.lower
        upper_ok = value <= self.upper if self.closed[1] == ']' else value < self.upper
        return bool(lower_ok and upper_ok)

    def __str__(self) -> str:
        return f"{self.closed[0]}{self.lower}, {self.upper}{self.closed[1]}"


class ModelParameters(UserDict):
    """
    Model Parameters - this class replaces a standard dictionary.
    It includes the extra logic to check admissible ranges and to keep derived parameters current.

    Args:
        model: ParameterizedModel for which the params correspond
        dict_in: Initial parameters
        callbacks: Any callbacks for derived parameters f(parameters) : updates (dict)
        limits: Admissible :class:`Interval` per key
    """
    def __init__(self, model : "ParameterizedModel", dict_in : dict = {}, callbacks : dict = {}, limits : dict = {}, _copy : bool = True):
        super().__init__()
        self._m = model
        self._initialized = False
        self.limits = limits
        # Callbacks are empty while the base parameters are loaded so no callback sees a partial dict
        self.callbacks = {}
        for (key, value) in dict_in.items():
            self.__setitem__(key, value, _copy=_copy)

        self.callbacks = callbacks
        for key in callbacks:
            if key in self:
                for callback in callbacks[key]:
                    changes = callback(self)
                    self.update(changes)
        self._initialized = True

    def __setitem__(self, key : str, value, _copy : bool = True) -> None:
        """Set model configuration, overrides dict.__setitem__()

        Args:
            key (str): configuration key to set
            value: value to set that configuration value to

        Raises:
            HetCalTypeError: non-numeric value for a range-checked key
            HetCalInputException: value outside its admissible range, or the model invariants no longer hold
        """
        if _copy:
            value = deepcopy(value)

        if key in self.limits and value is not None:
            if isinstance(value, bool) or not isinstance(value, Number):
                raise HetCalTypeError(f"{self._m.config_key}.{key} must be a number, was {type(value).__name__}")
            if value not in self.limits[key]:
                raise HetCalInputException(f"{self._m.config_key}.{key}={value} outside admissible range {self.limits[key]}")

        super().__setitem__(key, value)

        if key in self.callbacks:
            for callback in self.callbacks[key]:
                changes = callback(self)
                self.update(changes)  # Merge in derived values

        if self._initialized:
            self._m.validate()

