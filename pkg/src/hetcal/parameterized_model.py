# Copyright © 2026 The hetcal Authors. All Rights Reserved.

from abc import ABC
import json

from .exceptions import HetCalTypeError
from .utils.parameters import ModelParameters
from .utils.serialization import CustomEncoder


class ParameterizedModel(ABC):
    """
    A group of physical parameters with admissible ranges, derived quantities and cross-field invariants.

    Subclasses declare their configuration at class level; instances hold a validated
    :class:`ModelParameters` structure built from the defaults and the keyword arguments.

    Keyword Args
    ------------
        Parameters specific to the model (see each subclass' default_parameters)

    Raises
    ------
        HetCalTypeError, HetCalInputException

    Example
    -------
        rx = ReceiverParams(delta_tau = 0.05, eta1 = 0.8, eta2 = 0.7)

    Attributes
    ----------
        config_key : str
            Name of the configuration section, used in error messages (e.g., 'receiver')
        default_parameters : dict[str, Any]
            Default parameters for the model class
        parameter_limits : dict[str, Interval], optional
            Admissible range for scalar parameters
        param_callbacks : dict[str, list[function]], optional
            Callbacks for derived parameters
        derived_parameters : list[str], optional
            Keys produced by callbacks. They are never accepted as keyword arguments and are not serialized
        parameters : ModelParameters
            Parameters for the specific model object
    """
    config_key = 'model'
    default_parameters = {}
    parameter_limits = {}
    param_callbacks = {}
    derived_parameters = []

    def __init__(self, **kwargs):
        params = self.__class__.default_parameters.copy()

        unknown = [key for key in kwargs if key not in params]
        if unknown:
            raise HetCalTypeError(f"Unknown {self.config_key} parameter(s): {', '.join(sorted(unknown))}. Supported: {', '.join(params)}")
        params.update(kwargs)

        ParameterizedModel.__setstate__(self, params)

    def __eq__(self, other : "ParameterizedModel") -> bool:
        """
        Check if two models are equal
        """
        return self.__class__ == other.__class__ and self.parameters == other.parameters

    def __str__(self) -> str:
        return "{} ({})".format(type(self).__name__, ', '.join(f"{key}={value}" for key, value in self.to_dict().items()))

    __repr__ = __str__

    def __getitem__(self, key : str):
        return self.parameters[key]

    def __getstate__(self) -> dict:
        return self.to_dict()

    def __setstate__(self, params : dict) -> None:
        # Called when depickling and in construction. Builds the parameters structure and validates it
        callbacks = {key: list(fcns) for key, fcns in self.param_callbacks.items()}
        self.parameters = ModelParameters(self, params, callbacks, self.parameter_limits)
        self.validate()

    def validate(self) -> None:
        """
        Check cross-field invariants. Override in subclasses; raise HetCalInputException naming the fields involved.
        """

    def to_dict(self) -> dict:
        """
        Independent parameters as a plain dictionary (derived parameters excluded)
        """
        return {key: value for key, value in self.parameters.items() if key not in self.derived_parameters}

    def copy(self) -> "ParameterizedModel":
        return self.__class__(**self.to_dict())

    def replace(self, **changes) -> "ParameterizedModel":
        """
        Create a new model of the same class with some parameters changed. The original is not modified.

        Example
        -------
            rx2 = rx.replace(eta_mm = 0.9)
        """
        params = self.to_dict()
        params.update(changes)
        return self.__class__(**params)

    def to_json(self) -> str:
        """
        Serialize the independent parameters as a JSON object
        """
        return json.dumps(self.to_dict(), cls=CustomEncoder)

    @classmethod
    def from_json(cls, data : str) -> "ParameterizedModel":
        """
        Create a new model from parameters serialized with :meth:`to_json`
        """
        return cls(**json.loads(data))
