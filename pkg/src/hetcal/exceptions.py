# Copyright © 2026 The hetcal Authors. All Rights Reserved.


class HetCalException(Exception):
    """
    Base heterodyne calibration exception
    """


class HetCalInputException(HetCalException, ValueError):
    """
    Input Exception - indicates the method input parameters were incorrect or violate a model invariant
    """


class HetCalTypeError(HetCalException, TypeError):
    """
    Type Error - indicates the model or record could not be constructed
    """


class HetCalDataError(HetCalException):
    """
    Data Error - indicates a dataset or trace document is malformed, truncated or of an unsupported schema version
    """


class HetCalConfigError(HetCalDataError):
    """
    Configuration Error - indicates a configuration document could not be parsed or failed validation.

    Args:
        message (str): Description of the problem
        line (int, optional): Line of the parse error (1-based)
        column (int, optional): Column of the parse error (1-based)
    """
    def __init__(self, message : str, line : int = None, column : int = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class HetCalAnalysisError(HetCalException):
    """
    Analysis Error - indicates the data could not support the requested estimate (e.g., insufficient SNR, no dominant tone, unphysical efficiency)
    """


class HetCalFloorClampWarning(Warning):
    """
    Floor Clamp Warning - indicates linear power values at or below the noise floor were clamped before log conversion
    """


class HetCalEnbwRatioWarning(Warning):
    """
    ENBW Ratio Warning - indicates an equivalent noise bandwidth smaller than the nominal resolution bandwidth
    """
