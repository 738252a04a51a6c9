# Copyright © 2026 The hetcal Authors. All Rights Reserved.

__version__ = '1.0.0'

from .receiver_model import ReceiverParams, FieldParams, ChannelParams, GaussianBeam, lumped_efficiency
from .esa import EsaConfig
from .dataset import Trace, Dataset, persist_dataset, load_dataset
from .trace_synthesis import MonitorModel
from .protocol_runner import Scenario, SweepSpec, run_grid, run_protocol, run_sweep
from .sweep_report import SweepGrid, SweepReport
from .exceptions import (HetCalException, HetCalInputException, HetCalTypeError, HetCalDataError,
                         HetCalConfigError, HetCalAnalysisError)
