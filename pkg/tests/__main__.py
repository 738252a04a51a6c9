# Copyright © 2026 The hetcal Authors. All Rights Reserved.

from .test_parameterized_model import main as parameterized_model_main
from .test_receiver_model import main as receiver_model_main
from .test_trace_synthesis import main as trace_synthesis_main
from .test_dataset import main as dataset_main
from .test_analysis import main as analysis_main
from .test_calibration import main as calibration_main
from .test_protocol_runner import main as protocol_runner_main
from .test_sweep_report import main as sweep_report_main
from .test_cli import main as cli_main

from io import StringIO
import matplotlib.pyplot as plt
import sys
from timeit import timeit
from unittest.mock import patch

from hetcal import Scenario
from hetcal.protocol_runner import run_point

def _test_validate():
    # Noise-free round trip of the default operating point
    run_point(Scenario(deterministic=True, n_repeats=1))

if __name__ == '__main__':
    was_successful = True

    try:
        # set stdout (so it wont print)
        sys.stdout = StringIO()

        with patch('matplotlib.pyplot.show'):
            runtime = timeit(_test_validate, number=10)
            plt.close('all')

        # Reset stdout
        sys.stdout = sys.__stdout__
        print(f"\nRound-trip Runtime: {runtime}")
    except Exception as e:
        sys.stdout = sys.__stdout__
        print("\nBenchmarking Failed: ", e)
        was_successful = False

    print("\n\nTesting individual execution of test files")

    # Run tests individually to test them and make sure they can be executed individually
    for test_main in (parameterized_model_main, receiver_model_main, trace_synthesis_main, dataset_main, analysis_main,
                      calibration_main, protocol_runner_main, sweep_report_main, cli_main):
        try:
            test_main()
        except Exception:
            was_successful = False

    if not was_successful:
        raise Exception("Failed test")
