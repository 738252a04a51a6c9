# Copyright © 2026 The hetcal Authors. All Rights Reserved.

__all__ = ['test_parameterized_model', 'test_receiver_model', 'test_trace_synthesis', 'test_dataset', 'test_analysis',
           'test_calibration', 'test_protocol_runner', 'test_sweep_report', 'test_cli']
