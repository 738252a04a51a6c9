# Copyright © 2026 The hetcal Authors. All Rights Reserved.

from io import StringIO
import pickle
import sys
import unittest

import numpy as np

from hetcal.esa import EsaConfig
from hetcal.exceptions import HetCalInputException, HetCalTypeError
from hetcal.receiver_model import ChannelParams, FieldParams, ReceiverParams
from hetcal.utils.parameters import Interval


class TestParameterizedModel(unittest.TestCase):
    def setUp(self):
        # set stdout (so it wont print)
        sys.stdout = StringIO()

    def tearDown(self):
        sys.stdout = sys.__stdout__

    def test_interval(self):
        closed = Interval(0, 1, '[]')
        self.assertIn(0, closed)
        self.assertIn(1, closed)
        half_open = Interval(0, 1, '(]')
        self.assertNotIn(0, half_open)
        self.assertIn(1, half_open)
        self.assertNotIn(1.5, half_open)
        self.assertEqual(str(half_open), '(0, 1]')
        with self.assertRaises(HetCalTypeError):
            Interval(0, 1, '[[')

    def test_defaults_and_derived(self):
        rx = ReceiverParams()
        self.assertEqual(rx['delta_tau'], 0)
        self.assertEqual(rx['eta_av'], 1)
        self.assertEqual(rx['delta_eta'], 0)

        rx = ReceiverParams(eta1=0.8, eta2=0.7)
        self.assertAlmostEqual(rx['eta_av'], 0.75)
        self.assertAlmostEqual(rx['delta_eta'], 0.1)

        # Derived values follow later changes
        rx.parameters['eta2'] = 0.6
        self.assertAlmostEqual(rx['eta_av'], 0.7)
        self.assertAlmostEqual(rx['delta_eta'], 0.2)

    def test_unknown_parameter(self):
        with self.assertRaises(HetCalTypeError):
            ReceiverParams(eta3=0.5)
        # Derived parameters are not inputs
        with self.assertRaises(HetCalTypeError):
            ReceiverParams(eta_av=0.5)

    def test_limits(self):
        for bad in (0, -0.1, 1.01):
            with self.assertRaises(HetCalInputException):
                ReceiverParams(eta1=bad)
        with self.assertRaises(HetCalInputException):
            ReceiverParams(noise_factor=0.9)
        with self.assertRaises(HetCalTypeError):
            ReceiverParams(eta1='0.5')
        with self.assertRaises(HetCalTypeError):
            ReceiverParams(eta1=True)
        # eta_mm admits both ends
        ReceiverParams(eta_mm=0)
        ReceiverParams(eta_mm=1)

    def test_error_names_field(self):
        try:
            ReceiverParams(tau_alpha=1.5)
            self.fail("Should have raised")
        except HetCalInputException as err:
            self.assertIn('receiver.tau_alpha', str(err))

        try:
            ReceiverParams(delta_tau=0.6)
            self.fail("Should have raised")
        except HetCalInputException as err:
            self.assertIn('receiver.delta_tau', str(err))

    def test_invariant_checked_on_update(self):
        rx = ReceiverParams(delta_tau=0.1)
        with self.assertRaises(HetCalInputException):
            rx.parameters['delta_tau'] = 0.51
        # 4*delta_tau^2 = 1 is the admissible limit
        ReceiverParams(delta_tau=0.5)
        ReceiverParams(delta_tau=-0.5)

    def test_replace_and_copy(self):
        rx = ReceiverParams(eta1=0.8, eta2=0.7)
        rx2 = rx.replace(eta_mm=0.9)
        self.assertEqual(rx['eta_mm'], 1)
        self.assertEqual(rx2['eta_mm'], 0.9)
        self.assertEqual(rx2['eta1'], 0.8)

        copied = rx.copy()
        self.assertEqual(copied, rx)
        self.assertIsNot(copied.parameters, rx.parameters)
        self.assertNotEqual(rx, rx2)
        self.assertNotEqual(rx, FieldParams())

    def test_to_dict_excludes_derived(self):
        fields = FieldParams()
        doc = fields.to_dict()
        self.assertNotIn('signal_power_w', doc)
        self.assertNotIn('photon_energy', doc)
        self.assertSetEqual(set(doc), set(FieldParams.default_parameters))

    def test_json(self):
        rx = ReceiverParams(delta_tau=0.05, tau_alpha=0.98, eta1=0.7, eta2=0.8, eta_mm=0.95)
        rx2 = ReceiverParams.from_json(rx.to_json())
        self.assertEqual(rx, rx2)

        ch = ChannelParams(transmissions=[0.5, np.float64(0.1)])
        ch2 = ChannelParams.from_json(ch.to_json())
        self.assertEqual(ch2['transmissions'], [0.5, 0.1])
        self.assertAlmostEqual(ch2['total_transmission'], 0.05)

    def test_pickle(self):
        esa = EsaConfig(filter_family='supergaussian', rbw_hz=2e6)
        esa2 = pickle.loads(pickle.dumps(esa))
        self.assertEqual(esa, esa2)
        self.assertAlmostEqual(esa2['enbw_hz'], 2.24e6, delta=1)

    def test_deepcopy_of_inputs(self):
        factors = [0.5, 0.5]
        ch = ChannelParams(transmissions=factors)
        factors.append(0.1)
        self.assertEqual(len(ch['transmissions']), 2)
        self.assertAlmostEqual(ch['total_transmission'], 0.25)

# This allows the module to be executed directly
def run_tests():
    unittest.main()

def main():
    l = unittest.TestLoader()
    runner = unittest.TextTestRunner()
    print("\n\nTesting Parameterized Model")
    result = runner.run(l.loadTestsFromTestCase(TestParameterizedModel)).wasSuccessful()

    if not result:
        raise Exception("Failed test")

if __name__ == '__main__':
    main()
