# Copyright © 2026 The hetcal Authors. All Rights Reserved.

from io import StringIO
import sys
import unittest

import numpy as np
from scipy.integrate import dblquad

from hetcal.constants import photon_energy
from hetcal.exceptions import HetCalInputException
from hetcal.receiver_model import (ChannelParams, FieldParams, GaussianBeam, ReceiverParams, apply_attenuation,
                                   beat_power_rms, gaussian_mode_overlap, lumped_efficiency, relative_correction,
                                   shot_noise_variance_density, x_based_efficiency)


def overlap_integral(a, b):
    """|<u_a|u_b>|^2 of normalized fundamental Gaussian modes by numerical quadrature"""
    w1, w2 = a['waist'], b['waist']
    d1, d2 = a['lateral_offset'], b['lateral_offset']

    def mode(x, y, w, d):
        return np.sqrt(2 / np.pi) / w * np.exp(-((x - d)**2 + y**2) / w**2)

    limit = 8 * max(w1, w2) + abs(d1 - d2)
    value, _ = dblquad(lambda y, x: mode(x, y, w1, d1) * mode(x, y, w2, d2), -limit, limit, -limit, limit,
                       epsabs=1e-12, epsrel=1e-10)
    return value**2


class TestReceiverModel(unittest.TestCase):
    def setUp(self):
        # set stdout (so it wont print)
        sys.stdout = StringIO()

    def tearDown(self):
        sys.stdout = sys.__stdout__

    def test_lumped_efficiency(self):
        rx = ReceiverParams(delta_tau=0.05, tau_alpha=0.98, eta1=0.7, eta2=0.8, eta_mm=0.95)
        self.assertAlmostEqual(lumped_efficiency(rx), 0.69127, delta=5e-6)

        # Ideal receiver
        self.assertEqual(lumped_efficiency(ReceiverParams()), 1.0)

        # Fully unbalanced splitter carries no heterodyne signal
        self.assertAlmostEqual(lumped_efficiency(ReceiverParams(delta_tau=0.5)), 0.0)

        # Lumped efficiency stays inside [0, 1] over the admissible domain
        for delta_tau in np.linspace(-0.5, 0.5, 11):
            for eta in (0.1, 0.5, 1.0):
                value = lumped_efficiency(ReceiverParams(delta_tau=delta_tau, tau_alpha=eta, eta1=eta, eta2=1.0, eta_mm=eta))
                self.assertGreaterEqual(value, 0)
                self.assertLessEqual(value, 1)

    def test_shot_noise(self):
        # eta_av = 0.75, delta_eta = 0.1
        rx = ReceiverParams(delta_tau=0.05, eta1=0.8, eta2=0.7)
        fields = FieldParams(photon_flux_signal=0.0, photon_flux_lo=1.0)
        self.assertAlmostEqual(shot_noise_variance_density(rx, fields), 0.755)

        # Linear in LO flux, tau_beta, F and quadratic in K g
        fields_10 = fields.replace(photon_flux_lo=10.0)
        self.assertAlmostEqual(shot_noise_variance_density(rx, fields_10), 7.55)
        self.assertAlmostEqual(shot_noise_variance_density(rx.replace(tau_beta=0.5), fields), 0.3775)
        self.assertAlmostEqual(shot_noise_variance_density(rx.replace(noise_factor=2.0), fields), 1.51)
        self.assertAlmostEqual(shot_noise_variance_density(rx.replace(k_conv=2.0, gain=3.0), fields), 0.755 * 36)

        # Independent of the signal
        self.assertEqual(shot_noise_variance_density(rx, fields.replace(photon_flux_signal=1e-4)),
                         shot_noise_variance_density(rx, fields))

    def test_beat_power(self):
        rx = ReceiverParams()
        fields = FieldParams(photon_flux_signal=2.0, photon_flux_lo=1e4)
        self.assertAlmostEqual(beat_power_rms(rx, fields), 2 * 2.0 * 1e4)

        # Zero signal gives no beat
        self.assertEqual(beat_power_rms(rx, fields.replace(photon_flux_signal=0.0)), 0)

        # Imbalance and losses
        rx = ReceiverParams(delta_tau=0.05, tau_alpha=0.98, tau_beta=0.9, eta1=0.7, eta2=0.8, eta_mm=0.95)
        expected = 2 * 0.99 * 0.98 * 0.9 * 0.95 * 0.75**2 * 2.0 * 1e4
        self.assertAlmostEqual(beat_power_rms(rx, fields) / expected, 1.0, places=12)

    def test_ratio_identity(self):
        # Balanced detectors and F = 1: the ratio recovers the lumped efficiency for any fields
        rx = ReceiverParams(delta_tau=0.05, tau_alpha=0.98, tau_beta=0.8, eta1=0.75, eta2=0.75, eta_mm=0.95, k_conv=3.0, gain=7.0)
        for signal, lo in [(1.0, 1e4), (7.76e10, 7.76e15), (1e3, 1e9)]:
            fields = FieldParams(photon_flux_signal=signal, photon_flux_lo=lo)
            self.assertAlmostEqual(x_based_efficiency(rx, fields) / lumped_efficiency(rx), 1.0, places=12)

        # Balanced splitter with unequal detectors
        rx = ReceiverParams(eta1=0.9, eta2=0.6, eta_mm=0.8)
        fields = FieldParams()
        self.assertAlmostEqual(x_based_efficiency(rx, fields) / lumped_efficiency(rx), 1.0, places=12)

        with self.assertRaises(HetCalInputException):
            x_based_efficiency(rx, fields.replace(photon_flux_signal=0.0))

    def test_relative_correction(self):
        # 45/55 splitter with 0.7/0.8 detectors
        rx = ReceiverParams(delta_tau=0.05, eta1=0.8, eta2=0.7)
        correction = relative_correction(rx)
        self.assertAlmostEqual(correction, 0.75 / 0.755 - 1, places=12)
        self.assertAlmostEqual(abs(correction), 0.0066, delta=2e-4)
        fields = FieldParams()
        self.assertAlmostEqual(x_based_efficiency(rx, fields), lumped_efficiency(rx) * (1 + correction), places=12)

        # Excess noise factor scales the ratio down
        self.assertAlmostEqual(relative_correction(ReceiverParams(noise_factor=1.25)), -0.2)

        # Bounded by 1% for |delta_eta| <= 0.1, |delta_tau| <= 0.05 and eta_av >= 0.6
        worst = 0
        for eta_av in np.linspace(0.6, 0.9, 7):
            for delta_eta in np.linspace(-0.1, 0.1, 9):
                for delta_tau in np.linspace(-0.05, 0.05, 9):
                    rx = ReceiverParams(delta_tau=delta_tau, eta1=eta_av + delta_eta / 2, eta2=eta_av - delta_eta / 2)
                    worst = max(worst, abs(relative_correction(rx)))
        self.assertLessEqual(worst, 0.01)
        self.assertGreater(worst, 0)

    def test_mode_overlap(self):
        w = 1.0
        self.assertAlmostEqual(gaussian_mode_overlap(GaussianBeam(waist=w), GaussianBeam(waist=w)), 1.0)
        self.assertAlmostEqual(gaussian_mode_overlap(GaussianBeam(waist=w), GaussianBeam(waist=2 * w)), 0.64)
        self.assertAlmostEqual(gaussian_mode_overlap(GaussianBeam(waist=w, lateral_offset=w), GaussianBeam(waist=w)), np.exp(-1))

        # Symmetric, only the offset difference counts
        a = GaussianBeam(waist=1.0, lateral_offset=0.3)
        b = GaussianBeam(waist=1.4, lateral_offset=0.8)
        self.assertAlmostEqual(gaussian_mode_overlap(a, b), gaussian_mode_overlap(b, a), places=14)
        self.assertAlmostEqual(gaussian_mode_overlap(a, b),
                               gaussian_mode_overlap(GaussianBeam(waist=1.0), GaussianBeam(waist=1.4, lateral_offset=0.5)), places=14)

        # Agreement with the overlap integral of the normalized fields
        for a, b in [(GaussianBeam(waist=1.0), GaussianBeam(waist=2.0)),
                     (GaussianBeam(waist=1.0, lateral_offset=1.0), GaussianBeam(waist=1.0)),
                     (GaussianBeam(waist=0.8, lateral_offset=0.2), GaussianBeam(waist=1.3, lateral_offset=0.9))]:
            self.assertAlmostEqual(gaussian_mode_overlap(a, b), overlap_integral(a, b), places=6)

        # The overlap is a valid eta_mm
        rx = ReceiverParams(eta_mm=gaussian_mode_overlap(a, b))
        self.assertLess(rx['eta_mm'], 1)

        with self.assertRaises(HetCalInputException):
            GaussianBeam(waist=0)

    def test_fields(self):
        fields = FieldParams()
        energy = photon_energy(1542e-9)
        self.assertAlmostEqual(fields['photon_energy'], energy, delta=energy * 1e-12)
        self.assertAlmostEqual(fields['signal_power_w'], 10e-9, delta=1e-11)
        self.assertAlmostEqual(fields['lo_power_w'], 1e-3, delta=1e-6)

        from_power = FieldParams.from_power(10e-9, 1e-3)
        self.assertAlmostEqual(from_power['signal_power_w'] / 10e-9, 1.0, places=12)
        self.assertAlmostEqual(from_power['lo_power_w'] / 1e-3, 1.0, places=12)

        # Weak-signal regime
        with self.assertRaises(HetCalInputException):
            FieldParams(photon_flux_signal=1e13, photon_flux_lo=1e15)
        FieldParams(photon_flux_signal=1e13, photon_flux_lo=1e15, max_flux_ratio=0.1)
        with self.assertRaises(HetCalInputException):
            FieldParams(photon_flux_lo=0)
        with self.assertRaises(HetCalInputException):
            FieldParams(photon_flux_signal=-1)

    def test_channel(self):
        self.assertEqual(ChannelParams()['total_transmission'], 1.0)
        ch = ChannelParams(transmissions=[0.5, 0.1])
        self.assertAlmostEqual(ch['total_transmission'], 0.05)
        ch2 = ch.with_factor(0.2)
        self.assertAlmostEqual(ch2['total_transmission'], 0.01)
        self.assertEqual(len(ch['transmissions']), 2)

        for bad in ([0.0], [1.1], [0.5, -0.2]):
            with self.assertRaises(HetCalInputException):
                ChannelParams(transmissions=bad)

    def test_apply_attenuation(self):
        fields = FieldParams(photon_flux_signal=1e6, photon_flux_lo=1e12)
        attenuated = apply_attenuation(fields, ChannelParams(transmissions=[0.1]))
        self.assertAlmostEqual(attenuated['photon_flux_signal'], 1e5)
        self.assertEqual(attenuated['photon_flux_lo'], 1e12)
        self.assertEqual(fields['photon_flux_signal'], 1e6)

        # The beat scales with T, the shot noise does not
        rx = ReceiverParams(eta1=0.8, eta2=0.8)
        self.assertAlmostEqual(beat_power_rms(rx, attenuated) / beat_power_rms(rx, fields), 0.1, places=12)
        self.assertEqual(shot_noise_variance_density(rx, attenuated), shot_noise_variance_density(rx, fields))

# This allows the module to be executed directly
def run_tests():
    unittest.main()

def main():
    l = unittest.TestLoader()
    runner = unittest.TextTestRunner()
    print("\n\nTesting Receiver Model")
    result = runner.run(l.loadTestsFromTestCase(TestReceiverModel)).wasSuccessful()

    if not result:
        raise Exception("Failed test")

if __name__ == '__main__':
    main()
