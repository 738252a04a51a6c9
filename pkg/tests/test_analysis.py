# Copyright © 2026 The hetcal Authors. All Rights Reserved.

from io import StringIO
import sys
import unittest
import warnings

import numpy as np
from scipy.special import erf

from hetcal.analysis import (EfficiencyEstimate, EnbwResult, UncertainValue, budget_table, compare_estimates,
                             compute_enbw, estimate_efficiency, extract_spectral_ratio, loss_chain_estimate,
                             fitted_peak, parabolic_peak, propagate_uncertainty, scaled_reference, weighted_mean)
from hetcal.dataset import Dataset, Trace
from hetcal.esa import EsaConfig, filter_power_response, frequency_axis
from hetcal.exceptions import HetCalAnalysisError, HetCalDataError, HetCalEnbwRatioWarning, HetCalInputException
from hetcal.trace_synthesis import synthesize_tone_cal_trace
from hetcal.units import linear_to_dbmv


def synthetic_dataset(cfg, shot_level, tone_power, electronic_level=0.0, if_hz=20e6, tone_hz=None):
    """Noise-free dataset with a flat shot level and one tone read through the filter"""
    freq = frequency_axis(cfg)
    tone = tone_power * filter_power_response(cfg, freq - (if_hz if tone_hz is None else tone_hz))
    electronic = np.full(freq.shape, max(electronic_level, 1e-30))
    shot = np.full(freq.shape, shot_level + electronic_level)
    quadrature = shot + tone
    return Dataset(esa=cfg,
                   trace_electronic=Trace(freq, linear_to_dbmv(electronic)),
                   trace_shot=Trace(freq, linear_to_dbmv(shot)),
                   trace_quadrature=Trace(freq, linear_to_dbmv(quadrature)),
                   monitor_samples=[0.5],
                   monitor_dark_mean=0.0,
                   responsivity=0.5,
                   attenuation_l=0.01,
                   wavelength_m=1542e-9,
                   if_hz=if_hz,
                   seed=0,
                   timestamp='2000-01-01T00:00:00+00:00')


class TestUncertainty(unittest.TestCase):
    def setUp(self):
        # set stdout (so it wont print)
        sys.stdout = StringIO()

    def tearDown(self):
        sys.stdout = sys.__stdout__

    def test_uncertain_value(self):
        v = UncertainValue.from_relative(0.5, 0.02, 'typeB', 'tau')
        self.assertAlmostEqual(v.u_std, 0.01)
        self.assertAlmostEqual(v.rel, 0.02)
        self.assertAlmostEqual(v.expanded(), 0.02)
        self.assertAlmostEqual(v.expanded(3), 0.03)
        self.assertEqual(v.to_dict(), {'value': 0.5, 'u_std': 0.01, 'kind': 'typeB', 'label': 'tau'})
        self.assertEqual(UncertainValue(0.0).rel, 0.0)
        self.assertEqual(UncertainValue(0.0, 0.1).rel, np.inf)
        with self.assertRaises(HetCalInputException):
            UncertainValue(1.0, -0.1)
        with self.assertRaises(HetCalInputException):
            UncertainValue(1.0, 0.1, 'typeC')

    def test_propagate(self):
        combined = propagate_uncertainty([0.0075, 0.003, 0.002])
        self.assertAlmostEqual(combined, 0.00832, delta=5e-6)
        self.assertAlmostEqual(combined / np.sqrt(0.0075**2 + 0.003**2 + 0.002**2), 1.0, places=12)
        self.assertAlmostEqual(propagate_uncertainty([0.0075, 0.003, 0.002, 0.005]), 0.00971, delta=5e-6)
        self.assertEqual(propagate_uncertainty([]), 0)
        self.assertAlmostEqual(propagate_uncertainty([0.01]), 0.01, places=15)

        # Quadrature sum: symmetric, homogeneous and monotone
        r = [0.004, 0.001, 0.003]
        self.assertAlmostEqual(propagate_uncertainty(r), propagate_uncertainty(r[::-1]), places=15)
        self.assertAlmostEqual(propagate_uncertainty([2 * x for x in r]), 2 * propagate_uncertainty(r), places=15)
        self.assertGreater(propagate_uncertainty(r + [1e-4]), propagate_uncertainty(r))

        with self.assertRaises(HetCalInputException):
            propagate_uncertainty([0.01, -0.01])

    def test_loss_chain(self):
        factors = [UncertainValue.from_relative(0.98, 0.005, 'typeB', 'tau_alpha'),
                   UncertainValue.from_relative(0.75, 0.03, 'typeB', 'eta_av'),
                   UncertainValue.from_relative(0.95, 0.01, 'typeB', 'eta_mm')]
        eta_sep = loss_chain_estimate(factors, UncertainValue(0.0, 0.01, 'typeB', 'delta_tau'))
        self.assertAlmostEqual(eta_sep.value, 0.69825, delta=5e-6)
        self.assertAlmostEqual(eta_sep.rel, 0.0320, delta=5e-5)

        # The imbalance term vanishes at delta_tau = 0 and grows with |delta_tau|
        tilted = loss_chain_estimate(factors, UncertainValue(0.05, 0.01))
        self.assertAlmostEqual(tilted.value, 0.69825 * 0.99, delta=5e-6)
        self.assertGreater(tilted.rel, eta_sep.rel)
        self.assertAlmostEqual(tilted.rel**2 - propagate_uncertainty([0.005, 0.03, 0.01])**2,
                               (8 * 0.05 * 0.01 / 0.99)**2, places=12)

        # Monte Carlo propagation of the independent factors
        rng = np.random.default_rng(2)
        n = 400000
        draws = np.ones(n)
        for factor in factors:
            draws *= rng.normal(factor.value, factor.u_std, n)
        self.assertAlmostEqual(np.std(draws) / np.mean(draws) / eta_sep.rel, 1.0, delta=0.02)

        with self.assertRaises(HetCalInputException):
            loss_chain_estimate([UncertainValue(0.0)], UncertainValue(0.0))
        with self.assertRaises(HetCalInputException):
            loss_chain_estimate(factors, UncertainValue(0.5))

    def test_compare(self):
        # Expanded (k=2) 0.011 and 0.025
        result = compare_estimates(UncertainValue(0.350, 0.0055), UncertainValue(0.345, 0.0125))
        self.assertAlmostEqual(result.e_n, 0.183, delta=1e-3)
        self.assertTrue(result.agree)
        result = compare_estimates(UncertainValue(0.40, 0.005), UncertainValue(0.30, 0.005))
        self.assertAlmostEqual(result.e_n, 7.07, delta=5e-3)
        self.assertFalse(result.agree)
        self.assertEqual(compare_estimates(UncertainValue(0.3, 0.01), UncertainValue(0.3, 0.02)), (0.0, True))

        # Symmetric and exactly 1 at the agreement limit
        a, b = UncertainValue(1.0, 0.3), UncertainValue(2.0, 0.4)
        self.assertAlmostEqual(compare_estimates(a, b).e_n, compare_estimates(b, a).e_n)
        self.assertAlmostEqual(compare_estimates(a, b).e_n, 1.0)
        self.assertFalse(compare_estimates(UncertainValue(1.0, 0.1), UncertainValue(2.0, 0.1)).agree)

        # Against an exact value only one uncertainty counts
        self.assertAlmostEqual(compare_estimates(UncertainValue(1.0, 0.1), UncertainValue(1.1)).e_n, 0.5)
        with self.assertRaises(HetCalInputException):
            compare_estimates(UncertainValue(1.0), UncertainValue(1.1))

        # Estimates carry their own expanded uncertainty
        estimate = EfficiencyEstimate(UncertainValue(0.35, 0.005), expanded_u=0.015, k=3)
        self.assertAlmostEqual(compare_estimates(estimate, UncertainValue(0.34)).e_n, 0.01 / 0.015)

    def test_scaled_reference(self):
        eta_sep = UncertainValue.from_relative(0.345, 0.03)
        ref = scaled_reference(eta_sep, 0.1)
        self.assertAlmostEqual(ref.value, 0.0345)
        self.assertAlmostEqual(ref.rel, 0.03)
        ref = scaled_reference(eta_sep, UncertainValue.from_relative(0.1, 0.04))
        self.assertAlmostEqual(ref.rel, 0.05)
        with self.assertRaises(HetCalInputException):
            scaled_reference(eta_sep, 1.5)

    def test_weighted_mean(self):
        mean = weighted_mean([UncertainValue(1.0, 0.1), UncertainValue(2.0, 0.1)])
        self.assertAlmostEqual(mean.value, 1.5)
        self.assertAlmostEqual(mean.u_std, 0.1 / np.sqrt(2))
        mean = weighted_mean([UncertainValue(1.0, 0.1), UncertainValue(2.0, 0.2)])
        self.assertAlmostEqual(mean.value, 1.2)
        with self.assertRaises(HetCalInputException):
            weighted_mean([])
        with self.assertRaises(HetCalInputException):
            weighted_mean([UncertainValue(1.0)])


class TestEnbw(unittest.TestCase):
    def setUp(self):
        # set stdout (so it wont print)
        sys.stdout = StringIO()

    def tearDown(self):
        sys.stdout = sys.__stdout__

    def test_parabolic_peak(self):
        # Exact for a gaussian sampled off its center
        x = np.arange(-5, 6, dtype=float)
        values = 3.0 * np.exp(-(x - 0.3)**2 / 4.0)
        self.assertAlmostEqual(parabolic_peak(values, 5), 3.0, places=12)
        # Trace ends and plateaus keep the bin value
        self.assertEqual(parabolic_peak(values, 0), values[0])
        self.assertEqual(parabolic_peak([1.0, 2.0, 2.0, 1.0], 1), 2.0)

    def test_fitted_peak(self):
        cfg = EsaConfig()
        freq = frequency_axis(cfg)
        for family in ('gaussian', 'supergaussian', 'rectangular'):
            values = 7.0 * filter_power_response(cfg.replace(filter_family=family), freq - 20.0037e6) + 1e-6
            peak = fitted_peak(freq, values, 1e6)
            self.assertAlmostEqual(peak.value / 7.0, 1.0, delta=1e-4)
            self.assertLess(peak.rel_u, 1e-4)
            self.assertGreater(peak.n_bins, 7)
            if family == 'gaussian':
                self.assertAlmostEqual(peak.frequency_hz, 20.0037e6, delta=cfg.bin_width_hz)

        # Restricted to candidate bins
        values = filter_power_response(cfg, freq - 18e6) + 3 * filter_power_response(cfg, freq - 22e6)
        window = np.flatnonzero(np.abs(freq - 18e6) <= 2e6)
        self.assertAlmostEqual(fitted_peak(freq, values, 1e6, window).value, 1.0, delta=1e-3)
        self.assertAlmostEqual(fitted_peak(freq, values, 1e6).value, 3.0, delta=3e-3)

        # Too few bins across the line: 3-bin interpolation
        coarse = EsaConfig(n_bins=101, rbw_hz=0.5e6)
        freq = frequency_axis(coarse)
        peak = fitted_peak(freq, filter_power_response(coarse, freq - 20e6), 0.5e6)
        self.assertEqual(peak.n_bins, 0)
        self.assertAlmostEqual(peak.value, 1.0)

    def test_fitted_peak_averaged_trace(self):
        cfg = EsaConfig()
        self.assertEqual(cfg['tone_statistics'], 'multiplicative')
        freq = frequency_axis(cfg)
        peaks, rel_us = [], []
        for seed in range(40):
            peak = fitted_peak(freq, synthesize_tone_cal_trace(cfg, 20e6, 1.0, rng_seed=seed).to_linear(), 1e6)
            peaks.append(peak.value)
            rel_us.append(peak.rel_u)
        # Pooled over the window: far below the 10% fluctuation of one bin at n_avg = 100
        self.assertLess(np.mean(rel_us), 0.04)
        self.assertAlmostEqual(np.mean(peaks), 1.0, delta=0.015)
        ratio = np.std(peaks, ddof=1) / np.mean(rel_us)
        self.assertGreater(ratio, 1 / 1.6)
        self.assertLess(ratio, 1.6)

    def test_analytic_families(self):
        expected = {'gaussian': 1.0645, 'supergaussian': 1.12, 'rectangular': 1.0}
        for family, ratio in expected.items():
            cfg = EsaConfig(filter_family=family)
            trace = synthesize_tone_cal_trace(cfg, 20e6, 1.0, deterministic=True)
            result = compute_enbw(trace, 1e6)
            self.assertAlmostEqual(result.enbw_hz.value / (ratio * 1e6), 1.0, delta=1e-3)
            self.assertAlmostEqual(result.ratio, result.enbw_hz.value / 1e6)
            self.assertEqual(result.enbw_hz.kind, 'combined')
            self.assertAlmostEqual(result.enbw_hz.rel, 0.003)

        # Rectangular filter: exact up to the calibration floor
        cfg = EsaConfig(filter_family='rectangular')
        trace = synthesize_tone_cal_trace(cfg, 20e6, 1.0, floor_power=1e-20, deterministic=True)
        self.assertAlmostEqual(compute_enbw(trace, 1e6).enbw_hz.value, 1e6, delta=1e-3)
        self.assertLessEqual(abs(compute_enbw(trace, 1e6).enbw_hz.value - 1e6), cfg.bin_width_hz)

    def test_tone_off_bin(self):
        cfg = EsaConfig()
        trace = synthesize_tone_cal_trace(cfg, 20.003e6, 5.0, deterministic=True)
        result = compute_enbw(trace, 1e6, type_b_rel=0.01)
        self.assertAlmostEqual(result.enbw_hz.value / 1.0645e6, 1.0, delta=1e-3)
        self.assertAlmostEqual(result.enbw_hz.rel, 0.01)

    def test_reference_power(self):
        cfg = EsaConfig(reference_power=1e-3)
        trace = synthesize_tone_cal_trace(cfg, 20e6, 2e-3, deterministic=True)
        self.assertAlmostEqual(compute_enbw(trace, 1e6, reference_power=1e-3).enbw_hz.value / 1.0645e6, 1.0, delta=1e-3)

    def test_several_traces(self):
        cfg = EsaConfig()
        traces = [synthesize_tone_cal_trace(cfg, 20e6, 1.0, rng_seed=seed) for seed in range(20)]
        result = compute_enbw(traces, 1e6)
        self.assertEqual(result.enbw_hz.kind, 'combined')
        self.assertGreater(result.enbw_hz.rel, 0.003)
        self.assertAlmostEqual(result.enbw_hz.value / 1.0645e6, 1.0, delta=0.02)
        self.assertLess(abs(result.enbw_hz.value - 1.0645e6), 3 * result.enbw_hz.u_std)

    def test_single_trace_dispersion(self):
        # Averaged sweeps with multiplicative statistics: the within-trace u covers the trace-to-trace scatter
        cfg = EsaConfig()
        results = [compute_enbw(synthesize_tone_cal_trace(cfg, 20e6, 1.0, rng_seed=100 + seed), 1e6, type_b_rel=0.0)
                   for seed in range(30)]
        values = np.array([r.enbw_hz.value for r in results])
        u = np.mean([r.enbw_hz.u_std for r in results])
        self.assertGreater(u, 0)
        self.assertAlmostEqual(np.mean(values) / 1.0645e6, 1.0, delta=0.02)
        ratio = np.std(values, ddof=1) / u
        self.assertGreater(ratio, 1 / 1.6)
        self.assertLess(ratio, 1.6)

        # Noise free: the floor alone
        trace = synthesize_tone_cal_trace(cfg, 20e6, 1.0, deterministic=True)
        self.assertLess(compute_enbw(trace, 1e6, type_b_rel=0.0).enbw_hz.rel, 1e-4)

    def test_quadrature_convergence(self):
        # Gaussian line truncated by the span: the trapezoid error falls as the square of the bin width
        rbw, tone_hz = 1e6, 24.3e6
        errors = []
        for n_bins in (101, 201, 401, 801):
            cfg = EsaConfig(n_bins=n_bins)
            freq = frequency_axis(cfg)
            trace = Trace(freq, linear_to_dbmv(filter_power_response(cfg, freq - tone_hz)))
            c = 2 * np.sqrt(np.log(2)) / rbw
            exact = (rbw / 2) * np.sqrt(np.pi / (4 * np.log(2))) * (erf(c * (freq[-1] - tone_hz)) + erf(c * (tone_hz - freq[0])))
            errors.append(abs(compute_enbw(trace, rbw).enbw_hz.value / exact - 1))
        self.assertAlmostEqual(errors[0], 8.2e-4, delta=1.5e-4)
        for coarse, fine in zip(errors, errors[1:]):
            self.assertGreater(coarse / fine, 3.5)
            self.assertLess(coarse / fine, 4.5)

    def test_ratio_warning(self):
        cfg = EsaConfig()
        trace = synthesize_tone_cal_trace(cfg, 20e6, 1.0, deterministic=True)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            result = compute_enbw(trace, 2e6)
        self.assertLess(result.ratio, 1)
        self.assertTrue(any(issubclass(w.category, HetCalEnbwRatioWarning) for w in caught))

    def test_no_tone(self):
        cfg = EsaConfig()
        flat = Trace(frequency_axis(cfg), np.zeros(1001))
        with self.assertRaises(HetCalAnalysisError):
            compute_enbw(flat, 1e6)
        broken = Trace(frequency_axis(cfg)[::-1], np.zeros(1001))
        with self.assertRaises(HetCalDataError):
            compute_enbw(broken, 1e6)
        with self.assertRaises(HetCalInputException):
            compute_enbw([], 1e6)
        with self.assertRaises(HetCalInputException):
            compute_enbw(flat, 0)

    def test_enbw_result(self):
        result = EnbwResult.from_value(1.12e6, 1e6)
        self.assertAlmostEqual(result.ratio, 1.12)
        self.assertAlmostEqual(result.enbw_hz.u_std, 1.12e6 * 0.003)
        self.assertEqual(set(result.to_dict()), {'enbw_hz', 'u_std_hz', 'kind', 'rbw_hz', 'ratio'})
        with self.assertRaises(HetCalInputException):
            EnbwResult.from_value(0.0, 1e6)


class TestEstimator(unittest.TestCase):
    def setUp(self):
        # set stdout (so it wont print)
        sys.stdout = StringIO()

    def tearDown(self):
        sys.stdout = sys.__stdout__

    def test_estimate_efficiency(self):
        x = UncertainValue.from_relative(4.852e4, 0.002, 'typeA')
        p_alpha = UncertainValue.from_relative(10e-9, 0.0075)
        enbw = EnbwResult.from_value(1.12e6, 1e6)
        estimate = estimate_efficiency(x, p_alpha, enbw, 1542e-9)
        self.assertAlmostEqual(estimate.eta.value, 0.350, delta=5e-4)
        self.assertEqual(estimate.k, 2)
        self.assertAlmostEqual(estimate.expanded_u, 2 * estimate.eta.u_std)
        rel = propagate_uncertainty([0.0075, 0.003, 0.002, 0.005])
        self.assertAlmostEqual(estimate.eta.rel, rel, places=12)
        self.assertAlmostEqual(estimate.budget['rel_p_alpha'], 0.0075)
        self.assertAlmostEqual(estimate.budget['rel_enbw'], 0.003)
        self.assertAlmostEqual(estimate.budget['rel_x'], 0.002)
        self.assertAlmostEqual(estimate.budget['rel_type_b'], 0.005)
        self.assertIn('(k=2)', str(estimate))

        doc = estimate.to_dict()
        self.assertEqual(set(doc), {'eta', 'u_std', 'expanded_u', 'k', 'x_ratio', 'p_alpha_w', 'enbw_hz', 'budget'})

        # Coverage factor
        self.assertAlmostEqual(estimate_efficiency(x, p_alpha, enbw, 1542e-9, k=3).expanded_u, 3 * estimate.eta.u_std)

    def test_estimate_scaling(self):
        x = UncertainValue(4.852e4)
        p_alpha = UncertainValue(10e-9)
        enbw = EnbwResult.from_value(1.12e6, 1e6)
        base = estimate_efficiency(x, p_alpha, enbw, 1542e-9).eta.value

        # No signal, no efficiency
        self.assertEqual(estimate_efficiency(UncertainValue(0.0), p_alpha, enbw, 1542e-9).eta.value, 0)

        # Wider filter with proportionally smaller X per bin
        wide = estimate_efficiency(UncertainValue(4.852e4 / 2), p_alpha, EnbwResult.from_value(2.24e6, 2e6), 1542e-9)
        self.assertAlmostEqual(wide.eta.value / base, 1.0, places=12)

        # Linear in X, inverse in P
        self.assertAlmostEqual(estimate_efficiency(UncertainValue(9.704e4), p_alpha, enbw, 1542e-9).eta.value / base, 2.0, places=12)
        self.assertAlmostEqual(estimate_efficiency(x, UncertainValue(20e-9), enbw, 1542e-9).eta.value / base, 0.5, places=12)

    def test_estimate_errors(self):
        enbw = EnbwResult.from_value(1.12e6, 1e6)
        with self.assertRaises(HetCalAnalysisError):
            estimate_efficiency(UncertainValue.from_relative(4.852e5, 0.002), UncertainValue.from_relative(10e-9, 0.0075), enbw, 1542e-9)
        with self.assertRaises(HetCalInputException):
            estimate_efficiency(UncertainValue(-1.0), UncertainValue(10e-9), enbw, 1542e-9)
        with self.assertRaises(HetCalInputException):
            estimate_efficiency(UncertainValue(1.0), UncertainValue(0.0), enbw, 1542e-9)
        with self.assertRaises(HetCalInputException):
            estimate_efficiency(UncertainValue(1.0), UncertainValue(10e-9), enbw, 1542e-9, k=0)

    def test_spectral_ratio(self):
        cfg = EsaConfig()
        ds = synthetic_dataset(cfg, shot_level=4.0, tone_power=2e5)
        x = extract_spectral_ratio(ds)
        self.assertAlmostEqual(x.value / 5e4, 1.0, delta=1e-6)
        self.assertEqual(x.kind, 'typeA')
        # Noise free: no within-trace dispersion
        self.assertLess(x.rel, 1e-4)

        # Electronic noise is removed before the ratio
        ds = synthetic_dataset(cfg, shot_level=4.0, tone_power=2e5, electronic_level=0.5)
        self.assertAlmostEqual(extract_spectral_ratio(ds).value / 5e4, 1.0, delta=1e-6)

        # Tone between bins
        ds = synthetic_dataset(cfg, shot_level=4.0, tone_power=2e5, tone_hz=20.004e6)
        self.assertAlmostEqual(extract_spectral_ratio(ds).value / 5e4, 1.0, delta=1e-4)

        # Noise region and spur exclusion
        ds = synthetic_dataset(cfg, shot_level=4.0, tone_power=2e5)
        x = extract_spectral_ratio(ds, noise_region=(15e6, 18e6), exclude_regions=[(16e6, 16.5e6)])
        self.assertAlmostEqual(x.value / 5e4, 1.0, delta=1e-6)
        with self.assertRaises(HetCalInputException):
            extract_spectral_ratio(ds, noise_region=(30e6, 31e6))

    def test_spectral_ratio_errors(self):
        cfg = EsaConfig()
        with self.assertRaises(HetCalAnalysisError) as cm:
            extract_spectral_ratio(synthetic_dataset(cfg, shot_level=4.0, tone_power=1.0))
        self.assertIn('Insufficient SNR', str(cm.exception))

        # Electronic trace above the shot trace
        ds = synthetic_dataset(cfg, shot_level=4.0, tone_power=2e5)
        ds.trace_electronic = Trace(ds.freq_hz, ds.trace_shot.values_dbmv + 1.0)
        with self.assertRaises(HetCalAnalysisError):
            extract_spectral_ratio(ds)

        # Tone far from the IF
        ds = synthetic_dataset(cfg, shot_level=4.0, tone_power=2e5, tone_hz=24e6)
        with self.assertRaises(HetCalAnalysisError):
            extract_spectral_ratio(ds)

    def test_budget_table(self):
        estimate = estimate_efficiency(UncertainValue.from_relative(4.852e4, 0.002), UncertainValue.from_relative(10e-9, 0.0075),
                                       EnbwResult.from_value(1.12e6, 1e6), 1542e-9)
        table = budget_table(estimate)
        self.assertListEqual(list(table.columns), ['component', 'symbol', 'relative_u', 'absolute_u', 'variance_share'])
        self.assertListEqual(list(table['component']), ['rel_p_alpha', 'rel_enbw', 'rel_x', 'rel_type_b', 'combined'])
        components = table[table['component'] != 'combined']
        self.assertAlmostEqual(components['variance_share'].sum(), 1.0)
        combined = table[table['component'] == 'combined'].iloc[0]
        self.assertAlmostEqual(combined['relative_u'], estimate.eta.rel)
        self.assertAlmostEqual(combined['absolute_u'], estimate.eta.u_std)
        # The signal-power term dominates
        self.assertEqual(components.sort_values('variance_share').iloc[-1]['component'], 'rel_p_alpha')

# This allows the module to be executed directly
def run_tests():
    unittest.main()

def main():
    l = unittest.TestLoader()
    runner = unittest.TextTestRunner()
    print("\n\nTesting Analysis")
    result = True
    for case in (TestUncertainty, TestEnbw, TestEstimator):
        result = runner.run(l.loadTestsFromTestCase(case)).wasSuccessful() and result

    if not result:
        raise Exception("Failed test")

if __name__ == '__main__':
    main()
