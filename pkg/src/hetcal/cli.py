# Copyright © 2026 The hetcal Authors. All Rights Reserved.

"""
Command-line front end: ``hetcal [options] {simulate,enbw,estimate,validate,sweep,budget} ...``

Exit codes: 0 success, 1 usage error, 2 configuration or data error, 3 analysis error.
"""

import argparse
from dataclasses import dataclass, fields as dataclass_fields, replace
import json
import logging
from numbers import Real
from pathlib import Path
import sys
from typing import List, Optional

from . import __version__
from .analysis import (EnbwResult, UncertainValue, budget_table, compute_enbw, estimate_efficiency,
                       estimate_from_datasets)
from .constants import SCHEMA_VERSION, photon_energy
from .dataset import load_dataset, load_tone_trace, persist_dataset, persist_tone_trace
from .esa import EsaConfig
from .exceptions import HetCalAnalysisError, HetCalConfigError, HetCalDataError, HetCalException
from .protocol_runner import (AnalysisOptions, LossChainUncertainty, Scenario, SweepSpec, default_receiver,
                              run_point, run_protocol, run_sweep, tone_calibrations)
from .receiver_model import ChannelParams, FieldParams, ReceiverParams
from .trace_synthesis import MonitorModel, synthesize_tone_cal_trace
from .utils.serialization import dumps_document, write_atomic

__all__ = ['CliConfig', 'load_config', 'config_from_document', 'build_parser', 'dispatch', 'main']

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_ANALYSIS = 3

SECTIONS = ('version', 'receiver', 'fields', 'channel', 'esa', 'monitor', 'scenario', 'analysis',
            'loss_chain', 'sweep', 'budget', 'output', 'verbosity')

SCENARIO_KEYS = ('s_elec', 'n_repeats', 'seed', 'attenuation_l', 'n_dark', 'n_monitor', 'deterministic',
                 'timestamp', 'u_rel_transmission')

FIELD_POWER_KEYS = {'signal_power_w': 'photon_flux_signal', 'lo_power_w': 'photon_flux_lo'}

DEFAULT_OUTPUT_DIR = 'out'

ENBW_TRACE_HELP = 'tone calibration documents (default: analysis.enbw_hz, else a noise-free synthesized tone)'

# Estimate inputs of the `budget` subcommand
DEFAULT_BUDGET = {
    'x_ratio': 4.852e4,
    'u_rel_x': 0.002,
    'p_alpha_w': 10e-9,
    'u_rel_p_alpha': 0.0075,
    'enbw_hz': 1.12e6,
    'u_rel_enbw': 0.003,
    'rbw_hz': 1e6,
    'wavelength_m': 1542e-9,
}


@dataclass(frozen=True)
class CliConfig():
    """
    Validated configuration document

    Args:
        scenario (Scenario): operating point (receiver, fields, channel, analyzer, monitor, analysis settings)
        sweep_axis (str or None): axis of the configured sweep
        sweep_points (tuple[float] or None): points of the configured sweep
        max_workers (int): sweep worker threads
        budget (dict): estimate inputs of the budget subcommand
        output_dir (str): output directory
        verbosity (int): 0 warnings, 1 info, 2 debug
    """
    scenario: Scenario
    sweep_axis: Optional[str] = None
    sweep_points: Optional[tuple] = None
    max_workers: int = 1
    budget: dict = None
    output_dir: str = DEFAULT_OUTPUT_DIR
    verbosity: int = 0

    def sweep_spec(self) -> SweepSpec:
        if self.sweep_axis is None:
            raise HetCalConfigError("Configuration has no sweep section (sweep.axis, sweep.points)")
        return SweepSpec(self.sweep_axis, self.sweep_points, self.scenario)


def _section(doc : dict, name : str, allowed) -> dict:
    section = doc.get(name, {})
    if section is None:
        return {}
    if not isinstance(section, dict):
        raise HetCalConfigError(f"Configuration section '{name}' must be an object")
    unknown = sorted(set(section) - set(allowed))
    if unknown:
        raise HetCalConfigError(f"Unknown key(s) in section '{name}': {', '.join(name + '.' + key for key in unknown)}")
    return dict(section)


def _fields_from(section : dict) -> FieldParams:
    for power_key, flux_key in FIELD_POWER_KEYS.items():
        if power_key in section and flux_key in section:
            raise HetCalConfigError(f"Give either fields.{power_key} or fields.{flux_key}, not both")
    energy = photon_energy(section.get('wavelength', FieldParams.default_parameters['wavelength']))
    for power_key, flux_key in FIELD_POWER_KEYS.items():
        if power_key in section:
            section[flux_key] = section.pop(power_key) / energy
    return FieldParams(**section)


def config_from_document(doc : dict) -> CliConfig:
    """
    Build and invariant-check a configuration from its parsed JSON document.

    Missing sections take their defaults.

    Raises:
        HetCalConfigError: unknown section or key, schema-version mismatch, violated invariant (message names the field)
    """
    if not isinstance(doc, dict):
        raise HetCalConfigError("Configuration must be a JSON object")
    if doc.get('version') != SCHEMA_VERSION:
        raise HetCalConfigError(f"Unsupported configuration version {doc.get('version')!r} (expected {SCHEMA_VERSION})")
    unknown = sorted(set(doc) - set(SECTIONS))
    if unknown:
        raise HetCalConfigError(f"Unknown configuration section(s): {', '.join(unknown)}")

    try:
        receiver = _section(doc, 'receiver', ReceiverParams.default_parameters)
        rx = ReceiverParams(**receiver) if receiver else default_receiver()
        field_section = _section(doc, 'fields', list(FieldParams.default_parameters) + list(FIELD_POWER_KEYS))
        scenario_args = {
            'rx': rx,
            'fields': _fields_from(field_section),
            'channel': ChannelParams(**_section(doc, 'channel', ChannelParams.default_parameters)),
            'esa': EsaConfig(**_section(doc, 'esa', EsaConfig.default_parameters)),
            'monitor': MonitorModel(**_section(doc, 'monitor', MonitorModel.default_parameters)),
            'loss_chain': LossChainUncertainty(**_section(doc, 'loss_chain', [f.name for f in dataclass_fields(LossChainUncertainty)])),
        }
        analysis = _section(doc, 'analysis', [f.name for f in dataclass_fields(AnalysisOptions)])
        if analysis.get('noise_region') is not None:
            analysis['noise_region'] = tuple(analysis['noise_region'])
        scenario_args['analysis'] = AnalysisOptions(**analysis)
        scenario_args.update(_section(doc, 'scenario', SCENARIO_KEYS))
        scenario = Scenario(**scenario_args)

        sweep = _section(doc, 'sweep', ('axis', 'points', 'max_workers'))
        max_workers = sweep.pop('max_workers', 1)
        if int(max_workers) != max_workers or max_workers < 1:
            raise HetCalConfigError(f"sweep.max_workers={max_workers} must be an integer >= 1")
        sweep_axis = sweep_points = None
        if sweep:
            if 'axis' not in sweep or 'points' not in sweep:
                raise HetCalConfigError("Section 'sweep' needs both sweep.axis and sweep.points")
            spec = SweepSpec(sweep['axis'], sweep['points'], scenario)
            sweep_axis, sweep_points = spec.axis, spec.points

        budget = dict(DEFAULT_BUDGET)
        budget.update(_section(doc, 'budget', DEFAULT_BUDGET))
        for key, value in budget.items():
            if isinstance(value, bool) or not isinstance(value, Real):
                raise HetCalConfigError(f"budget.{key}={value!r} must be a number")

        output = _section(doc, 'output', ('dir',))
        verbosity = doc.get('verbosity', 0)
        if not isinstance(verbosity, int) or verbosity < 0:
            raise HetCalConfigError(f"verbosity={verbosity!r} must be a non-negative integer")
    except HetCalConfigError:
        raise
    except (HetCalException, TypeError, ValueError) as err:
        raise HetCalConfigError(str(err)) from err

    return CliConfig(scenario=scenario,
                     sweep_axis=sweep_axis,
                     sweep_points=sweep_points,
                     max_workers=int(max_workers),
                     budget=budget,
                     output_dir=str(output.get('dir', DEFAULT_OUTPUT_DIR)),
                     verbosity=verbosity)


def load_config(path) -> CliConfig:
    """
    Read, parse and invariant-check a configuration file

    Raises:
        HetCalConfigError: unreadable file, parse error (with line and column), invalid content
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as err:
        raise HetCalConfigError(f"Cannot read configuration {path}: {err}") from err
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise HetCalConfigError(f"Configuration {path} is not valid JSON: {err.msg}", err.lineno, err.colno) from err
    return config_from_document(doc)


class _ArgumentParser(argparse.ArgumentParser):
    """
    Parser reporting usage errors with exit code 1
    """
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog='hetcal',
        description='Simulator-backed calibration of balanced heterodyne detection efficiency.',
        epilog=f'estimate options: --enbw-trace PATH [PATH ...] {ENBW_TRACE_HELP}. '
               'Exit codes: 0 success, 1 usage error, 2 configuration or data error, 3 analysis error.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--config', metavar='PATH', default=None,
                        help='JSON configuration document (default: built-in defaults, k=2, n_avg=100, filter=gaussian)')
    parser.add_argument('--seed', metavar='N', type=int, default=None,
                        help='base random seed (default: scenario.seed, 0)')
    parser.add_argument('--out', metavar='DIR', default=None,
                        help=f'output directory (default: output.dir, {DEFAULT_OUTPUT_DIR})')
    parser.add_argument('--repeats', metavar='N', type=int, default=None,
                        help='acquisitions per operating point (default: scenario.n_repeats, 10)')
    parser.add_argument('--deterministic', action='store_true',
                        help='noise-free expectation mode (default: off)')
    parser.add_argument('--k', metavar='FACTOR', type=float, default=None,
                        help='coverage factor of expanded uncertainties (default: analysis.k, 2)')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='increase log verbosity on stderr, repeatable (default: warnings only)')

    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    subparsers.add_parser('simulate', help='run the acquisition sequence and write dataset files')
    enbw = subparsers.add_parser('enbw', help='equivalent noise bandwidth from tone calibration files')
    enbw.add_argument('tone_traces', metavar='TONE_TRACE', nargs='+', help='tone calibration documents of one analyzer setting')
    estimate = subparsers.add_parser('estimate', help='efficiency estimate from dataset files')
    estimate.add_argument('datasets', metavar='DATASET', nargs='+', help='dataset documents of one operating point')
    estimate.add_argument('--enbw-trace', metavar='PATH', nargs='+', default=None,
                          help=ENBW_TRACE_HELP)
    subparsers.add_parser('validate', help='round-trip the scenario and compare with ground truth')
    subparsers.add_parser('sweep', help='run the configured validation sweep')
    subparsers.add_parser('budget', help='uncertainty budget of the configured estimate inputs')
    return parser


def _configure_logging(verbosity : int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    package_logger = logging.getLogger('hetcal')
    for handler in list(package_logger.handlers):
        if getattr(handler, '_hetcal_cli', False):
            package_logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    handler._hetcal_cli = True
    package_logger.addHandler(handler)
    package_logger.setLevel(level)


def _apply_overrides(cfg : CliConfig, args : argparse.Namespace) -> CliConfig:
    sc = cfg.scenario
    changes = {}
    if args.seed is not None:
        changes['seed'] = args.seed
    if args.repeats is not None:
        changes['n_repeats'] = args.repeats
    if args.deterministic:
        changes['deterministic'] = True
    if args.k is not None:
        changes['analysis'] = replace(sc.analysis, k=args.k)
    try:
        sc = sc.replace(**changes)
    except HetCalException as err:
        raise HetCalConfigError(str(err)) from err
    return replace(cfg, scenario=sc, output_dir=args.out if args.out is not None else cfg.output_dir)


def _write_json(out_dir : Path, name : str, doc : dict) -> Path:
    path = write_atomic(out_dir / name, dumps_document(doc))
    logger.info("Wrote %s", path)
    return path


def _cmd_simulate(cfg : CliConfig, args, out_dir : Path) -> None:
    sc = cfg.scenario
    for i, ds in enumerate(run_protocol(sc, 0)):
        path = persist_dataset(ds, out_dir / f'dataset_000_{i:03d}.json')
        print(path)
    for i, cal in enumerate(tone_calibrations(sc, 0)):
        print(persist_tone_trace(cal, out_dir / f'tone_cal_{i:03d}.json'))


def _enbw_from_files(paths : List[str], type_b_rel : float) -> EnbwResult:
    cals = [load_tone_trace(path) for path in paths]
    first = cals[0]
    for path, cal in zip(paths[1:], cals[1:]):
        if (cal.esa['rbw_hz'], cal.esa['reference_power']) != (first.esa['rbw_hz'], first.esa['reference_power']):
            raise HetCalDataError(f"Tone calibration {path} was taken with other analyzer settings than {paths[0]}")
    return compute_enbw([cal.trace for cal in cals], first.esa['rbw_hz'], first.esa['reference_power'], type_b_rel)


def _cmd_enbw(cfg : CliConfig, args, out_dir : Path) -> None:
    result = _enbw_from_files(args.tone_traces, cfg.scenario.analysis.enbw_type_b_rel)
    _write_json(out_dir, 'enbw.json', dict(result.to_dict(), n_traces=len(args.tone_traces)))
    print(f"ENBW = {result.enbw_hz.value * 1e-6:.3f} MHz ± {result.enbw_hz.u_std * 1e-6:.4f} MHz "
          f"(RBW {result.rbw_hz * 1e-6:.3f} MHz, ratio {result.ratio:.4f}, {len(args.tone_traces)} trace(s))")


def _enbw_for_datasets(cfg : CliConfig, args, esa : EsaConfig) -> EnbwResult:
    options = cfg.scenario.analysis
    if args.enbw_trace is not None:
        return _enbw_from_files(args.enbw_trace, options.enbw_type_b_rel)
    if options.enbw_hz is not None:
        return EnbwResult.from_value(options.enbw_hz, esa['rbw_hz'], options.enbw_type_b_rel)
    trace = synthesize_tone_cal_trace(esa, esa['center_hz'], esa['reference_power'], deterministic=True)
    return compute_enbw(trace, esa['rbw_hz'], esa['reference_power'], options.enbw_type_b_rel)


def _cmd_estimate(cfg : CliConfig, args, out_dir : Path) -> None:
    datasets = [load_dataset(path) for path in args.datasets]
    options = cfg.scenario.analysis
    enbw = _enbw_for_datasets(cfg, args, datasets[0].esa)
    estimate = estimate_from_datasets(datasets, enbw, options.type_b_rel, options.k,
                                      options.u_rel_attenuation, options.u_rel_responsivity, **options.window)
    _write_json(out_dir, 'estimate.json', estimate.to_dict())
    print(estimate)
    print(budget_table(estimate).to_string(index=False))


def _cmd_validate(cfg : CliConfig, args, out_dir : Path) -> None:
    point = run_point(cfg.scenario, 0)
    estimate = point.estimate
    relative_error = (estimate.eta.value - point.eta_true) / point.eta_true
    doc = {
        'eta_est': estimate.eta.value,
        'u_std': estimate.eta.u_std,
        'expanded_u': estimate.expanded_u,
        'k': estimate.k,
        'eta_true': point.eta_true,
        'relative_error': relative_error,
        'e_n': point.e_n,
        'agree': point.agree,
        'eta_ref': point.eta_ref.value,
        'u_ref': point.eta_ref.u_std,
        'e_n_ref': point.e_n_ref,
        'estimate': estimate.to_dict(),
    }
    _write_json(out_dir, 'validation.json', doc)
    print(f"{estimate}; eta_true = {point.eta_true:.4f}; relative error = {relative_error:.3e}; "
          f"E_n vs truth = {point.e_n:.3f} ({'agree' if point.agree else 'disagree'}); "
          f"E_n vs loss chain = {point.e_n_ref:.3f}")


def _cmd_sweep(cfg : CliConfig, args, out_dir : Path) -> None:
    report = run_sweep(cfg.sweep_spec(), cfg.max_workers)
    report.to_csv(out_dir / 'sweep_report.csv')
    report.to_json(out_dir / 'sweep_report.json')
    print(report.to_dataframe().to_string(index=False))
    summary = report.summary()
    print(', '.join(f"{key}={value:.6g}" if isinstance(value, float) else f"{key}={value}" for key, value in summary.items()))


def _cmd_budget(cfg : CliConfig, args, out_dir : Path) -> None:
    b = cfg.budget
    try:
        estimate = estimate_efficiency(UncertainValue.from_relative(b['x_ratio'], b['u_rel_x'], 'typeA', 'x_ratio'),
                                       UncertainValue.from_relative(b['p_alpha_w'], b['u_rel_p_alpha'], 'combined', 'p_alpha'),
                                       EnbwResult.from_value(b['enbw_hz'], b['rbw_hz'], b['u_rel_enbw']),
                                       b['wavelength_m'],
                                       cfg.scenario.analysis.type_b_rel,
                                       cfg.scenario.analysis.k)
    except (HetCalAnalysisError, HetCalDataError):
        raise
    except HetCalException as err:
        raise HetCalConfigError(f"Invalid budget section: {err}") from err
    table = budget_table(estimate)
    write_atomic(out_dir / 'budget.csv', table.to_csv(index=False))
    _write_json(out_dir, 'budget.json', {'estimate': estimate.to_dict(), 'table': table.to_dict(orient='records')})
    print(estimate)
    print(table.to_string(index=False))


COMMANDS = {
    'simulate': _cmd_simulate,
    'enbw': _cmd_enbw,
    'estimate': _cmd_estimate,
    'validate': _cmd_validate,
    'sweep': _cmd_sweep,
    'budget': _cmd_budget,
}


def dispatch(argv : Optional[List[str]] = None) -> int:
    """
    Parse the command line, run the subcommand and map errors to exit codes

    Args:
        argv (list[str]): arguments without the program name

    Returns:
        int: exit code (0 success, 1 usage, 2 configuration/data, 3 analysis)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        # --help, --version and usage errors
        return exit_.code if isinstance(exit_.code, int) else EXIT_USAGE

    try:
        cfg = load_config(args.config) if args.config is not None else config_from_document({'version': SCHEMA_VERSION})
        _configure_logging(max(args.verbose, cfg.verbosity))
        cfg = _apply_overrides(cfg, args)
        COMMANDS[args.command](cfg, args, Path(cfg.output_dir))
    except HetCalAnalysisError as err:
        print(f"hetcal: analysis error: {err}", file=sys.stderr)
        return EXIT_ANALYSIS
    except (HetCalException, OSError) as err:
        print(f"hetcal: {'configuration' if isinstance(err, HetCalConfigError) else 'data'} error: {err}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == '__main__':
    main()
