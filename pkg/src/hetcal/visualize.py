# Copyright © 2026 The hetcal Authors. All Rights Reserved.

# Import packages
# ============
from typing import Dict, TYPE_CHECKING
import matplotlib as mpl
import matplotlib.pyplot as plt
import numpy as np

if TYPE_CHECKING:
    from .dataset import Trace
    from .sweep_report import SweepReport

# Set default options
# ====================
mpl.rcParams['lines.linewidth']  = 2
mpl.rcParams['lines.markersize'] = 8
mpl.rcParams['font.size']        = 14
mpl.rcParams['axes.labelsize']   = 'x-large'
mpl.rcParams['legend.fontsize']  = 'large'
mpl.rcParams['figure.titlesize'] = 'x-large'
mpl.rcParams['figure.figsize']   = [10.0, 7.0]
mpl.rcParams['figure.dpi']       = 100
mpl.rcParams['savefig.dpi']      = 300

AXIS_LABELS = {
    'signal_power': ('Signal power (nW)', 1e9),
    'attenuation': ('Transmission T', 1.0),
    'if_frequency': ('Intermediate frequency (MHz)', 1e-6),
}

# VISUALIZE FUNCTIONS
# ==========================
def set_plot_options(opt : dict) -> dict:
    """
    Fill in the plot options not given by the user.

    Parameters
    ----------
    opt : dict
          user options. Supported entries:\n
          * 'title'   : str or None, plot title. Default None (no title)
          * 'title_fontsize' : str or float. Default 'x-large'
          * 'legend'  : bool, display the legend. Default True
          * 'savefig' : str or None, filename to save the figure to. Default None
          * 'ax'      : matplotlib axes to draw into. Default None (new figure)

    Returns
    -------
    opt : dict
          complete options
    """
    opt = dict(opt)
    opt.setdefault('title', None)
    opt.setdefault('title_fontsize', 'x-large')
    opt.setdefault('legend', True)
    opt.setdefault('savefig', None)
    opt.setdefault('ax', None)
    return opt


def _finish(fig, ax, opt : dict):
    if opt['title']:
        ax.set_title(opt['title'], fontsize=opt['title_fontsize'])
    if opt['legend']:
        ax.legend(loc='best', fancybox=False, framealpha=1.0, edgecolor='w')
    ax.grid(True, alpha=0.3)
    if opt['savefig']:
        fig.savefig(opt['savefig'], bbox_inches='tight')
    return fig


def plot_traces(traces : Dict[str, "Trace"], **kwargs):
    """
    Plot analyzer traces (dBmV) against frequency (MHz), one line per trace.

    Parameters
    ----------
    traces : dict[str, Trace]
             label -> trace
    kwargs : see :func:`set_plot_options`

    Returns
    -------
    fig : matplotlib Figure

    Example
    -------
    | fig = plot_traces({'shot': ds.trace_shot, 'quadrature': ds.trace_quadrature}, title='Acquisition')
    """
    opt = set_plot_options(kwargs)
    ax = opt['ax']
    if ax is None:
        fig = plt.figure()
        ax = fig.add_subplot(111)
    else:
        fig = ax.figure
    for label, trace in traces.items():
        ax.plot(trace.freq_hz * 1e-6, trace.values_dbmv, label=label)
    ax.set_xlabel('Frequency (MHz)')
    ax.set_ylabel('Level (dBmV)')
    return _finish(fig, ax, opt)


def plot_sweep(report : "SweepReport", **kwargs):
    """
    Plot the efficiency estimates of a sweep with their expanded uncertainty, the ground truth and the
    loss-chain reference band.

    Attenuation sweeps are drawn on log-log axes.

    Parameters
    ----------
    report : SweepReport
    kwargs : see :func:`set_plot_options`

    Returns
    -------
    fig : matplotlib Figure
    """
    opt = set_plot_options(kwargs)
    ax = opt['ax']
    if ax is None:
        fig = plt.figure()
        ax = fig.add_subplot(111)
    else:
        fig = ax.figure
    label, scale = AXIS_LABELS.get(report.axis, (report.axis, 1.0))
    x = report.axis_values * scale
    expanded = np.array([point.estimate.expanded_u for point in report])
    ax.errorbar(x, report.etas, yerr=expanded, fmt='o', capsize=4, label='protocol estimate')
    ax.plot(x, [point.eta_true for point in report], 'k--', label='ground truth')
    ref = np.array([point.eta_ref.value for point in report])
    u_ref = np.array([point.eta_ref.expanded() for point in report])
    ax.fill_between(x, ref - u_ref, ref + u_ref, alpha=0.2, label='loss-chain reference')
    if report.axis == 'attenuation':
        ax.set_xscale('log')
        ax.set_yscale('log')
    ax.set_xlabel(label)
    ax.set_ylabel('Efficiency')
    return _finish(fig, ax, opt)
