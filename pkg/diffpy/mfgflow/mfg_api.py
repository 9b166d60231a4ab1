#!/usr/bin/env python
##############################################################################
#
# diffpy.mfgflow    by DANSE Diffraction group
#                   Simon J. L. Billinge
#                   (c) 2024 Trustees of the Columbia University
#                   in the City of New York.  All rights reserved.
#
# File coded by:    diffpy.mfgflow developers
#
# See AUTHORS.rst for a list of people who contributed.
# See LICENSE.txt for license information.
#
##############################################################################


"""Functional interface: run configurations, solving and plotting.
"""

# module version
__id__ = "$Id$"

import copy
import json
import numbers

import numpy
import matplotlib.pyplot as plt

from diffpy.mfgflow.core import TimeGrid, TrajectoryPair, isSimplexRows
from diffpy.mfgflow.models import ParadigmShiftParams, paradigm_shift_model
from diffpy.mfgflow.stationary import (StationaryState, StationaryConfig,
        iterate_stationary, stationary_reference)
from diffpy.mfgflow.timedep import (TdConfig, iterate_timedep,
        initial_trajectory, analytic_paradigm_trajectory, recover_value,
        hamiltonian_trace, h1_weighted_distance)
from diffpy.mfgflow.log import mlog

MODES = ('stationary', 'timedep')

_default_stationary = dict(
        mode='stationary',
        model=dict(name='paradigm_shift', a1=1.0, a2=0.0, r=1.0),
        init=dict(theta=[0.8, 0.2], u=[4.0, 2.0]),
        flow=dict(step=8.0 / 300, max_iters=300, tol=1e-9, record_every=1,
            scheme='projected'),
        reference='stationary_paradigm',
        output_dir='out',
        seed=0)

_default_timedep = dict(
        mode='timedep',
        model=dict(name='paradigm_shift', a1=1.0, a2=0.0, r=1.0),
        grid=dict(T=8.0, N=450),
        boundary=dict(theta0=[0.5, 0.5], uT=[0.0, 0.0]),
        init=dict(u0=[5.0, 3.0], thetaT=[0.8, 0.2], perturbation=0.0),
        flow=dict(step=0.1, max_iters=30000, tol=2e-4, record_every=10,
            scheme='projected'),
        reference='analytic_paradigm',
        output_dir='out',
        seed=0)

_schemes = dict(stationary=('projected', 'euler', 'flow'),
        timedep=('projected', 'affine'))
_references = dict(stationary=(None, 'stationary_paradigm'),
        timedep=(None, 'analytic_paradigm'))


class ConfigError(ValueError):
    '''Invalid run configuration.  The message starts with the dotted
    path of the offending field.
    '''

    def __init__(self, path, message):
        self.path = path
        ValueError.__init__(self, "%s: %s" % (path, message))
        return

# End class ConfigError


class RunConfig(object):
    '''Validated run configuration.

    mode        -- 'stationary' or 'timedep'
    params      -- ParadigmShiftParams
    grid        -- TimeGrid or None
    theta0, uT  -- boundary data of timedep runs
    init        -- dictionary of initial data
    flow        -- dictionary with step, max_iters, tol, record_every and
                   scheme
    reference   -- None or the name of a closed-form reference
    output_dir  -- output directory
    seed        -- integer seed of randomized initial guesses
    source      -- the dictionary the configuration was parsed from
    '''

    def __init__(self, **kwargs):
        self.mode = None
        self.params = None
        self.grid = None
        self.theta0 = None
        self.uT = None
        self.init = {}
        self.flow = {}
        self.reference = None
        self.output_dir = 'out'
        self.seed = 0
        self.source = {}
        self.__dict__.update(kwargs)
        return

# End class RunConfig


def mfg_default_config(mode='stationary', **kwargs):
    """Generate a complete run configuration dictionary.

    Parameters
    ----------
    mode : str
        'stationary' or 'timedep'.
    kwargs
        top-level entries that replace the defaults

    Returns
    -------
    config : dict
        A dictionary that passes parse_config.

    Examples
    --------
    cfg = mfg_default_config('timedep', grid=dict(T=8.0, N=100))
    """
    if mode not in MODES:
        raise ValueError("unknown mode %r, use one of %r" % (mode, MODES))
    rv = copy.deepcopy(_default_stationary if mode == 'stationary'
            else _default_timedep)
    # protect against foreign keys
    for k in kwargs.keys():
        if k not in rv:
            e = 'configuration entry %s is not supported' % k
            raise ValueError(e)
    rv.update(copy.deepcopy(kwargs))
    return rv


def load_config(path):
    """Read a JSON run configuration and validate it.

    Raise IOError for unreadable files, ValueError for invalid JSON and
    ConfigError for invalid content.
    """
    with open(path) as fp:
        data = json.load(fp)
    return parse_config(data)


def _section(data, key, path, required=True):
    if key not in data:
        if required:
            raise ConfigError(path + key, "missing entry")
        return None
    value = data[key]
    if not isinstance(value, dict):
        raise ConfigError(path + key, "must be an object")
    return value


def _checkKeys(data, allowed, path):
    for k in data:
        if k not in allowed:
            raise ConfigError(path + k, "unknown entry")
    return


def _number(data, key, path, default=None, positive=False, integer=False):
    fullpath = path + key
    if key not in data:
        if default is None:
            raise ConfigError(fullpath, "missing entry")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ConfigError(fullpath, "must be a number, got %r" % (value,))
    if not numpy.isfinite(value):
        raise ConfigError(fullpath, "must be finite")
    if integer and int(value) != value:
        raise ConfigError(fullpath, "must be an integer, got %r" % (value,))
    if positive and not value > 0:
        raise ConfigError(fullpath, "must be positive, got %r" % (value,))
    return int(value) if integer else float(value)


def _vector(data, key, path, d=2, simplex=False, required=True):
    fullpath = path + key
    if key not in data:
        if required:
            raise ConfigError(fullpath, "missing entry")
        return None
    value = data[key]
    if not isinstance(value, list) or len(value) != d or not all(
            isinstance(x, numbers.Real) and not isinstance(x, bool)
            for x in value):
        raise ConfigError(fullpath, "must be a list of %i numbers" % d)
    v = numpy.array(value, dtype=float)
    if not numpy.all(numpy.isfinite(v)):
        raise ConfigError(fullpath, "entries must be finite")
    if simplex and not isSimplexRows(v)[0]:
        raise ConfigError(fullpath, "not a probability vector")
    return v


def parse_config(data):
    """Validate a run configuration dictionary.

    Return RunConfig.  Raise ConfigError naming the offending field.
    """
    if not isinstance(data, dict):
        raise ConfigError('<root>', "configuration must be a JSON object")
    mode = data.get('mode')
    if mode not in MODES:
        raise ConfigError('mode', "must be one of %r, got %r" % (MODES, mode))
    top = ['mode', 'model', 'init', 'flow', 'reference', 'output_dir',
            'seed']
    if mode == 'timedep':
        top += ['grid', 'boundary']
    _checkKeys(data, top, '')
    rc = RunConfig(mode=mode, source=copy.deepcopy(data))
    # model
    model = _section(data, 'model', '')
    _checkKeys(model, ('name', 'a1', 'a2', 'r'), 'model.')
    if model.get('name') != 'paradigm_shift':
        raise ConfigError('model.name', "only 'paradigm_shift' is supported")
    try:
        rc.params = ParadigmShiftParams(_number(model, 'a1', 'model.', 1.0),
                _number(model, 'a2', 'model.', 0.0),
                _number(model, 'r', 'model.', 1.0))
    except ValueError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError('model', str(e))
    # flow
    flow = _section(data, 'flow', '')
    _checkKeys(flow, ('step', 'max_iters', 'tol', 'record_every',
        'scheme'), 'flow.')
    rc.flow = dict(step=_number(flow, 'step', 'flow.', positive=True),
            max_iters=_number(flow, 'max_iters', 'flow.', integer=True),
            tol=_number(flow, 'tol', 'flow.'),
            record_every=_number(flow, 'record_every', 'flow.', 1,
                positive=True, integer=True),
            scheme=flow.get('scheme', 'projected'))
    if rc.flow['max_iters'] < 0:
        raise ConfigError('flow.max_iters', "must be non-negative")
    if rc.flow['tol'] < 0:
        raise ConfigError('flow.tol', "must be non-negative")
    if rc.flow['scheme'] not in _schemes[mode]:
        raise ConfigError('flow.scheme', "must be one of %r in %s mode" % (
            _schemes[mode], mode))
    # initial and boundary data
    if mode == 'stationary':
        init = _section(data, 'init', '')
        _checkKeys(init, ('theta', 'u'), 'init.')
        rc.init = dict(theta=_vector(init, 'theta', 'init.', simplex=True),
                u=_vector(init, 'u', 'init.'))
    else:
        grid = _section(data, 'grid', '')
        _checkKeys(grid, ('T', 'N'), 'grid.')
        N = _number(grid, 'N', 'grid.', integer=True)
        if N < 2:
            raise ConfigError('grid.N', "must be at least 2")
        rc.grid = TimeGrid(_number(grid, 'T', 'grid.', positive=True), N)
        bdata = _section(data, 'boundary', '')
        _checkKeys(bdata, ('theta0', 'uT'), 'boundary.')
        rc.theta0 = _vector(bdata, 'theta0', 'boundary.', simplex=True)
        rc.uT = _vector(bdata, 'uT', 'boundary.')
        init = _section(data, 'init', '', required=False) or {}
        _checkKeys(init, ('u0', 'thetaT', 'perturbation'), 'init.')
        rc.init = dict(u0=_vector(init, 'u0', 'init.', required=False),
                thetaT=_vector(init, 'thetaT', 'init.', simplex=True,
                    required=False),
                perturbation=_number(init, 'perturbation', 'init.', 0.0))
    # reference
    ref = data.get('reference')
    if ref not in _references[mode]:
        raise ConfigError('reference', "must be one of %r in %s mode" % (
            _references[mode], mode))
    if ref == 'analytic_paradigm':
        if not numpy.array_equal(rc.theta0, [0.5, 0.5]):
            raise ConfigError('reference', "analytic solution needs "
                    "boundary.theta0 = [0.5, 0.5]")
        if rc.uT[0] != rc.uT[1]:
            raise ConfigError('reference', "analytic solution needs "
                    "boundary.uT with equal entries")
    rc.reference = ref
    # output and seed
    outdir = data.get('output_dir', 'out')
    if not isinstance(outdir, str) or not outdir:
        raise ConfigError('output_dir', "must be a non-empty string")
    rc.output_dir = outdir
    rc.seed = _number(data, 'seed', '', 0, integer=True)
    if rc.seed < 0:
        raise ConfigError('seed', "must be non-negative")
    return rc


def _jsonFloat(x):
    """Float for JSON output, None for nan."""
    x = float(x)
    return None if numpy.isnan(x) else x


def _solveStationary(rc):
    model = paradigm_shift_model(rc.params)
    init = StationaryState(rc.init['theta'], rc.init['u'])
    reference = None
    if rc.reference == 'stationary_paradigm':
        reference = stationary_reference(model, init)[0]
    flow = rc.flow
    config = StationaryConfig(step=flow['step'],
            max_iters=flow['max_iters'], residual_tol=flow['tol'],
            record_every=flow['record_every'], scheme=flow['scheme'],
            reference=reference)
    sol = iterate_stationary(model, init, config)
    trace = sol.trace
    summary = dict(mode='stationary', converged=bool(sol.converged),
            iters=int(sol.iterations),
            final_residual=_jsonFloat(trace.final_residual),
            h1_distance=_jsonFloat(trace.last['distance']),
            k_bar=_jsonFloat(sol.k), weak_residual=_jsonFloat(sol.residual),
            min_theta=_jsonFloat(sol.min_theta))
    return dict(solution=sol, report=trace, trajectory=None,
            summary=summary, converged=sol.converged)


def _solveTimedep(rc):
    model = paradigm_shift_model(rc.params)
    init = initial_trajectory(rc.grid, rc.theta0, rc.uT,
            u0=rc.init['u0'], thetaT=rc.init['thetaT'],
            perturbation=rc.init['perturbation'], seed=rc.seed)
    reference = None
    if rc.reference == 'analytic_paradigm':
        reference = analytic_paradigm_trajectory(rc.grid, rc.uT)
    flow = rc.flow
    projection = 'simplex' if flow['scheme'] == 'projected' else 'affine'
    config = TdConfig(step=flow['step'], max_iters=flow['max_iters'],
            fixpoint_tol=flow['tol'], record_every=flow['record_every'],
            reference=reference, projection=projection)
    traj, report = iterate_timedep(model, init, config)
    summary = dict(mode='timedep', converged=bool(report.converged),
            iters=int(report.iterations),
            final_residual=_jsonFloat(report.final_residual),
            min_theta=_jsonFloat(numpy.min(report.column('min_theta'))))
    # the deformation never moves the state-common part of u
    summary['distance_measure'] = 'recovered_value'
    summary['h1_distance'] = None
    summary['h1_distance_raw'] = None
    if reference is not None:
        recovered = traj.replace(u=recover_value(model, traj))
        summary['h1_distance'] = h1_weighted_distance(recovered, reference)
        summary['h1_distance_raw'] = h1_weighted_distance(traj, reference)
    if model.potential is not None:
        summary['hamiltonian_std'] = float(
                hamiltonian_trace(model, traj).std())
    return dict(solution=traj, report=report, trajectory=traj,
            summary=summary, converged=report.converged)


def mfg_solve(run_config):
    """Solve the problem described by a run configuration.

    Parameters
    ----------
    run_config : RunConfig or dict
        A configuration, dictionaries are passed through parse_config.

    Returns
    -------
    result : dict
        A dictionary with the following entries:

        - solution : StationarySolution or TrajectoryPair
        - report : SolveReport
        - trajectory : TrajectoryPair of timedep runs, None otherwise
        - summary : dict with JSON-ready result values
        - converged : bool

    Examples
    --------
    from diffpy.mfgflow import mfg_solve, mfg_default_config

    rv = mfg_solve(mfg_default_config('stationary'))
    print(rv['summary']['k_bar'])
    """
    if not isinstance(run_config, RunConfig):
        run_config = parse_config(run_config)
    mlog.info("solving %s problem", run_config.mode)
    if run_config.mode == 'stationary':
        return _solveStationary(run_config)
    return _solveTimedep(run_config)


def plot_trajectory(traj, ax=None, **kwargs):
    """Plot theta and u of a trajectory against time.

    Parameters
    ----------
    traj : TrajectoryPair
        A time-dependent solution.
    ax : matplotlib.axes.Axes, optional
        An instance of Axes class to plot into.  New Figure and Axes
        are created when None.
    kwargs :
        Additional keyword arguments passed to ``ax.plot``.

    Returns
    -------
    l_list : list
        A list of ``matplotlib.lines.Line2D`` objects, theta curves first.
    """
    if not isinstance(traj, TrajectoryPair):
        raise ValueError("plot_trajectory needs a TrajectoryPair")
    if ax is None:
        fig, ax = plt.subplots()
    t = traj.grid.times
    l_list = []
    for i in range(traj.d):
        l_list += ax.plot(t, traj.theta[:, i], label=r'$\theta^%i$' % (i + 1),
                **kwargs)
    for i in range(traj.d):
        l_list += ax.plot(t, traj.u[:, i], '--', label=r'$u^%i$' % (i + 1),
                **kwargs)
    ax.legend()
    ax.set_xlabel('t')
    return l_list


def plot_convergence(report, column=None, ax=None, logy=True, **kwargs):
    """Plot a column of a SolveReport against the iteration number.

    Parameters
    ----------
    report : SolveReport
        The solver trace.
    column : str, optional
        Column to plot.  Default is 'h1_distance' when present, otherwise
        'distance'.
    ax : matplotlib.axes.Axes, optional
        Axes to plot into, new ones are created when None.
    logy : bool, optional
        Use a logarithmic y axis.  Default True.

    Returns
    -------
    l_list : list
        A list of ``matplotlib.lines.Line2D`` objects.
    """
    if column is None:
        column = 'h1_distance' if 'h1_distance' in report.columns \
                else 'distance'
    y = report.column(column)
    x = report.column('iter')
    if ax is None:
        fig, ax = plt.subplots()
    l_list = ax.plot(x, y, label=column, **kwargs)
    if logy and numpy.any(y > 0):
        ax.set_yscale('log')
    ax.set_xlabel('iteration')
    ax.set_ylabel(column)
    ax.legend()
    return l_list

# End of file
