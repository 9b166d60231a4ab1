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

"""mfg -- run mean-field game experiments from JSON configurations.

Exit status is 0 when the iteration converged, 2 when it did not and 1
for configuration, input or output errors.
"""

from __future__ import print_function

import sys
import os
import os.path
import json
import optparse

import numpy
from diffpy.mfgflow import __version__
from diffpy.mfgflow.core import TrajectoryPair
from diffpy.mfgflow.report import SolveReport
from diffpy.mfgflow.stationary import StationarySolution
from diffpy.mfgflow.log import mlog, setVerbosity, addStreamHandler
import diffpy.mfgflow.mfg_api as mfg_api

__id__ = "$Id$"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2

COMMANDS = ('run', 'check')


class MfgOptionParser(optparse.OptionParser):
    '''OptionParser with exit status 1 on usage errors.
    '''

    def error(self, msg):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, "%s: error: %s\n" % (self.get_prog_name(), msg))

# End class MfgOptionParser


def createOptionParser():

    parser = MfgOptionParser(
        usage = '\n'.join([
        "%prog run CONFIG.json [options]",
        "       %prog check CONFIG.json",
        "Solve finite-state mean-field games by monotone flows.",
        ]),
        epilog="Please report bugs to diffpy-dev@googlegroups.com."
        )

    parser.add_option('-V', '--version', action="version",
        help="Show program version and exit.")
    parser.version = __version__
    parser.add_option('-o', '--out', metavar="DIR", dest="outdir",
            help="Write outputs to DIR instead of the configured output_dir.")
    parser.add_option('-q', '--quiet', action="store_true", dest="quiet",
            help="Log warnings and errors only.")
    parser.add_option('-v', '--verbose', action="store_true", dest="verbose",
            help="Log every recorded iteration.")

    # Defaults
    parser.set_defaults(quiet=False)
    parser.set_defaults(verbose=False)

    return parser


def trajectoryTable(result):
    """Header and rows of trajectory.csv.

    Timedep runs give one row per grid node.  Stationary runs give one
    row per recorded iterate with t the pseudo-time iter * step.
    """
    solution = result['solution']
    if isinstance(solution, TrajectoryPair):
        d = solution.d
        data = numpy.column_stack([solution.grid.times, solution.theta,
            solution.u])
    elif isinstance(solution, StationarySolution):
        trace = solution.trace
        d = len(solution.u)
        step = result['step']
        cols = [trace.column('iter') * step]
        cols += [trace.column('theta_%i' % i) for i in range(1, d + 1)]
        cols += [trace.column('u_%i' % i) for i in range(1, d + 1)]
        data = numpy.column_stack(cols)
    else:
        raise ValueError("no trajectory in %r" % (solution,))
    header = ['t'] + ['theta_%i' % i for i in range(1, d + 1)]
    header += ['u_%i' % i for i in range(1, d + 1)]
    return header, data


def _writeTable(path, header, data):
    # %s gives the shortest round-trip repr of numpy floats
    numpy.savetxt(path, data, fmt='%s', delimiter=',',
            header=','.join(header), comments='')
    return


def emit_csv(obj, path):
    '''Write a SolveReport, TrajectoryPair or (header, rows) table as CSV.

    obj     -- object to write
    path    -- output file name

    No return value.  Floats are written as their shortest round-trip
    decimal text.
    '''
    if isinstance(obj, SolveReport):
        header, data = list(obj.columns), obj.asArray()
    elif isinstance(obj, TrajectoryPair):
        header, data = trajectoryTable(dict(solution=obj))
    else:
        header, data = obj
    _writeTable(path, header, data)
    return


def read_csv(path):
    """Read a CSV file written by emit_csv.

    Return tuple (header, data) with header a list of column names.
    """
    with open(path) as fp:
        header = fp.readline().strip().split(',')
    data = numpy.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)
    return header, data


def writeOutputs(result, outdir):
    '''Write trajectory.csv, convergence.csv and summary.json.

    result  -- dictionary from mfg_api.mfg_solve with an extra 'step'
    outdir  -- output directory, created when missing

    Return list of written paths.
    '''
    if not os.path.isdir(outdir):
        os.makedirs(outdir)
    paths = [os.path.join(outdir, f) for f in
            ('trajectory.csv', 'convergence.csv', 'summary.json')]
    emit_csv(trajectoryTable(result), paths[0])
    emit_csv(result['report'], paths[1])
    with open(paths[2], 'w') as fp:
        json.dump(result['summary'], fp, indent=2, sort_keys=True)
        fp.write('\n')
    return paths


def getConfigFromFile(fn):
    '''Load and validate a run configuration.

    Return tuple (RunConfig, None) or (None, message).
    '''
    try:
        rc = mfg_api.load_config(fn)
    except mfg_api.ConfigError as e:
        return None, "%s: invalid configuration: %s" % (fn, e)
    except (IOError, OSError) as errmsg:
        return None, "%s: %s" % (fn, errmsg)
    except ValueError as e:
        return None, "%s: cannot parse JSON: %s" % (fn, e)
    return rc, None


def main(argv=None):
    '''Command line entry point.

    argv    -- argument list without the program name, sys.argv[1:]
               when None

    Return the exit status.
    '''
    parser = createOptionParser()
    (opts, pargs) = parser.parse_args(argv)

    if len(pargs) != 2 or pargs[0] not in COMMANDS:
        parser.error("You must supply a command (%s) and CONFIG.json" %
                '|'.join(COMMANDS))
    command, cfgfile = pargs

    addStreamHandler()
    level = 'info'
    if opts.quiet:
        level = 'warning'
    if opts.verbose:
        level = 'debug'
    setVerbosity(level)

    rc, emsg = getConfigFromFile(cfgfile)
    if rc is None:
        print(emsg, file=sys.stderr)
        return EXIT_ERROR
    if command == 'check':
        print("%s: valid %s configuration" % (cfgfile, rc.mode))
        return EXIT_OK

    outdir = opts.outdir if opts.outdir is not None else rc.output_dir
    try:
        result = mfg_api.mfg_solve(rc)
    except ValueError as e:
        print("%s: %s" % (cfgfile, e), file=sys.stderr)
        return EXIT_ERROR
    result['step'] = rc.flow['step']
    try:
        writeOutputs(result, outdir)
    except (IOError, OSError) as errmsg:
        print("%s: %s" % (outdir, errmsg), file=sys.stderr)
        return EXIT_ERROR

    summary = result['summary']
    items = sorted(summary.items())
    print("\n".join("# %s = %s" % i for i in items))
    if not result['converged']:
        mlog.warning("iteration did not converge")
        return EXIT_NOT_CONVERGED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
