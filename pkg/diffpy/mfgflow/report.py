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


"""SolveReport -- per-iteration diagnostics of an iterative solver.
"""

# module version
__id__ = "$Id$"

import numpy

# columns of the time-dependent trace, in output order
TIMEDEP_COLUMNS = ('iter', 'deformation_norm', 'h1_distance',
        'hamiltonian_mean', 'hamiltonian_std', 'min_theta',
        'raw_deformation_norm', 'h1_distance_recovered')

# leading columns of the stationary trace, per-state columns follow
STATIONARY_COLUMNS = ('iter', 'residual', 'distance', 'k', 'min_theta')


def stationaryColumns(d):
    """Stationary trace columns for a model with d states."""
    percol = ['theta_%i' % i for i in range(1, d + 1)]
    percol += ['u_%i' % i for i in range(1, d + 1)]
    return STATIONARY_COLUMNS + tuple(percol)


class SolveReport(object):
    '''Table of diagnostics, one record per recorded iteration.

    Missing values are stored as nan.

    Instance attributes:

    columns     -- tuple of column names
    rows        -- list of tuples of floats
    sink        -- optional callable receiving every record as a dict
    converged   -- flag set by the solver
    iterations  -- number of iterations performed
    final_residual -- stopping quantity at exit
    '''

    def __init__(self, columns, sink=None):
        self.columns = tuple(columns)
        self.rows = []
        self.sink = sink
        self.converged = False
        self.iterations = 0
        self.final_residual = numpy.nan
        return

    def append(self, **values):
        '''Add a record.

        values  -- column values by name, unknown names raise ValueError

        No return value.
        '''
        unknown = set(values) - set(self.columns)
        if unknown:
            emsg = "unknown report columns %r" % sorted(unknown)
            raise ValueError(emsg)
        row = tuple(float(values.get(c, numpy.nan)) for c in self.columns)
        self.rows.append(row)
        if self.sink is not None:
            self.sink(dict(zip(self.columns, row)))
        return

    def column(self, name):
        """Array with the values of a column."""
        if name not in self.columns:
            raise ValueError("no column %r in report" % (name,))
        k = self.columns.index(name)
        return numpy.array([r[k] for r in self.rows])

    def asArray(self):
        """2D float array, one row per record."""
        return numpy.array(self.rows, dtype=float).reshape(
                len(self.rows), len(self.columns))

    @property
    def last(self):
        """Dictionary of the last record, empty when nothing recorded."""
        if not self.rows:
            return {}
        return dict(zip(self.columns, self.rows[-1]))

    def __len__(self):
        return len(self.rows)

# End class SolveReport

# End of file
