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


"""simplex -- Euclidean projection onto the probability simplex.

The projection of eta is (eta_i + xi)^+ with the scalar shift xi chosen
so that the entries sum to 1.  xi is found exactly by sorting.
"""

# module version
__id__ = "$Id$"

import numpy

from diffpy.mfgflow.core import SimplexVector, isSimplexRows


class ProjectionResult(object):
    '''Outcome of a simplex projection.

    projected   -- SimplexVector
    shift       -- the scalar xi
    active_set  -- boolean array, True where the entry was clamped to 0
    '''

    def __init__(self, projected, shift, active_set):
        self.projected = projected
        self.shift = shift
        self.active_set = active_set
        return

    def __repr__(self):
        return "ProjectionResult(%r, shift=%r)" % (self.projected,
                self.shift)

# End class ProjectionResult


def _shiftRows(eta):
    """Exact shifts xi for every row of a 2D array."""
    m, d = eta.shape
    srt = -numpy.sort(-eta, axis=1)
    css = numpy.cumsum(srt, axis=1) - 1.0
    ks = numpy.arange(1, d + 1)
    cond = srt - css / ks > 0
    # cond holds on a leading block of every row, the first entry always
    rho = d - 1 - numpy.argmax(cond[:, ::-1], axis=1)
    tau = css[numpy.arange(m), rho] / (rho + 1)
    return -tau


def project_simplex_rows(eta):
    """Project every row of a 2D array onto the simplex.

    eta     -- array of shape (m, d), finite entries

    Rows that already are probability vectors are returned unchanged with
    shift 0.  Return a tuple (projected, shifts) of arrays.
    """
    eta = numpy.array(eta, dtype=float)
    if eta.ndim != 2 or eta.shape[1] < 2:
        raise ValueError("projection needs rows of at least 2 entries")
    if not numpy.all(numpy.isfinite(eta)):
        raise ValueError("cannot project non-finite entries")
    shifts = numpy.zeros(eta.shape[0])
    todo = ~isSimplexRows(eta)
    if numpy.any(todo):
        sub = eta[todo]
        # shift in coordinates relative to the row maximum
        top = sub.max(axis=1)
        sub = sub - top[:, numpy.newaxis]
        xi = _shiftRows(sub)
        proj = sub + xi[:, numpy.newaxis]
        # exact +0 on the clamped entries
        proj[proj <= 0] = 0.0
        # the largest entry takes up the rounding defect of the mass
        rows = numpy.arange(proj.shape[0])
        j = numpy.argmax(proj, axis=1)
        proj[rows, j] = 0.0
        proj[rows, j] = 1.0 - proj.sum(axis=1)
        eta[todo] = proj
        shifts[todo] = xi - top
    return eta, shifts


def project_simplex(eta):
    """Euclidean projection of eta onto the probability simplex.

    eta     -- vector of d >= 2 finite reals

    Return ProjectionResult.  The input comes back unchanged when it is a
    valid probability vector.  Raise ValueError for non-finite input.
    """
    eta = numpy.asarray(eta, dtype=float)
    if eta.ndim != 1:
        raise ValueError("projection input must be a vector")
    proj, shifts = project_simplex_rows(eta[numpy.newaxis, :])
    x = proj[0]
    active = (x == 0)
    return ProjectionResult(SimplexVector(x), float(shifts[0]), active)

# End of file
