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


"""elliptic1d -- discrete screened Poisson problems on the time grid.

Solve -(x[n+1] - 2 x[n] + x[n-1]) / dt**2 + x[n] = b[n] for n = 1..N-1
with one of two boundary sets:

TERMINAL_ZERO   -- x[N] = 0 and x[1] = x[0]
INITIAL_ZERO    -- x[0] = 0 and x[N] = x[N-1]

The copy conditions are folded into the first or last interior row, so
the interior system is symmetric positive definite and tridiagonal.  Its
banded Cholesky factor depends only on (N, dt, kind) and is cached.
"""

# module version
__id__ = "$Id$"

import functools

import numpy
from scipy.linalg import cholesky_banded, cho_solve_banded

from diffpy.mfgflow.core import TimeGrid

TERMINAL_ZERO = 'TerminalZero'
INITIAL_ZERO = 'InitialZero'
BC_KINDS = (TERMINAL_ZERO, INITIAL_ZERO)


def _checkKind(bc_kind):
    if bc_kind not in BC_KINDS:
        emsg = "unknown boundary kind %r, use one of %r" % (bc_kind,
                BC_KINDS)
        raise ValueError(emsg)
    return


def banded_operator(N, dt, bc_kind):
    """Upper banded storage of the interior matrix.

    Return array of shape (2, N - 1): row 0 holds the superdiagonal
    (first entry unused), row 1 the diagonal.
    """
    _checkKind(bc_kind)
    if N < 2:
        raise ValueError("elliptic problem needs N >= 2, got %r" % (N,))
    m = N - 1
    c = 1.0 / dt ** 2
    ab = numpy.zeros((2, m))
    ab[0, 1:] = -c
    ab[1, :] = 2 * c + 1
    if bc_kind == TERMINAL_ZERO:
        ab[1, 0] = c + 1
    else:
        ab[1, -1] = c + 1
    return ab


@functools.lru_cache(maxsize=32)
def _factor(N, dt, bc_kind):
    cb = cholesky_banded(banded_operator(N, dt, bc_kind), lower=False)
    cb.flags.writeable = False
    return cb


class EllipticProblem(object):
    '''Screened Poisson problem on a TimeGrid.

    grid        -- TimeGrid
    rhs         -- right-hand side at the interior nodes 1..N-1, shape
                   (N - 1,) or (N - 1, d)
    bc_kind     -- TERMINAL_ZERO or INITIAL_ZERO
    '''

    def __init__(self, grid, rhs, bc_kind):
        _checkKind(bc_kind)
        rhs = numpy.asarray(rhs, dtype=float)
        if rhs.ndim not in (1, 2) or rhs.shape[0] != grid.N - 1:
            emsg = "rhs needs %i interior rows, got shape %r" % (
                    grid.N - 1, rhs.shape)
            raise ValueError(emsg)
        self.grid = grid
        self.rhs = rhs
        self.bc_kind = bc_kind
        return

    def solve(self):
        """Alias for solve_elliptic(self)."""
        return solve_elliptic(self)

# End class EllipticProblem


def solve_elliptic(problem):
    """Solve an EllipticProblem.

    Return array of N + 1 node values (with a trailing axis when the rhs
    has one) satisfying the boundary identities exactly.
    """
    grid = problem.grid
    N = grid.N
    cb = _factor(N, grid.dt, problem.bc_kind)
    x = numpy.empty((N + 1,) + problem.rhs.shape[1:])
    x[1:N] = cho_solve_banded((cb, False), problem.rhs,
            check_finite=False)
    if problem.bc_kind == TERMINAL_ZERO:
        x[N] = 0.0
        x[0] = x[1]
    else:
        x[0] = 0.0
        x[N] = x[N - 1]
    return x


def solve_elliptic_vector(grid, rhs, bc_kind):
    """Apply solve_elliptic to every state coordinate.

    grid    -- TimeGrid
    rhs     -- array of shape (N - 1, d)

    Return array of shape (N + 1, d).  Coordinates do not interact.
    """
    if not isinstance(grid, TimeGrid):
        raise ValueError("grid must be a TimeGrid")
    rhs = numpy.asarray(rhs, dtype=float)
    if rhs.ndim != 2:
        raise ValueError("vector rhs must have shape (N - 1, d)")
    return solve_elliptic(EllipticProblem(grid, rhs, bc_kind))

# End of file
