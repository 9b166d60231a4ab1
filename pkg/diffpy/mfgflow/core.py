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


"""core -- domain types and the model interface shared by all solvers.

States are numbered 1..d in every public function that takes a state
index.  Arrays are indexed from 0, so state i lives in column i - 1.
"""

# module version
__id__ = "$Id$"

import numpy

# tolerance on the total mass of a probability vector
MASS_TOL = 1e-12


def _checkedArray(entries, name):
    """Copy entries into a finite float vector, raise ValueError otherwise."""
    try:
        v = numpy.array(entries, dtype=float)
    except (TypeError, ValueError):
        emsg = "%s must be a vector of reals, got %r" % (name, entries)
        raise ValueError(emsg)
    if v.ndim != 1 or v.size < 1:
        emsg = "%s must be a non-empty 1D vector" % name
        raise ValueError(emsg)
    if not numpy.all(numpy.isfinite(v)):
        emsg = "%s has non-finite entries %r" % (name, v)
        raise ValueError(emsg)
    return v


def isSimplexRows(theta, tol=MASS_TOL):
    """Check that every row of theta is a probability vector.

    theta   -- array of shape (d,) or (m, d)
    tol     -- tolerance on the row sums

    Return a boolean array with one entry per row.
    """
    a = numpy.atleast_2d(theta)
    nonneg = numpy.all(a >= 0, axis=-1)
    mass = numpy.abs(a.sum(axis=-1) - 1.0) <= tol
    return nonneg & mass


def _checkState(i, d):
    """Convert 1-based state i to a column index, with range check."""
    if isinstance(i, bool) or int(i) != i:
        raise ValueError("state index must be an integer, got %r" % (i,))
    i = int(i)
    if not 1 <= i <= d:
        emsg = "state index %i out of range 1..%i" % (i, d)
        raise ValueError(emsg)
    return i - 1


class ValueVector(object):
    '''Value function u over d states.

    Instance attributes:

    entries     -- read-only float array of length d
    '''

    d = property(lambda self: len(self.entries),
            doc='Number of states.')

    def __init__(self, entries):
        '''Create ValueVector, entries must be finite reals.
        '''
        v = _checkedArray(entries, self._label)
        self._checkEntries(v)
        v.flags.writeable = False
        self.entries = v
        return

    _label = 'value vector'

    def _checkEntries(self, v):
        return

    def __array__(self, dtype=None, copy=None):
        return numpy.array(self.entries, dtype=dtype)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, idx):
        return self.entries[idx]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if not isinstance(other, ValueVector):
            return NotImplemented
        return (type(self) is type(other) and
                numpy.array_equal(self.entries, other.entries))

    def __ne__(self, other):
        rv = self.__eq__(other)
        return rv if rv is NotImplemented else not rv

    __hash__ = None

    def __repr__(self):
        return "%s(%r)" % (type(self).__name__, self.entries.tolist())

# End class ValueVector


class SimplexVector(ValueVector):
    '''Probability distribution theta over d states.

    Entries must be non-negative and sum to 1 within MASS_TOL.  Invalid
    entries are rejected, only the simplex module produces repaired
    vectors.
    '''

    _label = 'simplex vector'

    def _checkEntries(self, v):
        if numpy.any(v < 0):
            emsg = "simplex vector has negative entries %r" % (v.tolist(),)
            raise ValueError(emsg)
        defect = abs(v.sum() - 1.0)
        if defect > MASS_TOL:
            emsg = "simplex vector mass defect %g exceeds %g" % (
                    defect, MASS_TOL)
            raise ValueError(emsg)
        return

# End class SimplexVector


class TimeGrid(object):
    '''Uniform grid of N intervals over [0, T].

    Instance attributes:

    T       -- horizon, positive real
    N       -- number of intervals, integer >= 2
    dt      -- step T / N
    '''

    def __init__(self, T, N):
        if isinstance(N, bool) or int(N) != N or int(N) < 2:
            emsg = "grid needs an integer N >= 2, got %r" % (N,)
            raise ValueError(emsg)
        T = float(T)
        if not (numpy.isfinite(T) and T > 0):
            emsg = "grid horizon T must be positive, got %r" % (T,)
            raise ValueError(emsg)
        self.T = T
        self.N = int(N)
        self.dt = T / self.N
        return

    def time(self, n):
        """Time of node n."""
        return n * self.T / self.N

    @property
    def times(self):
        """Array of the N + 1 node times."""
        return numpy.arange(self.N + 1) * self.T / self.N

    def __eq__(self, other):
        if not isinstance(other, TimeGrid):
            return NotImplemented
        return self.T == other.T and self.N == other.N

    def __ne__(self, other):
        rv = self.__eq__(other)
        return rv if rv is NotImplemented else not rv

    def __hash__(self):
        return hash((self.T, self.N))

    def __repr__(self):
        return "TimeGrid(T=%r, N=%r)" % (self.T, self.N)

# End class TimeGrid


class TrajectoryPair(object):
    '''Time-discretized pair (theta_n, u_n), n = 0..N.

    Instance attributes:

    grid        -- TimeGrid
    theta       -- read-only array of shape (N + 1, d)
    u           -- read-only array of shape (N + 1, d)
    theta0      -- SimplexVector, pinned initial distribution
    uT          -- ValueVector, pinned terminal value
    check       -- False when the simplex rows were not validated, used
                   by the unconstrained iteration

    Raise ValueError when shapes disagree with the grid, the boundary
    slots differ from the boundary data, or a theta row is not a
    probability vector.
    '''

    d = property(lambda self: self.theta.shape[1], doc='Number of states.')
    N = property(lambda self: self.grid.N, doc='Number of intervals.')
    boundary = property(lambda self: (self.theta0, self.uT),
            doc='Tuple of (theta0, uT).')

    def __init__(self, grid, theta, u, theta0=None, uT=None, check=True):
        theta = numpy.array(theta, dtype=float)
        u = numpy.array(u, dtype=float)
        shape = (grid.N + 1,)
        if theta.ndim != 2 or theta.shape[:1] != shape:
            emsg = "theta must have shape (%i, d), got %r" % (
                    grid.N + 1, theta.shape)
            raise ValueError(emsg)
        if u.shape != theta.shape:
            emsg = "u shape %r differs from theta shape %r" % (
                    u.shape, theta.shape)
            raise ValueError(emsg)
        if theta.shape[1] < 2:
            raise ValueError("trajectory needs d >= 2 states")
        if not (numpy.all(numpy.isfinite(theta)) and
                numpy.all(numpy.isfinite(u))):
            raise ValueError("trajectory has non-finite entries")
        theta0 = SimplexVector(theta[0] if theta0 is None else theta0)
        uT = ValueVector(u[-1] if uT is None else uT)
        if not numpy.array_equal(theta[0], theta0.entries):
            raise ValueError("theta[0] differs from the initial data")
        if not numpy.array_equal(u[-1], uT.entries):
            raise ValueError("u[N] differs from the terminal data")
        if check:
            bad = numpy.flatnonzero(~isSimplexRows(theta))
            if bad.size:
                emsg = "theta rows %r are not probability vectors" % (
                        bad.tolist()[:5],)
                raise ValueError(emsg)
        theta.flags.writeable = False
        u.flags.writeable = False
        self.grid = grid
        self.theta = theta
        self.u = u
        self.theta0 = theta0
        self.uT = uT
        self.check = bool(check)
        return

    def replace(self, theta=None, u=None, check=None):
        """New TrajectoryPair with the same grid and boundary data.

        theta, u    -- replacement arrays, None keeps the current ones
        check       -- validate simplex rows, defaults to self.check
        """
        theta = self.theta if theta is None else theta
        u = self.u if u is None else u
        check = self.check if check is None else check
        return TrajectoryPair(self.grid, theta, u, self.theta0, self.uT,
                check=check)

    def thetaAt(self, n):
        """SimplexVector at node n."""
        return SimplexVector(self.theta[n])

    def uAt(self, n):
        """ValueVector at node n."""
        return ValueVector(self.u[n])

    @property
    def isFeasible(self):
        """True when every theta row is a probability vector."""
        return bool(numpy.all(isSimplexRows(self.theta)))

    def sameBoundary(self, other):
        """True when other shares grid and boundary data."""
        return (self.grid == other.grid and
                self.theta0 == other.theta0 and self.uT == other.uT)

    def __repr__(self):
        return "TrajectoryPair(%r, d=%i)" % (self.grid, self.d)

# End class TrajectoryPair


def _rowsByLoop(func, u, theta):
    """Evaluate func(u_row, theta_row) over the leading axis."""
    u = numpy.asarray(u, dtype=float)
    theta = numpy.asarray(theta, dtype=float)
    if u.ndim == 1:
        return numpy.asarray(func(u, theta), dtype=float)
    return numpy.array([func(ur, tr) for ur, tr in zip(u, theta)])


class ModelSpec(object):
    '''A finite-state MFG instance.

    Class attributes are not used; everything is per instance.

    Instance attributes:

    d           -- number of states, at least 2
    hamiltonian -- callable h(z, theta, i) -> real, with z = Delta_i u and
                   i in 1..d
    rates       -- callable alpha(z, theta, i) -> d reals, row of the
                   switching generator out of state i
    potential   -- PotentialStructure or None
    name        -- short description

    Vectorized hooks (optional):

    hvector     -- callable (u, theta) -> array whose last axis holds
                   h(Delta_i u, theta, i) for i = 1..d.  u and theta have
                   shape (d,) or (m, d).
    drift       -- callable (u, theta) -> Kolmogorov drift with the same
                   shape convention.

    The generic loops over hamiltonian and rates are used when the hooks
    are not given.
    '''

    def __init__(self, d, hamiltonian, rates, potential=None,
            hvector=None, drift=None, name='custom'):
        if isinstance(d, bool) or int(d) != d or int(d) < 2:
            raise ValueError("model needs an integer d >= 2, got %r" % (d,))
        self.d = int(d)
        self.hamiltonian = hamiltonian
        self.rates = rates
        self.potential = potential
        self.name = name
        self._hvector = hvector
        self._drift = drift
        return

    def hvector(self, u, theta):
        """Hamiltonian values h(Delta_i u, theta, i) over all states."""
        if self._hvector is not None:
            return self._hvector(u, theta)
        return _rowsByLoop(self._hloop, u, theta)

    def drift(self, u, theta):
        """Kolmogorov drift, see kolmogorov_drift."""
        if self._drift is not None:
            return self._drift(u, theta)
        return _rowsByLoop(self._driftloop, u, theta)

    def _hloop(self, u, theta):
        d = self.d
        return [self.hamiltonian(difference(u, i), theta, i)
                for i in range(1, d + 1)]

    def _driftloop(self, u, theta):
        rv = numpy.zeros(self.d)
        for j in range(1, self.d + 1):
            row = numpy.asarray(self.rates(difference(u, j), theta, j),
                    dtype=float)
            rv += theta[j - 1] * row
        return rv

    def __repr__(self):
        return "ModelSpec(%r, d=%i)" % (self.name, self.d)

# End class ModelSpec


def difference(u, i):
    """Difference operator Delta_i u.

    u   -- ValueVector or vector of d reals
    i   -- state in 1..d

    Return float array with component j equal to u[j] - u[i].  Component
    i is exactly 0.  Raise ValueError for an out-of-range state.
    """
    u = numpy.asarray(u, dtype=float)
    k = _checkState(i, u.shape[-1])
    rv = u - u[..., k:k + 1]
    rv[..., k] = 0.0
    return rv


def kolmogorov_drift(model, u, theta):
    """Right-hand side of the Kolmogorov equation.

    model   -- ModelSpec
    u       -- ValueVector or vector of d reals
    theta   -- SimplexVector or valid probability vector

    Component i is sum_j theta[j] * rates(Delta_j u, theta, j)[i].
    """
    u = ValueVector(u).entries
    theta = SimplexVector(theta).entries
    if len(u) != model.d or len(theta) != model.d:
        emsg = "model has d=%i, got u of %i and theta of %i entries" % (
                model.d, len(u), len(theta))
        raise ValueError(emsg)
    return numpy.asarray(model.drift(u, theta), dtype=float)

# End of file
