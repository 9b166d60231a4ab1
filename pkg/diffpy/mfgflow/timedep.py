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


"""timedep -- deformation iteration for time-dependent finite-state MFGs.

The trajectory w = (theta_n, u_n), n = 0..N, is deformed along the H1
representations of the discrete Kolmogorov and Hamilton-Jacobi residuals,

    u_n     <- u_n + upsilon phi_n,             n = 0..N-1
    theta_n <- P(theta_n + upsilon psi_n),      n = 1..N

where phi solves the TERMINAL_ZERO and psi the INITIAL_ZERO screened
Poisson problem of elliptic1d.  theta_0 and u_N stay pinned.  The free
end nodes u_0 and theta_N are set after every step from the two discrete
equations in which they appear.
"""

# module version
__id__ = "$Id$"

import numpy

from diffpy.mfgflow.core import TimeGrid, TrajectoryPair, SimplexVector
from diffpy.mfgflow.core import ValueVector
from diffpy.mfgflow.elliptic1d import solve_elliptic_vector
from diffpy.mfgflow.elliptic1d import TERMINAL_ZERO, INITIAL_ZERO
from diffpy.mfgflow.simplex import project_simplex_rows
from diffpy.mfgflow.report import SolveReport, TIMEDEP_COLUMNS
from diffpy.mfgflow.log import mlog

PROJECTIONS = ('simplex', 'affine')


class DiscreteResidual(object):
    '''Rows of the discrete operator A^N, n = 0..N-1.

    theta_rows  -- array (N, d), -dtheta_n/dt + drift(u_{n+1}, theta_{n+1})
                   + k_n
    u_rows      -- array (N, d), -du_n/dt - h(u_n, theta_n)
    k           -- array (N,), chosen so that every theta row sums to 0
    '''

    def __init__(self, theta_rows, u_rows, k):
        self.theta_rows = theta_rows
        self.u_rows = u_rows
        self.k = k
        return

    def maxnorm(self):
        """Largest absolute entry over both row sets."""
        return max(numpy.max(numpy.abs(self.theta_rows)),
                numpy.max(numpy.abs(self.u_rows)))

# End class DiscreteResidual


class DeformationField(object):
    '''Pair of H1 representations (phi, psi), arrays of shape (N + 1, d).

    phi[N] = 0 and phi[1] = phi[0], psi[0] = 0 and psi[N] = psi[N-1].
    A ValueError is raised when these identities fail.
    '''

    def __init__(self, phi, psi):
        phi = numpy.asarray(phi, dtype=float)
        psi = numpy.asarray(psi, dtype=float)
        if phi.shape != psi.shape or phi.ndim != 2:
            raise ValueError("phi and psi need equal (N + 1, d) shapes")
        if numpy.any(phi[-1] != 0) or numpy.any(phi[1] != phi[0]):
            raise ValueError("phi violates phi[N] = 0, phi[1] = phi[0]")
        if numpy.any(psi[0] != 0) or numpy.any(psi[-1] != psi[-2]):
            raise ValueError("psi violates psi[0] = 0, psi[N] = psi[N-1]")
        self.phi = phi
        self.psi = psi
        return

    def maxnorm(self):
        return max(numpy.max(numpy.abs(self.phi)),
                numpy.max(numpy.abs(self.psi)))

# End class DeformationField


class TrajectoryDelta(object):
    '''Unconstrained pair of (N + 1, d) arrays on a grid.

    Differences of trajectories and deformation fields are represented
    this way for the grid inner products.

    grid        -- TimeGrid
    theta, u    -- float arrays of shape (N + 1, d)
    '''

    def __init__(self, grid, theta, u):
        theta = numpy.asarray(theta, dtype=float)
        u = numpy.asarray(u, dtype=float)
        shape = (grid.N + 1,)
        if theta.shape[:1] != shape or u.shape != theta.shape:
            emsg = "delta arrays need shape (%i, d), got %r and %r" % (
                    grid.N + 1, theta.shape, u.shape)
            raise ValueError(emsg)
        self.grid = grid
        self.theta = theta
        self.u = u
        return

    def __add__(self, other):
        _checkGrids(self, other)
        return TrajectoryDelta(self.grid, self.theta + other.theta,
                self.u + other.u)

    def __sub__(self, other):
        _checkGrids(self, other)
        return TrajectoryDelta(self.grid, self.theta - other.theta,
                self.u - other.u)

    def __mul__(self, c):
        return TrajectoryDelta(self.grid, c * self.theta, c * self.u)

    __rmul__ = __mul__

# End class TrajectoryDelta


class TdConfig(object):
    '''Settings of iterate_timedep.

    step            -- pseudo-time step upsilon > 0, default 0.1
    max_iters       -- maximum number of iterations, default 30000
    fixpoint_tol    -- stop when the H1_N norm of the projected deformation
                       field drops to this value, default 2e-4
    record_every    -- record every n-th iteration, default 1
    reference       -- optional TrajectoryPair for distance traces
    projection      -- 'simplex' (per-slice P) or 'affine' (orthogonal
                       projection onto sum(theta) = 1 only)
    '''

    parnames = ('step', 'max_iters', 'fixpoint_tol', 'record_every',
            'reference', 'projection')

    def __init__(self, **kwargs):
        self.step = 0.1
        self.max_iters = 30000
        self.fixpoint_tol = 2e-4
        self.record_every = 1
        self.reference = None
        self.projection = 'simplex'
        for k, v in kwargs.items():
            if k not in self.parnames:
                emsg = "TdConfig has no parameter %r" % (k,)
                raise ValueError(emsg)
            setattr(self, k, v)
        self.checkConfig()
        return

    def checkConfig(self):
        """Raise ValueError for invalid settings."""
        if not (numpy.isfinite(self.step) and self.step > 0):
            raise ValueError("step must be positive, got %r" % (self.step,))
        if int(self.max_iters) != self.max_iters or self.max_iters < 0:
            raise ValueError("max_iters must be a non-negative integer")
        if int(self.record_every) != self.record_every or \
                self.record_every < 1:
            raise ValueError("record_every must be a positive integer")
        if not self.fixpoint_tol >= 0:
            raise ValueError("fixpoint_tol must be non-negative")
        if self.projection not in PROJECTIONS:
            emsg = "unknown projection %r, use one of %r" % (
                    self.projection, PROJECTIONS)
            raise ValueError(emsg)
        if self.reference is not None and \
                not isinstance(self.reference, TrajectoryPair):
            raise ValueError("reference must be a TrajectoryPair")
        return

# End class TdConfig


def _checkGrids(a, b):
    if a.grid != b.grid:
        emsg = "grid mismatch: %r and %r" % (a.grid, b.grid)
        raise ValueError(emsg)
    if numpy.shape(a.theta) != numpy.shape(b.theta):
        raise ValueError("state dimensions differ")
    return


def _checkModel(model, traj):
    if traj.d != model.d:
        emsg = "model has d=%i, trajectory has d=%i" % (model.d, traj.d)
        raise ValueError(emsg)
    return


def trajectory_delta(a, b):
    """TrajectoryDelta a - b of two trajectories on the same grid."""
    _checkGrids(a, b)
    return TrajectoryDelta(a.grid, a.theta - b.theta, a.u - b.u)


def discrete_operator(model, traj):
    """Assemble the rows of A^N for a trajectory.

    Return DiscreteResidual.  k_n is minus the mean of the remaining
    theta row entries.
    """
    _checkModel(model, traj)
    dt = traj.grid.dt
    theta, u = traj.theta, traj.u
    trows = -numpy.diff(theta, axis=0) / dt + model.drift(u[1:], theta[1:])
    k = -trows.mean(axis=1)
    trows = trows + k[:, numpy.newaxis]
    urows = -numpy.diff(u, axis=0) / dt - model.hvector(u[:-1], theta[:-1])
    return DiscreteResidual(trows, urows, k)


def _phiRhs(model, traj):
    dt = traj.grid.dt
    theta, u = traj.theta, traj.u
    dtheta = (theta[1:-1] - theta[:-2]) / dt
    return -dtheta + model.drift(u[1:-1], theta[1:-1])


def _psiRhs(model, traj):
    dt = traj.grid.dt
    theta, u = traj.theta, traj.u
    du = (u[2:] - u[1:-1]) / dt
    return -du - model.hvector(u[1:-1], theta[1:-1])


def representation_phi(model, traj):
    """H1 representation of the Kolmogorov residual.

    Solves the TERMINAL_ZERO problem with right-hand side
    -(theta_n - theta_{n-1})/dt + drift(u_n, theta_n), n = 1..N-1.

    Return array of shape (N + 1, d).
    """
    _checkModel(model, traj)
    return solve_elliptic_vector(traj.grid, _phiRhs(model, traj),
            TERMINAL_ZERO)


def representation_psi(model, traj):
    """H1 representation of the Hamilton-Jacobi residual.

    Solves the INITIAL_ZERO problem with right-hand side
    -(u_{n+1} - u_n)/dt - h(u_n, theta_n), n = 1..N-1.

    Return array of shape (N + 1, d).
    """
    _checkModel(model, traj)
    return solve_elliptic_vector(traj.grid, _psiRhs(model, traj),
            INITIAL_ZERO)


def deformation_field(model, traj):
    """DeformationField (phi, psi) of a trajectory."""
    return DeformationField(representation_phi(model, traj),
            representation_psi(model, traj))


def _projectAffine(eta):
    d = eta.shape[1]
    return eta - ((eta.sum(axis=1) - 1.0) / d)[:, numpy.newaxis]


def _advance(model, traj, upsilon, projection):
    """One deformation step, return (new trajectory, field)."""
    field = deformation_field(model, traj)
    u = traj.u.copy()
    u[:-1] += upsilon * field.phi[:-1]
    theta = traj.theta.copy()
    eta = theta[1:] + upsilon * field.psi[1:]
    if projection == 'simplex':
        theta[1:] = project_simplex_rows(eta)[0]
    else:
        theta[1:] = _projectAffine(eta)
    newtraj = traj.replace(theta=theta, u=u,
            check=(projection == 'simplex'))
    return newtraj, field


def close_end_nodes(model, traj, projection='simplex', sweeps=8):
    """Solve the two discrete equations that only involve free end nodes.

    u_0 enters only the Hamilton-Jacobi row 0 and theta_N only the
    Kolmogorov row N-1, so the deformation field moves them rigidly with
    their neighbors.  Both rows are solved here by fixed-point sweeps,

        u_0     = u_1 + dt h(u_0, theta_0)
        theta_N = P(theta_{N-1} + dt drift(u_N, theta_N))

    with P the simplex or the affine projection.  The interior nodes and
    the boundary data are not changed.

    Return TrajectoryPair.
    """
    _checkModel(model, traj)
    if projection not in PROJECTIONS:
        raise ValueError("unknown projection %r" % (projection,))
    dt = traj.grid.dt
    theta = traj.theta.copy()
    u = traj.u.copy()
    for i in range(sweeps):
        u[0] = u[1] + dt * model.hvector(u[0], theta[0])
        eta = theta[-2:-1] + dt * model.drift(u[-1:], theta[-1:])
        if projection == 'simplex':
            theta[-1] = project_simplex_rows(eta)[0][0]
        else:
            theta[-1] = _projectAffine(eta)[0]
    return traj.replace(theta=theta, u=u, check=(projection == 'simplex'))


def deformation_step(model, traj, upsilon, projection='simplex'):
    """One projected deformation step of the trajectory.

    model       -- ModelSpec
    traj        -- TrajectoryPair
    upsilon     -- pseudo-time step, positive
    projection  -- 'simplex' or 'affine'

    Return TrajectoryPair with the same boundary data.
    """
    if not upsilon > 0:
        raise ValueError("deformation step needs upsilon > 0, got %r" %
                (upsilon,))
    if projection not in PROJECTIONS:
        raise ValueError("unknown projection %r" % (projection,))
    return _advance(model, traj, upsilon, projection)[0]


def recover_value(model, traj):
    """Value function with the exact discrete Hamilton-Jacobi increments.

    Backward recursion ubar_N = uT, ubar_n = ubar_{n+1} + dt h(u_n,
    theta_n) with h evaluated at the iterate.  The state gaps of ubar
    match those of u whenever the Hamilton-Jacobi residual of u is
    constant across states.

    Return array of shape (N + 1, d).
    """
    _checkModel(model, traj)
    dt = traj.grid.dt
    h = model.hvector(traj.u[:-1], traj.theta[:-1])
    tail = numpy.cumsum(h[::-1], axis=0)[::-1]
    rv = numpy.empty_like(traj.u)
    rv[-1] = traj.uT.entries
    rv[:-1] = traj.uT.entries + dt * tail
    return rv


def h1n_inner(a, b):
    """Unweighted discrete H1_N inner product.

    a, b    -- TrajectoryDelta (or TrajectoryPair) on the same grid

    Return sum over n = 0..N-1 of eta_n . eta'_n + deta_n . deta'_n plus
    the same terms for the u arrays, with deta_n = eta_{n+1} - eta_n.
    """
    _checkGrids(a, b)
    rv = 0.0
    for x, y in ((a.theta, b.theta), (a.u, b.u)):
        rv += numpy.sum(x[:-1] * y[:-1])
        rv += numpy.sum(numpy.diff(x, axis=0) * numpy.diff(y, axis=0))
    return float(rv)


def h1n_riesz_inner(a, b):
    """Grid inner product in which phi and psi are Riesz representations.

    Return sum_{n=1}^{N-1} dt (eta_n . eta'_n) +
    sum_{n=0}^{N-1} (deta_n . deta'_n) / dt, over both arrays.
    """
    _checkGrids(a, b)
    dt = a.grid.dt
    rv = 0.0
    for x, y in ((a.theta, b.theta), (a.u, b.u)):
        rv += dt * numpy.sum(x[1:-1] * y[1:-1])
        rv += numpy.sum(numpy.diff(x, axis=0) * numpy.diff(y, axis=0)) / dt
    return float(rv)


def h1_weighted_distance(x, y):
    """Squared dt-weighted H1 distance of two trajectories.

    Sum over n = 0..N-1 and states of dt (e_n**2 + (de_n / dt)**2) for the
    u and theta differences e.
    """
    _checkGrids(x, y)
    dt = x.grid.dt
    rv = 0.0
    for e in (x.u - y.u, x.theta - y.theta):
        rv += dt * numpy.sum(e[:-1] ** 2)
        rv += dt * numpy.sum((numpy.diff(e, axis=0) / dt) ** 2)
    return float(rv)


def qa_monotone_bracket(model, trajA, trajB):
    """H1 bracket of the deformation fields of two trajectories.

    Pairs psi with the theta difference and phi with the u difference in
    h1n_riesz_inner.  Non-positive for a monotone model.
    Raise ValueError when the boundary data differ.
    """
    if not trajA.sameBoundary(trajB):
        raise ValueError("trajectories do not share boundary data")
    fa = deformation_field(model, trajA)
    fb = deformation_field(model, trajB)
    grid = trajA.grid
    dfield = TrajectoryDelta(grid, fa.psi - fb.psi, fa.phi - fb.phi)
    return h1n_riesz_inner(dfield, trajectory_delta(trajA, trajB))


def discrete_bracket(model, trajA, trajB):
    """dt-weighted pairing of A^N differences with state differences.

    theta rows n pair with u_{n+1} differences, u rows n with theta_n
    differences.  Non-positive for a monotone model.
    """
    if not trajA.sameBoundary(trajB):
        raise ValueError("trajectories do not share boundary data")
    ra = discrete_operator(model, trajA)
    rb = discrete_operator(model, trajB)
    du = trajA.u - trajB.u
    dtheta = trajA.theta - trajB.theta
    rv = numpy.sum((ra.theta_rows - rb.theta_rows) * du[1:])
    rv += numpy.sum((ra.u_rows - rb.u_rows) * dtheta[:-1])
    return float(trajA.grid.dt * rv)


def hamiltonian_trace(model, traj):
    """Array of H(u_n, theta_n), n = 0..N, for a potential model."""
    if model.potential is None:
        raise ValueError("model has no potential structure")
    return numpy.asarray(model.potential.Hrows(traj.u, traj.theta),
            dtype=float)


def initial_trajectory(grid, theta0, uT, u0=None, thetaT=None,
        perturbation=0.0, seed=None):
    '''Straight-line trajectory between boundary data and guesses.

    grid            -- TimeGrid
    theta0          -- pinned initial distribution
    uT              -- pinned terminal value
    u0              -- guess for u at t = 0, default uT
    thetaT          -- guess for theta at t = T, default theta0
    perturbation    -- amplitude of a seeded perturbation sin(pi t / T)
                       added to the interior nodes
    seed            -- seed of numpy.random.RandomState

    Return TrajectoryPair.
    '''
    theta0 = SimplexVector(theta0)
    uT = ValueVector(uT)
    d = len(theta0)
    u0 = uT if u0 is None else ValueVector(u0)
    thetaT = theta0 if thetaT is None else SimplexVector(thetaT)
    if not (len(uT) == len(u0) == len(thetaT) == d):
        raise ValueError("boundary data and guesses differ in dimension")
    s = (numpy.arange(grid.N + 1) / float(grid.N))[:, numpy.newaxis]
    theta = (1 - s) * theta0.entries + s * thetaT.entries
    u = (1 - s) * u0.entries + s * uT.entries
    if perturbation:
        rs = numpy.random.RandomState(seed)
        bump = numpy.sin(numpy.pi * s)
        du = rs.uniform(-1, 1, d)
        dth = rs.uniform(-1, 1, d)
        dth -= dth.mean()
        u = u + perturbation * bump * du
        theta = theta + perturbation * bump * dth
        theta[1:] = project_simplex_rows(theta[1:])[0]
    theta[0] = theta0.entries
    u[-1] = uT.entries
    # straight lines may miss the unit mass by rounding
    theta[1:] = project_simplex_rows(theta[1:])[0]
    return TrajectoryPair(grid, theta, u, theta0, uT)


def analytic_paradigm_trajectory(grid, uT=(0.0, 0.0)):
    """Closed-form solution of the paradigm-shift model.

    theta = (1/2, 1/2) at every node and u^i(t) = (T - t)/2 + uT^i.
    Raise ValueError unless uT has 2 equal components.
    """
    uT = ValueVector(uT)
    if len(uT) != 2 or uT[0] != uT[1]:
        raise ValueError("analytic solution needs uT with 2 equal entries")
    N = grid.N
    theta = numpy.full((N + 1, 2), 0.5)
    tau = (grid.T - grid.times)[:, numpy.newaxis] / 2.0
    u = tau + uT.entries
    u[-1] = uT.entries
    return TrajectoryPair(grid, theta, u, [0.5, 0.5], uT)


def _fieldNorm(field):
    return numpy.sqrt(max(h1n_inner(field, field), 0.0))


def iterate_timedep(model, init, config=None, sink=None):
    """Run the projected deformation iteration.

    model   -- ModelSpec
    init    -- TrajectoryPair with the boundary data
    config  -- TdConfig, default settings when None
    sink    -- optional callable receiving each trace record

    The free end nodes u_0 and theta_N of the initial trajectory and of
    every iterate are set by close_end_nodes.  The stopping quantity is
    the H1_N norm of the projected field (phi, (theta_new - theta) /
    upsilon).  The norm with the raw psi is recorded as
    raw_deformation_norm.

    Return tuple (TrajectoryPair, SolveReport).
    """
    if config is None:
        config = TdConfig()
    config.checkConfig()
    _checkModel(model, init)
    upsilon = float(config.step)
    ref = config.reference
    if ref is not None:
        _checkGrids(ref, init)
    grid = init.grid
    potential = model.potential is not None
    report = SolveReport(TIMEDEP_COLUMNS, sink=sink)
    mlog.info("deformation iteration on %r, upsilon=%g, projection=%s",
            grid, upsilon, config.projection)

    def record(it, traj, norm, rawnorm):
        vals = dict(iter=it, deformation_norm=norm,
                raw_deformation_norm=rawnorm, min_theta=traj.theta.min())
        if ref is not None:
            vals['h1_distance'] = h1_weighted_distance(traj, ref)
            rec = traj.replace(u=recover_value(model, traj), check=False)
            vals['h1_distance_recovered'] = h1_weighted_distance(rec, ref)
        if potential:
            H = hamiltonian_trace(model, traj)
            vals['hamiltonian_mean'] = H.mean()
            vals['hamiltonian_std'] = H.std()
        report.append(**vals)
        mlog.debug("iteration %i deformation norm %g", it, norm)
        return

    traj = close_end_nodes(model, init, config.projection)
    converged = False
    iterations = 0
    while True:
        newtraj, field = _advance(model, traj, upsilon, config.projection)
        newtraj = close_end_nodes(model, newtraj, config.projection)
        projected = TrajectoryDelta(grid,
                (newtraj.theta - traj.theta) / upsilon, field.phi)
        norm = _fieldNorm(projected)
        rawnorm = _fieldNorm(TrajectoryDelta(grid, field.psi, field.phi))
        if iterations % config.record_every == 0:
            record(iterations, traj, norm, rawnorm)
        if norm <= config.fixpoint_tol:
            converged = True
            break
        if iterations >= config.max_iters:
            break
        traj = newtraj
        iterations += 1
    if report.rows and report.rows[-1][0] != iterations:
        record(iterations, traj, norm, rawnorm)
    report.converged = converged
    report.iterations = iterations
    report.final_residual = norm
    if converged:
        mlog.info("converged after %i iterations", iterations)
    else:
        mlog.warning("no convergence after %i iterations, "
                "deformation norm %g", iterations, norm)
    return traj, report

# End of file
