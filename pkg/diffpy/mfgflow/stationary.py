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


"""stationary -- monotone flow solver for stationary finite-state MFGs.

The operator A(theta, u) = (h(Delta_i u, theta, i), -drift(u, theta)) is
monotone.  The solver iterates the Euler map E_mu(w) = w - mu A(w)
followed by the projection P of theta onto the simplex.  A fixed point
(theta, u) of P E_mu with shift xi solves the stationary problem with
k = xi / mu.
"""

# module version
__id__ = "$Id$"

import numpy

from diffpy.mfgflow.core import SimplexVector, ValueVector, isSimplexRows
from diffpy.mfgflow.simplex import project_simplex, project_simplex_rows
from diffpy.mfgflow.report import SolveReport, stationaryColumns
from diffpy.mfgflow.log import mlog

# occupied states have more mass than this
OCCUPIED_TOL = 1e-10

SCHEMES = ('projected', 'euler', 'flow')


class StationaryState(object):
    '''Pair (theta, u) of a stationary problem.

    theta   -- SimplexVector
    u       -- ValueVector
    '''

    def __init__(self, theta, u):
        self.theta = theta if isinstance(theta, SimplexVector) \
                else SimplexVector(theta)
        self.u = u if isinstance(u, ValueVector) else ValueVector(u)
        if len(self.theta) != len(self.u):
            emsg = "theta has %i states, u has %i" % (len(self.theta),
                    len(self.u))
            raise ValueError(emsg)
        return

    def arrays(self):
        """Tuple of float arrays (theta, u)."""
        return numpy.array(self.theta.entries), numpy.array(self.u.entries)

    def __repr__(self):
        return "StationaryState(%r, %r)" % (self.theta.entries.tolist(),
                self.u.entries.tolist())

# End class StationaryState


class StationaryCandidate(object):
    '''Result of an Euler step.  theta may leave the simplex.

    theta, u    -- float arrays
    '''

    def __init__(self, theta, u):
        self.theta = numpy.asarray(theta, dtype=float)
        self.u = numpy.asarray(u, dtype=float)
        return

    @property
    def isFeasible(self):
        return bool(isSimplexRows(self.theta)[0])

    def toState(self):
        """StationaryState, raises ValueError when theta is infeasible."""
        return StationaryState(self.theta, self.u)

# End class StationaryCandidate


class StationaryConfig(object):
    '''Settings of iterate_stationary.

    step            -- Euler step mu > 0, default 8/300
    max_iters       -- maximum number of iterations, default 300
    residual_tol    -- stopping threshold on the fixed-point residual,
                       default 1e-9
    record_every    -- record every n-th iteration, default 1
    scheme          -- 'projected' (P E_mu), 'euler' (raw E_mu) or 'flow'
                       (Euler step of the mass-preserving flow), default
                       'projected'
    reference       -- optional StationaryState for distance traces
    '''

    parnames = ('step', 'max_iters', 'residual_tol', 'record_every',
            'scheme', 'reference')

    def __init__(self, **kwargs):
        self.step = 8.0 / 300
        self.max_iters = 300
        self.residual_tol = 1e-9
        self.record_every = 1
        self.scheme = 'projected'
        self.reference = None
        for k, v in kwargs.items():
            if k not in self.parnames:
                emsg = "StationaryConfig has no parameter %r" % (k,)
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
        if not self.residual_tol >= 0:
            raise ValueError("residual_tol must be non-negative")
        if self.scheme not in SCHEMES:
            emsg = "unknown scheme %r, use one of %r" % (self.scheme,
                    SCHEMES)
            raise ValueError(emsg)
        return

# End class StationaryConfig


class StationarySolution(object):
    '''Outcome of iterate_stationary.

    theta       -- SimplexVector, or a float array when a scheme without
                   projection left the simplex
    u           -- ValueVector
    k           -- the constant k-bar
    residual    -- max-norm weak-solution defect from check_weak_stationary,
                   nan when theta is infeasible
    trace       -- SolveReport
    converged   -- True when the residual tolerance was met
    iterations  -- number of updates performed
    min_theta   -- smallest theta entry over all iterates
    '''

    def __init__(self, theta, u, k, residual, trace, converged, iterations,
            min_theta):
        self.theta = theta
        self.u = u
        self.k = k
        self.residual = residual
        self.trace = trace
        self.converged = converged
        self.iterations = iterations
        self.min_theta = min_theta
        return

# End class StationarySolution


def _stateArrays(state):
    if isinstance(state, (StationaryState, StationaryCandidate)):
        return (numpy.asarray(state.theta, dtype=float),
                numpy.asarray(state.u, dtype=float))
    theta, u = state
    return numpy.asarray(theta, dtype=float), numpy.asarray(u, dtype=float)


def operator_a(model, state):
    """Evaluate the monotone operator A at a state.

    Return tuple (theta_row, u_row) with theta_row[i] = h(Delta_i u, theta,
    i) and u_row = -kolmogorov_drift(u, theta).
    """
    theta, u = _stateArrays(state)
    return model.hvector(u, theta), -model.drift(u, theta)


def normalizer_k(model, state):
    """Mean of the Hamiltonian values, k = (1/d) sum_i h(Delta_i u, theta, i).
    """
    theta, u = _stateArrays(state)
    return float(numpy.mean(model.hvector(u, theta)))


def flow_rhs(model, state):
    """Right-hand side of the mass-preserving monotone flow.

    Return tuple (u_s, theta_s) with u_s = drift and theta_s = -h + k.
    """
    theta, u = _stateArrays(state)
    h = model.hvector(u, theta)
    return model.drift(u, theta), -h + numpy.mean(h)


def euler_step(model, state, mu):
    """Raw Euler map E_mu without simplex repair.

    Return StationaryCandidate (theta - mu h, u + mu drift).
    """
    if not mu > 0:
        raise ValueError("Euler step needs mu > 0, got %r" % (mu,))
    theta, u = _stateArrays(state)
    h = model.hvector(u, theta)
    return StationaryCandidate(theta - mu * h, u + mu * model.drift(u, theta))


def _flowResidual(model, theta, u):
    us, ts = flow_rhs(model, (theta, u))
    return max(numpy.max(numpy.abs(us)), numpy.max(numpy.abs(ts)))


def _advance(model, theta, u, mu, scheme):
    """One update of the chosen scheme, return (theta, u, shift)."""
    h = model.hvector(u, theta)
    drift = model.drift(u, theta)
    unew = u + mu * drift
    if scheme == 'projected':
        proj, shifts = project_simplex_rows((theta - mu * h)[numpy.newaxis])
        return proj[0], unew, shifts[0]
    if scheme == 'flow':
        return theta - mu * (h - numpy.mean(h)), unew, 0.0
    return theta - mu * h, unew, 0.0


def kbar_estimate(model, theta, u, mu=None):
    """Stationary constant k-bar.

    With mu given, k-bar is xi / mu from the projection of theta - mu h
    when no entry is clamped.  Otherwise, and without mu, it is the mean
    Hamiltonian over occupied states.
    """
    theta = numpy.asarray(theta, dtype=float)
    u = numpy.asarray(u, dtype=float)
    h = model.hvector(u, theta)
    if mu is not None:
        res = project_simplex(theta - mu * h)
        if not numpy.any(res.active_set):
            return res.shift / mu
    occupied = theta > OCCUPIED_TOL
    if not numpy.any(occupied):
        return float(numpy.mean(h))
    return float(numpy.mean(h[occupied]))


def iterate_stationary(model, init, config=None, sink=None):
    """Run the projected monotone iteration (theta, u) <- P E_mu (theta, u).

    model   -- ModelSpec
    init    -- StationaryState
    config  -- StationaryConfig, default settings when None
    sink    -- optional callable receiving each trace record as a dict

    The stopping quantity is the max-norm of (w_new - w) / mu, which
    equals the max-norm of flow_rhs while no entry is clamped.  The
    'euler' and 'flow' schemes stop on the max-norm of flow_rhs.
    Non-convergence is reported through the solution flag.

    Return StationarySolution.
    """
    if config is None:
        config = StationaryConfig()
    config.checkConfig()
    if not isinstance(init, StationaryState):
        init = StationaryState(*init)
    if len(init.theta) != model.d:
        emsg = "model has d=%i, initial state has %i" % (model.d,
                len(init.theta))
        raise ValueError(emsg)
    mu = float(config.step)
    scheme = config.scheme
    theta, u = init.arrays()
    ref = config.reference
    if ref is not None and not isinstance(ref, StationaryState):
        ref = StationaryState(*ref)
    trace = SolveReport(stationaryColumns(model.d), sink=sink)
    mlog.info("stationary %s iteration, mu=%g, max_iters=%i", scheme, mu,
            config.max_iters)

    def distance(theta, u):
        if ref is None:
            return numpy.nan
        rt, ru = ref.arrays()
        return numpy.sqrt(numpy.sum((theta - rt) ** 2) +
                numpy.sum((u - ru) ** 2))

    def record(it, residual):
        vals = dict(iter=it, residual=residual, distance=distance(theta, u),
                k=normalizer_k(model, (theta, u)), min_theta=theta.min())
        for i in range(model.d):
            vals['theta_%i' % (i + 1)] = theta[i]
            vals['u_%i' % (i + 1)] = u[i]
        trace.append(**vals)
        mlog.debug("iteration %i residual %g", it, residual)
        return

    min_theta = theta.min()
    converged = False
    iterations = 0
    while True:
        if scheme == 'projected':
            tnew, unew, shift = _advance(model, theta, u, mu, scheme)
            residual = max(numpy.max(numpy.abs(tnew - theta)),
                    numpy.max(numpy.abs(unew - u))) / mu
        else:
            residual = _flowResidual(model, theta, u)
        if iterations % config.record_every == 0:
            record(iterations, residual)
        if residual <= config.residual_tol:
            converged = True
            break
        if iterations >= config.max_iters:
            break
        if scheme != 'projected':
            tnew, unew, shift = _advance(model, theta, u, mu, scheme)
        theta, u = tnew, unew
        iterations += 1
        min_theta = min(min_theta, theta.min())
        if not numpy.all(numpy.isfinite(theta)) or \
                not numpy.all(numpy.isfinite(u)):
            mlog.warning("iteration %i diverged", iterations)
            residual = numpy.inf
            break
    if trace.rows and trace.rows[-1][0] != iterations:
        record(iterations, residual)
    trace.converged = converged
    trace.iterations = iterations
    trace.final_residual = residual
    feasible = bool(isSimplexRows(theta)[0])
    kbar = kbar_estimate(model, theta, u,
            mu if scheme == 'projected' else None)
    if feasible:
        theta_out = SimplexVector(theta)
        wres = check_weak_stationary(model, theta_out, u, kbar)
    else:
        theta_out = theta
        wres = numpy.nan
    if converged:
        mlog.info("converged after %i iterations, k=%g", iterations, kbar)
    else:
        mlog.warning("no convergence after %i iterations, residual %g",
                iterations, residual)
    return StationarySolution(theta_out, ValueVector(u), kbar, wres, trace,
            converged, iterations, float(min_theta))


def check_weak_stationary(model, theta, u, k):
    """Max-norm defect of the weak stationary conditions.

    The defect collects the violation of h(Delta_i u, theta, i) >= k over
    all states, the Kolmogorov drift, and |h - k| over states with mass
    above OCCUPIED_TOL.
    """
    theta = SimplexVector(theta).entries
    u = ValueVector(u).entries
    h = model.hvector(u, theta)
    drift = model.drift(u, theta)
    defects = [numpy.max(numpy.maximum(k - h, 0.0)),
               numpy.max(numpy.abs(drift))]
    occupied = theta > OCCUPIED_TOL
    if numpy.any(occupied):
        defects.append(numpy.max(numpy.abs(h[occupied] - k)))
    return float(max(defects))


def monotone_bracket(model, state, other):
    """Monotonicity expression for two states.

    Return sum_i (u - u~)^i (drift - drift~)^i
         + sum_i (theta - theta~)^i (-h + k + h~ - k~)^i,
    which is at most -gamma |theta - theta~|^2 for a monotone model.
    """
    t1, u1 = _stateArrays(state)
    t2, u2 = _stateArrays(other)
    h1 = model.hvector(u1, t1)
    h2 = model.hvector(u2, t2)
    d1 = model.drift(u1, t1)
    d2 = model.drift(u2, t2)
    rv = numpy.dot(u1 - u2, d1 - d2)
    rv += numpy.dot(t1 - t2, -h1 + h1.mean() + h2 - h2.mean())
    return float(rv)


def stationary_reference(model, init):
    """Closed-form paradigm-shift stationary solution.

    Return tuple (StationaryState, kbar) with theta = (1/2, 1/2), u = (p, p)
    and kbar = 1/2, where p is the mean of the initial u.  The mean of u is
    conserved by the iteration.
    """
    if model.d != 2 or model.name != 'paradigm_shift':
        raise ValueError("closed-form reference needs the paradigm-shift "
                "model")
    if not isinstance(init, StationaryState):
        init = StationaryState(*init)
    p = float(numpy.mean(init.u.entries))
    return StationaryState([0.5, 0.5], [p, p]), 0.5

# End of file
