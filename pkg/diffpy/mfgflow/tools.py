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


"""Tools for grid refinement and convergence diagnostics.
"""

# module version
__id__ = "$Id$"


import numpy

from diffpy.mfgflow.core import TimeGrid, TrajectoryPair
from diffpy.mfgflow.timedep import (iterate_timedep, deformation_step,
        h1_weighted_distance, recover_value, initial_trajectory)


def sample_to_grid(traj, grid):
    """Restrict a trajectory onto a coarser grid.

    traj    -- TrajectoryPair on a grid whose N is a multiple of grid.N
    grid    -- coarse TimeGrid with the same horizon

    Return TrajectoryPair with every m-th node of traj.
    """
    fine = traj.grid
    if fine.T != grid.T or fine.N % grid.N:
        emsg = "cannot sample %r onto %r" % (fine, grid)
        raise ValueError(emsg)
    m = fine.N // grid.N
    return TrajectoryPair(grid, traj.theta[::m], traj.u[::m],
            traj.theta0, traj.uT, check=traj.check)


def observed_order(steps, errors):
    """Slope of log(errors) against log(steps) by a linear fit."""
    steps = numpy.asarray(steps, dtype=float)
    errors = numpy.asarray(errors, dtype=float)
    slope = numpy.polyfit(numpy.log(steps), numpy.log(errors), 1)[0]
    return float(slope)


def refinement_study(model, T, Ns, theta0, uT, config, u0=None,
        thetaT=None, recover=True):
    '''Fixed points on a sequence of grids and their mutual distances.

    model   -- ModelSpec
    T       -- horizon
    Ns      -- increasing interval counts, every one a multiple of the
               previous one
    theta0, uT  -- boundary data
    config  -- TdConfig shared by all runs
    u0, thetaT  -- guesses for initial_trajectory
    recover -- compare trajectories with recovered values

    Return tuple (solutions, distances).  solutions is a list of
    (N, TrajectoryPair, SolveReport); distances[k] is the weighted H1
    distance between the solutions for Ns[k] and Ns[k + 1], measured on
    the coarser grid.
    '''
    solutions = []
    for N in Ns:
        grid = TimeGrid(T, N)
        init = initial_trajectory(grid, theta0, uT, u0=u0, thetaT=thetaT)
        traj, report = iterate_timedep(model, init, config)
        if recover:
            traj = traj.replace(u=recover_value(model, traj))
        solutions.append((N, traj, report))
    distances = []
    for (N1, t1, r1), (N2, t2, r2) in zip(solutions[:-1], solutions[1:]):
        coarse = sample_to_grid(t2, t1.grid)
        distances.append(h1_weighted_distance(t1, coarse))
    return solutions, distances


def self_reference_distances(model, init, config):
    """Weighted H1 distance of every recorded iterate to the final one.

    Used where no closed-form solution exists.  The iteration is run
    twice, the second pass measures each iterate against the first
    pass result.

    Return tuple (iterations, distances) of arrays.
    """
    final, report = iterate_timedep(model, init, config)
    iters = []
    dists = []
    traj = init
    for it in range(report.iterations + 1):
        if it % config.record_every == 0 or it == report.iterations:
            iters.append(it)
            dists.append(h1_weighted_distance(traj, final))
        if it < report.iterations:
            traj = deformation_step(model, traj, config.step,
                    config.projection)
    return numpy.array(iters), numpy.array(dists)

# End of file
