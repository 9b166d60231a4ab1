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


"""models -- the paradigm-shift model and its potential structure.

Two states with productivity coupling of constant elasticity of
substitution,

    f(i, theta) = (a_i theta_1**r + (1 - a_i) theta_2**r)**(1/r),

Hamiltonian h = f - 1/2 ((u^i - u^j)^+)^2 and switching rate
(u^i - u^j)^+ out of state i.  With a1=1, a2=0, r=1 the coupling is the
gradient of F = (theta_1**2 + theta_2**2)/2 and the model is potential.
"""

# module version
__id__ = "$Id$"

import numpy

from diffpy.mfgflow.core import (ModelSpec, ValueVector, SimplexVector,
                                 difference, _checkState)


class ParadigmShiftParams(object):
    '''CES parameters of the paradigm-shift model.

    a1, a2  -- weights in [0, 1]
    r       -- CES exponent, r > 0.  The formula has no value at r = 0,
               which is rejected.
    '''

    def __init__(self, a1=1.0, a2=0.0, r=1.0):
        for name, val in (('a1', a1), ('a2', a2), ('r', r)):
            if not numpy.isfinite(val):
                raise ValueError("%s must be finite, got %r" % (name, val))
        if not (0 <= a1 <= 1 and 0 <= a2 <= 1):
            emsg = "CES weights must lie in [0, 1], got a1=%r a2=%r" % (
                    a1, a2)
            raise ValueError(emsg)
        if r < 0:
            raise ValueError("CES exponent r must be >= 0, got %r" % (r,))
        if r == 0:
            raise ValueError("CES exponent r = 0 is not supported")
        self.a1 = float(a1)
        self.a2 = float(a2)
        self.r = float(r)
        return

    @property
    def isPotential(self):
        """True for the a1=1, a2=0, r=1 instance with known potential."""
        return (self.a1, self.a2, self.r) == (1.0, 0.0, 1.0)

    def weights(self):
        return numpy.array([self.a1, self.a2])

    def __repr__(self):
        return "ParadigmShiftParams(a1=%r, a2=%r, r=%r)" % (
                self.a1, self.a2, self.r)

# End class ParadigmShiftParams


class PotentialStructure(object):
    '''Hamiltonian form H(u, theta) = sum_i theta^i htilde(Delta_i u, i) + F.

    Instance attributes:

    htilde  -- callable (z, i) -> real, i in 1..d
    F       -- callable theta -> real
    H       -- callable (u, theta) -> real, built from htilde and F when
               not given
    Hrows   -- optional vectorized H over arrays of shape (m, d)
    '''

    def __init__(self, htilde, F, H=None, Hrows=None):
        self.htilde = htilde
        self.F = F
        self.H = H if H is not None else self._hamiltonianForm
        self._Hrows = Hrows
        return

    def _hamiltonianForm(self, u, theta):
        u = numpy.asarray(u, dtype=float)
        theta = numpy.asarray(theta, dtype=float)
        rv = self.F(theta)
        for i in range(1, len(u) + 1):
            rv += theta[i - 1] * self.htilde(difference(u, i), i)
        return rv

    def Hrows(self, u, theta):
        """H(u_n, theta_n) for every row of (m, d) arrays."""
        if self._Hrows is not None:
            return self._Hrows(u, theta)
        return numpy.array([self.H(ur, tr) for ur, tr in zip(u, theta)])

# End class PotentialStructure


def _positive(x):
    """(x)^+ with an exact 0 at the kink."""
    return numpy.maximum(x, 0.0) + 0.0


def _cesRows(params, theta):
    """Coupling (f(1, theta), f(2, theta)) along the last axis."""
    theta = numpy.asarray(theta, dtype=float)
    r = params.r
    a = params.weights()
    t1 = theta[..., 0:1] ** r
    t2 = theta[..., 1:2] ** r
    return (a * t1 + (1 - a) * t2) ** (1.0 / r)


def _checkTwoStates(v, name):
    if len(v) != 2:
        emsg = "paradigm-shift model has 2 states, %s has %i" % (
                name, len(v))
        raise ValueError(emsg)
    return


def ces_coupling(params, theta, i):
    """CES productivity f(i, theta).

    params  -- ParadigmShiftParams
    theta   -- probability vector with 2 entries
    i       -- state 1 or 2

    Raise ValueError when both entries of theta vanish.
    """
    theta = SimplexVector(theta).entries
    _checkTwoStates(theta, 'theta')
    k = _checkState(i, 2)
    if not numpy.any(theta > 0):
        raise ValueError("CES coupling is undefined at theta = 0")
    return float(_cesRows(params, theta)[k])


def paradigm_hamiltonian(params, u, theta, i):
    """Hamiltonian h(Delta_i u, theta, i) = f(i, theta) - 1/2 ((u^i-u^j)^+)^2.
    """
    u = ValueVector(u).entries
    _checkTwoStates(u, 'u')
    k = _checkState(i, 2)
    gap = u[k] - u[1 - k]
    return ces_coupling(params, theta, i) - 0.5 * _positive(gap) ** 2


def paradigm_rates(u, theta, i):
    """Generator row out of state i.

    The off-diagonal entry is (u^i - u^j)^+ and the diagonal entry its
    negative.  theta does not enter the rates of this model.
    """
    u = ValueVector(u).entries
    _checkTwoStates(u, 'u')
    k = _checkState(i, 2)
    rate = _positive(u[k] - u[1 - k])
    rv = numpy.zeros(2)
    rv[1 - k] = rate
    rv[k] = 0.0 - rate
    return rv


def potential_energy(structure, u, theta):
    """Conserved Hamiltonian H(u, theta) of a potential model.

    structure   -- PotentialStructure, or a ModelSpec carrying one

    Raise ValueError when there is no potential structure.
    """
    if isinstance(structure, ModelSpec):
        structure = structure.potential
    if structure is None:
        raise ValueError("model has no potential structure")
    u = ValueVector(u).entries
    theta = SimplexVector(theta).entries
    return float(structure.H(u, theta))


def paradigm_shift_model(params=None):
    """Build the paradigm-shift ModelSpec.

    params  -- ParadigmShiftParams, default a1=1, a2=0, r=1

    The returned model carries vectorized Hamiltonian and drift, and a
    PotentialStructure for the a1=1, a2=0, r=1 instance.
    """
    if params is None:
        params = ParadigmShiftParams()

    # z = Delta_i u, so u^i - u^j = -z^j
    def hamiltonian(z, theta, i):
        z = numpy.asarray(z, dtype=float)
        k = _checkState(i, 2)
        return float(_cesRows(params, theta)[k]
                - 0.5 * _positive(-z[1 - k]) ** 2)

    def rates(z, theta, i):
        z = numpy.asarray(z, dtype=float)
        k = _checkState(i, 2)
        rv = numpy.zeros(2)
        rv[1 - k] = _positive(-z[1 - k])
        rv[k] = 0.0 - rv[1 - k]
        return rv

    def hvector(u, theta):
        u = numpy.asarray(u, dtype=float)
        g = u[..., 0] - u[..., 1]
        penalty = numpy.stack([_positive(g), _positive(-g)], axis=-1)
        return _cesRows(params, theta) - 0.5 * penalty ** 2

    def drift(u, theta):
        u = numpy.asarray(u, dtype=float)
        theta = numpy.asarray(theta, dtype=float)
        g = u[..., 0] - u[..., 1]
        flow = (-theta[..., 0] * _positive(g)
                + theta[..., 1] * _positive(-g))
        return numpy.stack([flow, 0.0 - flow], axis=-1)

    potential = None
    if params.isPotential:
        potential = paradigm_potential()
    model = ModelSpec(2, hamiltonian, rates, potential=potential,
            hvector=hvector, drift=drift, name='paradigm_shift')
    model.params = params
    return model


def paradigm_potential():
    """PotentialStructure of the a1=1, a2=0, r=1 paradigm-shift model."""

    def htilde(z, i):
        z = numpy.asarray(z, dtype=float)
        k = _checkState(i, 2)
        return -0.5 * _positive(-z[1 - k]) ** 2

    def F(theta):
        theta = numpy.asarray(theta, dtype=float)
        return 0.5 * numpy.sum(theta ** 2, axis=-1)

    def Hrows(u, theta):
        u = numpy.asarray(u, dtype=float)
        theta = numpy.asarray(theta, dtype=float)
        g = u[..., 0] - u[..., 1]
        kinetic = (theta[..., 0] * _positive(g) ** 2 +
                   theta[..., 1] * _positive(-g) ** 2)
        return F(theta) - 0.5 * kinetic

    def H(u, theta):
        return float(Hrows(u, theta))

    return PotentialStructure(htilde, F, H=H, Hrows=Hrows)

# End of file
