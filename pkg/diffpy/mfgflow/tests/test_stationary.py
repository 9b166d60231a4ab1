#!/usr/bin/env python

# version
__id__ = '$Id$'

import os
import unittest

import numpy

# useful variables
thisfile = locals().get('__file__', 'file.py')
tests_dir = os.path.dirname(os.path.abspath(thisfile))

from diffpy.mfgflow.models import paradigm_shift_model
from diffpy.mfgflow.simplex import project_simplex
from diffpy.mfgflow.stationary import (StationaryState, StationaryConfig,
        operator_a, normalizer_k, flow_rhs, euler_step, iterate_stationary,
        check_weak_stationary, monotone_bracket, stationary_reference,
        kbar_estimate)
from diffpy.mfgflow.tests.oracles import random_simplex


class TestStationaryOperators(unittest.TestCase):

    def setUp(self):
        self.model = paradigm_shift_model()
        self.fixed = StationaryState([0.5, 0.5], [3.0, 3.0])
        self.state = StationaryState([0.8, 0.2], [4.0, 2.0])
        return

    def test_operator_a(self):
        """check operator_a() at the fixed point and off it
        """
        trow, urow = operator_a(self.model, self.fixed)
        self.assertEqual([0.5, 0.5], trow.tolist())
        self.assertEqual([0.0, 0.0], numpy.abs(urow).tolist())
        trow, urow = operator_a(self.model, self.state)
        self.assertTrue(numpy.allclose([-1.2, 0.2], trow))
        self.assertTrue(numpy.allclose([1.6, -1.6], urow))
        self.assertEqual(0.0, urow.sum())
        return

    def test_normalizer_k(self):
        """check normalizer_k() on hand-computed states
        """
        self.assertEqual(0.5, normalizer_k(self.model, self.fixed))
        self.assertAlmostEqual(-0.5, normalizer_k(self.model, self.state), 14)
        self.assertAlmostEqual(0.5,
                normalizer_k(self.model, ([0.9, 0.1], [2.0, 2.0])), 15)
        return

    def test_flow_rhs(self):
        """check flow_rhs() values and zero mass of theta_s
        """
        us, ts = flow_rhs(self.model, self.fixed)
        self.assertEqual([0.0, 0.0], numpy.abs(us).tolist())
        self.assertEqual([0.0, 0.0], ts.tolist())
        us, ts = flow_rhs(self.model, self.state)
        self.assertTrue(numpy.allclose([-1.6, 1.6], us))
        self.assertTrue(numpy.allclose([0.7, -0.7], ts))
        rs = numpy.random.RandomState(13)
        for trial in range(200):
            s = (random_simplex(rs, 2), rs.uniform(-3, 3, 2))
            us, ts = flow_rhs(self.model, s)
            self.assertTrue(abs(ts.sum()) <= 1e-12)
        return

    def test_euler_step(self):
        """check the raw Euler map
        """
        mu = 8.0 / 300
        cand = euler_step(self.model, self.state, mu)
        self.assertTrue(numpy.allclose([0.832, 0.2 - 0.2 * mu], cand.theta,
            rtol=0, atol=1e-12))
        self.assertTrue(numpy.allclose([4 - 1.6 * mu, 2 + 1.6 * mu], cand.u))
        self.assertRaises(ValueError, euler_step, self.model, self.state, 0)
        # fixed point: raw step loses mass, the projection restores it
        cand = euler_step(self.model, self.fixed, mu)
        res = project_simplex(cand.theta)
        self.assertTrue(numpy.allclose([0.5, 0.5], res.projected.entries,
            rtol=0, atol=1e-15))
        self.assertAlmostEqual(0.5, res.shift / mu, 12)
        self.assertEqual([3.0, 3.0], cand.u.tolist())
        # large steps leave the simplex
        cand = euler_step(self.model, ([0.8, 0.2], [5.0, 2.0]), 0.4)
        self.assertTrue(cand.isFeasible is False)
        return

    def test_check_weak_stationary(self):
        """check the weak-solution defect
        """
        m = self.model
        self.assertEqual(0.0, check_weak_stationary(m, [0.5, 0.5],
            [2.0, 2.0], 0.5))
        eps = 1e-3
        self.assertAlmostEqual(eps, check_weak_stationary(m, [0.5, 0.5],
            [2.0, 2.0], 0.5 + eps), 15)
        self.assertEqual(1.0, check_weak_stationary(m, [1.0, 0.0],
            [0.0, 0.0], 0.0))
        return

    def test_monotone_bracket(self):
        """check the monotonicity bracket with gamma = 1
        """
        rs = numpy.random.RandomState(19)
        m = self.model
        self.assertEqual(0.0, monotone_bracket(m, self.state, self.state))
        for trial in range(200):
            w1 = StationaryState(random_simplex(rs, 2), rs.uniform(-3, 3, 2))
            w2 = StationaryState(random_simplex(rs, 2), rs.uniform(-3, 3, 2))
            t1 = w1.theta.entries
            t2 = w2.theta.entries
            bound = -numpy.sum((t1 - t2) ** 2)
            self.assertTrue(monotone_bracket(m, w1, w2) <= bound + 1e-10)
        return

    def test_reference(self):
        """check the closed-form stationary reference
        """
        ref, kbar = stationary_reference(self.model, self.state)
        self.assertEqual([0.5, 0.5], ref.theta.entries.tolist())
        self.assertEqual([3.0, 3.0], ref.u.entries.tolist())
        self.assertEqual(0.5, kbar)
        self.assertEqual(0.0, check_weak_stationary(self.model, ref.theta,
            ref.u, kbar))
        return

    def test_config(self):
        """check StationaryConfig validation
        """
        cfg = StationaryConfig()
        self.assertEqual(8.0 / 300, cfg.step)
        self.assertEqual(300, cfg.max_iters)
        self.assertRaises(ValueError, StationaryConfig, step=0)
        self.assertRaises(ValueError, StationaryConfig, scheme='rk4')
        self.assertRaises(ValueError, StationaryConfig, record_every=0)
        self.assertRaises(ValueError, StationaryConfig, bogus=1)
        return

# End of class TestStationaryOperators


class TestIterateStationary(unittest.TestCase):

    def setUp(self):
        self.model = paradigm_shift_model()
        self.init = StationaryState([0.8, 0.2], [4.0, 2.0])
        self.ref = stationary_reference(self.model, self.init)[0]
        return

    def test_reproduction(self):
        """check convergence to the symmetric stationary solution
        """
        cfg = StationaryConfig(reference=self.ref)
        sol = iterate_stationary(self.model, self.init, cfg)
        theta = sol.theta.entries
        u = sol.u.entries
        self.assertTrue(numpy.max(numpy.abs(theta - 0.5)) <= 1e-2)
        self.assertTrue(abs(u[0] - u[1]) <= 1e-2)
        self.assertTrue(abs(sol.k - 0.5) <= 1e-2)
        self.assertTrue(abs(u.mean() - 3.0) <= 1e-12)
        self.assertTrue(sol.residual <= 1e-2)
        self.assertEqual(sol.iterations + 1, len(sol.trace))
        return

    def test_contraction_trace(self):
        """check that the distance to the fixed point never increases
        """
        cfg = StationaryConfig(reference=self.ref)
        sol = iterate_stationary(self.model, self.init, cfg)
        dist = sol.trace.column('distance')
        self.assertTrue(numpy.all(numpy.diff(dist) <= 1e-12))
        self.assertTrue(dist[-1] < 1e-2 * dist[0])
        return

    def test_mass_invariance(self):
        """check that every iterate stays on the simplex
        """
        sol = iterate_stationary(self.model, self.init)
        th1 = sol.trace.column('theta_1')
        th2 = sol.trace.column('theta_2')
        self.assertTrue(numpy.all(numpy.abs(th1 + th2 - 1) <= 1e-12))
        self.assertTrue(numpy.all(sol.trace.column('min_theta') >= 0))
        self.assertTrue(sol.min_theta >= 0)
        return

    def test_fixed_point_start(self):
        """check that the iteration stops at once on the fixed point
        """
        sol = iterate_stationary(self.model, self.ref)
        self.assertTrue(sol.converged)
        self.assertEqual(0, sol.iterations)
        self.assertEqual(self.ref.theta, sol.theta)
        self.assertEqual(self.ref.u, sol.u)
        self.assertAlmostEqual(0.5, sol.k, 12)
        return

    def test_positivity(self):
        """check that only the projected scheme keeps theta >= 0
        """
        init = StationaryState([0.8, 0.2], [5.0, 2.0])
        steps = (8.0 / 300, 0.1, 0.2, 0.4)
        unprojected = []
        for mu in steps:
            cfg = StationaryConfig(step=mu, max_iters=60, scheme='flow')
            unprojected.append(iterate_stationary(self.model, init,
                cfg).min_theta)
            cfg = StationaryConfig(step=mu, max_iters=60)
            sol = iterate_stationary(self.model, init, cfg)
            self.assertTrue(sol.min_theta >= 0)
        self.assertTrue(min(unprojected) < 0)
        return

    def test_euler_scheme(self):
        """check the raw Euler scheme conserves mass
        """
        cfg = StationaryConfig(max_iters=50, scheme='euler')
        sol = iterate_stationary(self.model, self.init, cfg)
        self.assertEqual(50, sol.iterations)
        self.assertFalse(sol.converged)
        theta = numpy.asarray(sol.theta)
        self.assertTrue(numpy.isfinite(theta).all())
        return

    def test_one_step_contraction(self):
        """check that one projected step does not expand distances
        """
        rs = numpy.random.RandomState(23)
        mu = 1e-2
        m = self.model

        def step(w):
            cand = euler_step(m, w, mu)
            return project_simplex(cand.theta).projected.entries, cand.u

        for trial in range(100):
            pair = []
            for k in range(2):
                t = rs.uniform(0.2, 0.8)
                pair.append(StationaryState([t, 1 - t], rs.uniform(-1, 1, 2)))
            w1, w2 = pair
            before = numpy.sum((numpy.asarray(w1.theta) -
                numpy.asarray(w2.theta)) ** 2)
            before += numpy.sum((numpy.asarray(w1.u) -
                numpy.asarray(w2.u)) ** 2)
            t1, u1 = step(w1)
            t2, u2 = step(w2)
            after = numpy.sum((t1 - t2) ** 2) + numpy.sum((u1 - u2) ** 2)
            self.assertTrue(after <= before + 1e-12)
        return

    def test_sink(self):
        """check that every record reaches the sink
        """
        records = []
        cfg = StationaryConfig(max_iters=20, record_every=5)
        sol = iterate_stationary(self.model, self.init, cfg,
                sink=records.append)
        self.assertEqual(len(sol.trace), len(records))
        self.assertEqual([0, 5, 10, 15, 20], [r['iter'] for r in records])
        return

    def test_kbar(self):
        """check k-bar from the projection shift and occupied states
        """
        m = self.model
        self.assertAlmostEqual(0.5, kbar_estimate(m, [0.5, 0.5], [1, 1],
            0.01), 12)
        self.assertEqual(1.0, kbar_estimate(m, [1.0, 0.0], [0, 0]))
        return

# End of class TestIterateStationary

if __name__ == '__main__':
    unittest.main()

# End of file
