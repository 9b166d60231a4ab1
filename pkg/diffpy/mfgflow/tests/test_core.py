#!/usr/bin/env python

# version
__id__ = '$Id$'

import os
import unittest

import numpy

# useful variables
thisfile = locals().get('__file__', 'file.py')
tests_dir = os.path.dirname(os.path.abspath(thisfile))

from diffpy.mfgflow.core import (SimplexVector, ValueVector, TimeGrid,
        TrajectoryPair, ModelSpec, difference, kolmogorov_drift)
from diffpy.mfgflow.models import paradigm_shift_model
from diffpy.mfgflow.tests.oracles import random_simplex


class TestDomainTypes(unittest.TestCase):

    def test_simplex_vector(self):
        """check SimplexVector validation
        """
        sv = SimplexVector([0.3, 0.7])
        self.assertEqual(2, sv.d)
        self.assertRaises(ValueError, SimplexVector, [1.2, -0.2])
        self.assertRaises(ValueError, SimplexVector, [0.5, 0.6])
        self.assertRaises(ValueError, SimplexVector, [numpy.nan, 1.0])
        # defects below the tolerance pass unchanged
        sv = SimplexVector([0.5, 0.5 + 1e-13])
        self.assertEqual(0.5 + 1e-13, sv[1])
        return

    def test_entries_read_only(self):
        """check that vector entries cannot be modified
        """
        uv = ValueVector([1.0, 2.0])
        self.assertRaises(ValueError, uv.entries.__setitem__, 0, 3.0)
        self.assertRaises(ValueError, ValueVector, [numpy.inf, 0.0])
        self.assertNotEqual(uv, SimplexVector([0.5, 0.5]))
        return

    def test_time_grid(self):
        """check TimeGrid step and node times
        """
        grid = TimeGrid(8, 450)
        self.assertAlmostEqual(8.0 / 450, grid.dt, 15)
        self.assertEqual(8.0, grid.times[-1])
        self.assertEqual(grid.time(225), 4.0)
        self.assertRaises(ValueError, TimeGrid, 1.0, 1)
        self.assertRaises(ValueError, TimeGrid, 0.0, 10)
        self.assertRaises(ValueError, TimeGrid, 1.0, 2.5)
        self.assertEqual(TimeGrid(1, 4), TimeGrid(1.0, 4))
        return

# End of class TestDomainTypes


class TestTrajectoryPair(unittest.TestCase):

    def setUp(self):
        self.grid = TimeGrid(1.0, 4)
        self.theta = numpy.tile([0.5, 0.5], (5, 1))
        self.u = numpy.zeros((5, 2))
        return

    def test_boundary(self):
        """check pinned boundary slots
        """
        tp = TrajectoryPair(self.grid, self.theta, self.u)
        self.assertEqual(SimplexVector([0.5, 0.5]), tp.theta0)
        self.assertEqual(ValueVector([0.0, 0.0]), tp.uT)
        self.assertRaises(ValueError, TrajectoryPair, self.grid,
                self.theta, self.u, theta0=[0.4, 0.6])
        self.assertRaises(ValueError, TrajectoryPair, self.grid,
                self.theta, self.u, uT=[1.0, 0.0])
        self.assertRaises(ValueError, tp.theta.__setitem__, (1, 0), 0.2)
        return

    def test_rows(self):
        """check simplex rows and shapes
        """
        theta = self.theta.copy()
        theta[2] = [0.8, 0.3]
        self.assertRaises(ValueError, TrajectoryPair, self.grid, theta,
                self.u)
        tp = TrajectoryPair(self.grid, theta, self.u, check=False)
        self.assertFalse(tp.isFeasible)
        self.assertRaises(ValueError, TrajectoryPair, self.grid,
                self.theta[:4], self.u[:4])
        return

    def test_replace(self):
        """check TrajectoryPair.replace()
        """
        tp = TrajectoryPair(self.grid, self.theta, self.u)
        u = self.u.copy()
        u[0] = [3.0, 1.0]
        tp2 = tp.replace(u=u)
        self.assertTrue(tp.sameBoundary(tp2))
        self.assertEqual(3.0, tp2.uAt(0)[0])
        self.assertEqual(0.0, tp.uAt(0)[0])
        return

# End of class TestTrajectoryPair


class TestDifference(unittest.TestCase):

    def test_examples(self):
        """check difference() on hand-computed vectors
        """
        self.assertEqual([0.0, -2.0], difference([4, 2], 1).tolist())
        self.assertEqual([2.0, 0.0], difference([4, 2], 2).tolist())
        self.assertEqual([0.0, 0.0, 0.0],
                difference([1.5, 1.5, 1.5], 3).tolist())
        self.assertRaises(ValueError, difference, [4, 2], 0)
        self.assertRaises(ValueError, difference, [4, 2], 3)
        return

    def test_shift_invariance(self):
        """check that difference() ignores constant shifts
        """
        rs = numpy.random.RandomState(11)
        for trial in range(100):
            d = rs.randint(2, 6)
            u = rs.uniform(-5, 5, d)
            c = rs.uniform(-10, 10)
            i = rs.randint(1, d + 1)
            self.assertEqual(0.0, difference(u, i)[i - 1])
            self.assertTrue(numpy.allclose(difference(u, i),
                difference(u + c, i), rtol=0, atol=1e-12))
        return

# End of class TestDifference


class TestKolmogorovDrift(unittest.TestCase):

    def setUp(self):
        self.model = paradigm_shift_model()
        return

    def test_examples(self):
        """check kolmogorov_drift() on the paradigm-shift model
        """
        drift = kolmogorov_drift(self.model, [3.0, 3.0], [0.5, 0.5])
        self.assertEqual([0.0, 0.0], drift.tolist())
        drift = kolmogorov_drift(self.model, [4.0, 2.0], [1.0, 0.0])
        self.assertEqual([-2.0, 2.0], drift.tolist())
        self.assertRaises(ValueError, kolmogorov_drift, self.model,
                [1.0, 2.0, 3.0], [0.2, 0.3, 0.5])
        return

    def test_generic_loop(self):
        """check that the rate loop matches the vectorized drift
        """
        m = self.model
        generic = ModelSpec(2, m.hamiltonian, m.rates)
        rs = numpy.random.RandomState(5)
        for trial in range(50):
            u = rs.uniform(-3, 3, 2)
            theta = random_simplex(rs, 2)
            self.assertTrue(numpy.allclose(kolmogorov_drift(m, u, theta),
                kolmogorov_drift(generic, u, theta), rtol=0, atol=1e-14))
            self.assertTrue(numpy.allclose(m.hvector(u, theta),
                generic.hvector(u, theta), rtol=0, atol=1e-14))
        return

    def test_mass_conservation(self):
        """check that the drift sums to zero
        """
        rs = numpy.random.RandomState(3)
        for trial in range(1000):
            u = rs.uniform(-5, 5, 2)
            theta = random_simplex(rs, 2)
            drift = kolmogorov_drift(self.model, u, theta)
            self.assertTrue(abs(drift.sum()) <= 1e-12)
        return

# End of class TestKolmogorovDrift

if __name__ == '__main__':
    unittest.main()

# End of file
