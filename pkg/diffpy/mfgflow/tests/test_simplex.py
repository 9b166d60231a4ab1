#!/usr/bin/env python

# version
__id__ = '$Id$'

import os
import unittest

import numpy

# useful variables
thisfile = locals().get('__file__', 'file.py')
tests_dir = os.path.dirname(os.path.abspath(thisfile))

from diffpy.mfgflow.simplex import project_simplex, project_simplex_rows
from diffpy.mfgflow.tests.oracles import qp_oracle


class TestProjectSimplex(unittest.TestCase):

    def setUp(self):
        self.rs = numpy.random.RandomState(42)
        return

    def test_examples(self):
        """check project_simplex() on hand-computed inputs
        """
        res = project_simplex([0.3, 0.7])
        self.assertEqual([0.3, 0.7], res.projected.entries.tolist())
        self.assertEqual(0.0, res.shift)
        res = project_simplex([1.2, 0.4])
        self.assertTrue(numpy.allclose([0.9, 0.1], res.projected.entries,
            rtol=0, atol=1e-12))
        self.assertAlmostEqual(-0.3, res.shift, 12)
        self.assertFalse(numpy.any(res.active_set))
        res = project_simplex([2.0, -1.0])
        self.assertEqual([1.0, 0.0], res.projected.entries.tolist())
        self.assertEqual(-1.0, res.shift)
        self.assertEqual([False, True], res.active_set.tolist())
        res = project_simplex([0.5, 0.5, 0.5])
        self.assertTrue(numpy.allclose(1.0 / 3, res.projected.entries,
            rtol=0, atol=1e-12))
        self.assertAlmostEqual(-1.0 / 6, res.shift, 12)
        return

    def test_errors(self):
        """check rejection of invalid input
        """
        self.assertRaises(ValueError, project_simplex, [numpy.nan, 1.0])
        self.assertRaises(ValueError, project_simplex, [numpy.inf, 0.0])
        self.assertRaises(ValueError, project_simplex, [1.0])
        self.assertRaises(ValueError, project_simplex, [[0.5, 0.5]])
        return

    def test_exact_zeros(self):
        """check that clamped entries are +0
        """
        for trial in range(200):
            x = self.rs.uniform(-3, 3, 4)
            p = project_simplex(x).projected.entries
            self.assertFalse(numpy.any(numpy.signbit(p)))
            self.assertTrue(abs(p.sum() - 1) <= 1e-12)
        return

    def test_idempotence(self):
        """check that a second projection changes nothing
        """
        for trial in range(1000):
            d = self.rs.randint(2, 8)
            x = self.rs.normal(scale=2, size=d)
            p = project_simplex(x).projected.entries
            pp = project_simplex(p).projected.entries
            self.assertTrue(numpy.array_equal(p, pp))
        return

    def test_nonexpansive(self):
        """check that the projection does not expand distances
        """
        for trial in range(1000):
            d = self.rs.randint(2, 8)
            x = self.rs.normal(scale=2, size=d)
            y = self.rs.normal(scale=2, size=d)
            px = project_simplex(x).projected.entries
            py = project_simplex(y).projected.entries
            self.assertTrue(numpy.linalg.norm(px - py) <=
                    numpy.linalg.norm(x - y) + 1e-12)
        return

    def test_qp_oracle(self):
        """check optimality against active-set enumeration
        """
        for d in (2, 3, 5, 10):
            for trial in range(50):
                x = self.rs.normal(scale=1.5, size=d)
                p = project_simplex(x).projected.entries
                q = qp_oracle(x)
                self.assertTrue(numpy.max(numpy.abs(p - q)) <= 1e-10)
        return

    def test_large_magnitude(self):
        """check projection of entries far from the simplex
        """
        expect = numpy.array([1.4, 1.1, 0.5]) / 3
        res = project_simplex([1e6 + 0.1, 1e6, 1e6 - 0.2])
        self.assertTrue(numpy.allclose(expect, res.projected.entries,
            rtol=0, atol=1e-8))
        self.assertTrue(abs(res.projected.entries.sum() - 1) <= 1e-12)
        self.assertTrue(abs(res.shift + 1e6 - 1.1 / 3) <= 1e-8)
        eta = numpy.array([[1e6 + 0.1, 1e6, 1e6 - 0.2],
                           [-5e7, 3e7, 3e7 + 1.5]])
        proj, shifts = project_simplex_rows(eta)
        self.assertTrue(numpy.allclose(expect, proj[0], rtol=0, atol=1e-8))
        self.assertEqual([0.0, 0.0, 1.0], proj[1].tolist())
        self.assertTrue(numpy.all(numpy.abs(proj.sum(axis=1) - 1) <= 1e-12))
        for trial in range(200):
            x = self.rs.normal(scale=0.5, size=4) + self.rs.uniform(-1e8, 1e8)
            p = project_simplex(x).projected.entries
            self.assertTrue(abs(p.sum() - 1) <= 1e-12)
            self.assertTrue(p.min() >= 0)
        return

    def test_rows(self):
        """check row-wise projection with valid rows untouched
        """
        eta = numpy.array([[0.25, 0.75], [1.2, 0.4], [2.0, -1.0]])
        proj, shifts = project_simplex_rows(eta)
        self.assertEqual([0.25, 0.75], proj[0].tolist())
        self.assertEqual(0.0, shifts[0])
        self.assertEqual([1.0, 0.0], proj[2].tolist())
        self.assertEqual([1.2, 0.4], eta[1].tolist())
        return

# End of class TestProjectSimplex

if __name__ == '__main__':
    unittest.main()

# End of file
