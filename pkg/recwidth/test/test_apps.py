#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Tests the applications: orthogonal transforms, Stirling and Bernoulli
numbers and bivariate evaluation.

These tests may all be executed by running tox from the
root level of the project.
"""
import unittest

import numpy as np
from pytest import raises

from ..apps import FORWARD, PROJECTION, OrthoFamily, bernoulliNumbers, bivariateEvalSpec, chebyshevFamily, \
    orthogonalTransform, stirlingApply
from ..errors import RepeatedPointsError, SpecValidationError
from ..field import P, dot, inv, matMul, powMod
from ..multiply import forwardMult
from ..oracle import bernoulliRecursive, bivariateMatrix, denseFromSpec, orthoMatrix, stirlingTable
from ..recurrence import buildDyadicTree
from ..rng import SplitMix64


class TestOrthogonalTransform(unittest.TestCase):
    """
    Define our orthogonal polynomial transform tests.
    """
    maxDiff = None

    def test_chebyshevAtSmallPoints(self):
        """sum_i b_i T_i at the points, for b = e_2 and b = e_0."""
        family = chebyshevFamily([0, 1, 2, 3])
        self.assertEqual(orthogonalTransform(family, [0, 0, 1, 0]).tolist(), [P - 1, 1, 7, 17])
        self.assertEqual(orthogonalTransform(family, [1, 0, 0, 0], FORWARD).tolist(), [1, 1, 1, 1])

    def test_adjoint(self):
        """Projection is the adjoint of the forward transform."""
        rng = SplitMix64(12)
        family = chebyshevFamily(rng.distinct(32))
        b, c = rng.residues(32), rng.residues(32)
        self.assertEqual(dot(b, orthogonalTransform(family, c, PROJECTION)),
                         dot(c, orthogonalTransform(family, b, FORWARD)))

    def test_generalFamily(self):
        """A random three-term family against direct evaluation, N = 512."""
        rng = SplitMix64(44)
        n = 512
        family = OrthoFamily(alpha=rng.residues(n), beta=rng.residues(n), gamma=rng.residues(n),
                             points=rng.distinct(n))
        b = rng.residues(n)
        A = orthoMatrix(family)
        np.testing.assert_array_equal(orthogonalTransform(family, b, FORWARD), matMul(A.T.copy(), b))
        np.testing.assert_array_equal(orthogonalTransform(family, b, PROJECTION), matMul(A, b))

    def test_fewerPolynomials(self):
        """Fewer polynomials than points."""
        family = chebyshevFamily([5, 6, 7, 8, 9], count=3)
        A = orthoMatrix(family)
        self.assertEqual(A.shape, (3, 5))
        np.testing.assert_array_equal(denseFromSpec(family.spec), A)

    def test_repeatedPoints(self):
        """The confluent case is not supported."""
        family = chebyshevFamily([1, 2, 2])
        with raises(RepeatedPointsError):
            orthogonalTransform(family, [1, 1, 1])

    def test_badDirection(self):
        """Only the two directions exist."""
        with raises(ValueError):
            orthogonalTransform(chebyshevFamily([1, 2]), [1, 1], 'sideways')


class TestStirlingBernoulli(unittest.TestCase):
    """
    Define our Stirling and Bernoulli tests.
    """
    maxDiff = None

    def test_table(self):
        """Hand values of the Stirling numbers of the second kind."""
        W = stirlingTable(6)
        self.assertEqual(W[3, :4].tolist(), [0, 1, 3, 1])
        self.assertEqual(int(W[4, 2]), 7)
        self.assertEqual(W[:, 0].tolist(), [1, 0, 0, 0, 0, 0])

    def test_products(self):
        """W x and W^T x against the table."""
        rng = SplitMix64(2)
        for n in (2, 7, 64):
            W = stirlingTable(n)
            x = rng.residues(n)
            np.testing.assert_array_equal(stirlingApply(n, x), matMul(W, x))
            np.testing.assert_array_equal(stirlingApply(n, x, transposed=True), matMul(W.T.copy(), x))

    def test_firstColumn(self):
        """W e_0 = e_0."""
        self.assertEqual(stirlingApply(5, [1, 0, 0, 0, 0]).tolist(), [1, 0, 0, 0, 0])

    def test_bernoulli(self):
        """B_0 = 1, B_1 = -1/2, B_2 = 1/6, odd ones vanish."""
        numbers = bernoulliNumbers(8)
        self.assertEqual(numbers[0], 1)
        self.assertEqual(numbers[1], 499122176)
        self.assertEqual(numbers[2], inv(6))
        self.assertEqual(numbers[3], 0)
        self.assertEqual(numbers[5], 0)
        self.assertEqual(bernoulliNumbers(0), [])

    def test_bernoulliRecursive(self):
        """The fast path matches the textbook recursion."""
        self.assertEqual(bernoulliNumbers(100), bernoulliRecursive(100))


class TestBivariate(unittest.TestCase):
    """
    Define our bivariate evaluation tests.
    """
    maxDiff = None

    def test_singlePoint(self):
        """Monomials 1, x, y, xy at (2, 3)."""
        spec = bivariateEvalSpec([(2, 3)], 2)
        self.assertEqual(denseFromSpec(spec).tolist(), [[1, 2, 3, 6]])

    def test_onesPoint(self):
        """Every monomial is one at (1, 1)."""
        spec = bivariateEvalSpec([(1, 1)], 3)
        self.assertEqual(denseFromSpec(spec).tolist(), [[1] * 9])

    def test_randomPoints(self):
        """The spec reproduces the monomial evaluation matrix and evaluates polynomials."""
        rng = SplitMix64(8)
        for d in (2, 3, 4):
            points = [(rng.residue(nonzero=True), rng.residue(nonzero=True)) for _ in range(d * d)]
            spec = bivariateEvalSpec(points, d)
            expected = bivariateMatrix(points, d)
            np.testing.assert_array_equal(denseFromSpec(spec), expected)
            f = rng.residues(d * d)
            x, y = points[0]
            direct = sum(int(f[a + d * b]) * powMod(x, a) * powMod(y, b) for a in range(d) for b in range(d)) % P
            result = forwardMult(spec, buildDyadicTree(spec), f)
            self.assertEqual(int(result[0]), direct)
            np.testing.assert_array_equal(result, matMul(expected, f))

    def test_zeroCoordinate(self):
        """Points on the axes are rejected."""
        with raises(SpecValidationError):
            bivariateEvalSpec([(0, 3)], 2)
