#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Tests the Krylov products and characteristic polynomials.

These tests may all be executed by running tox from the
root level of the project.
"""
import unittest

import numpy as np

from ..descriptors import Companion, Diagonal, Quasi, Shift, TriangularBand
from ..field import P, dot, matMul
from ..krylov import bandedKrylovSpec, charPoly, krylovApply, krylovApplyTranspose
from ..oracle import denseCharPoly, denseFromSpec, denseKrylov
from ..poly import padTo, polyMul, polyRem, trim
from ..rng import R_KINDS, SplitMix64, randomDescriptor, randomQuasiSep


class TestKrylov(unittest.TestCase):
    """
    Define our Krylov tests.
    """
    maxDiff = None

    def test_prefixSums(self):
        """K(S, ones) is lower triangular Toeplitz, so K x is a prefix sum."""
        self.assertEqual(krylovApply(Shift(3), [1, 1, 1], [1, 2, 3]).tolist(), [1, 3, 6])

    def test_diagonal(self):
        """K(diag(2, 3), (1, 1)) = [[1, 2], [1, 3]]."""
        R = Diagonal([2, 3])
        self.assertEqual(krylovApply(R, [1, 1], [1, 1]).tolist(), [3, 4])
        self.assertEqual(krylovApplyTranspose(R, [1, 1], [1, 1]).tolist(), [2, 5])

    def test_companionProduct(self):
        """Companion Krylov products multiply polynomials modulo the modulus."""
        modulus = np.array([3, 0, 5, 1], dtype=np.int64)
        d = np.array([1, 2, 3], dtype=np.int64)
        x = np.array([4, 0, 7], dtype=np.int64)
        expected = padTo(polyRem(polyMul(d, trim(x)), modulus), 3)
        np.testing.assert_array_equal(krylovApply(Companion(modulus), d, x), expected)

    def test_everyKindMatchesDense(self):
        """K x and K^T x against the dense Krylov matrix, column batches included."""
        for kind in R_KINDS:
            rng = SplitMix64(40 + R_KINDS.index(kind))
            R = randomDescriptor(rng, kind, 16, delta=2)
            y = rng.residues(16)
            K = denseKrylov(R, y)
            x = rng.residues(16, 3)
            np.testing.assert_array_equal(krylovApply(R, y, x), matMul(K, x))
            np.testing.assert_array_equal(krylovApplyTranspose(R, y, x), matMul(K.T.copy(), x))
            np.testing.assert_array_equal(krylovApply(R, y, np.eye(16, dtype=np.int64)), K)

    def test_upperBand(self):
        """Upper bands are handled through the flipped lower band."""
        rng = SplitMix64(9)
        lower = randomDescriptor(rng, 'band', 12, delta=2)
        upper = lower.transpose()
        self.assertFalse(upper.lower)
        y, x = rng.residues(12), rng.residues(12)
        K = denseKrylov(upper, y)
        np.testing.assert_array_equal(krylovApply(upper, y, x), matMul(K, x))
        np.testing.assert_array_equal(krylovApplyTranspose(upper, y, x), matMul(K.T.copy(), x))

    def test_adjoint(self):
        """<c, K x> = <x, K^T c> at N = 1024."""
        for kind in ('shift', 'companion', 'diagonal', 'band'):
            rng = SplitMix64(100 + R_KINDS.index(kind))
            R = randomDescriptor(rng, kind, 1024, delta=1)
            y, x, c = rng.residues(1024), rng.residues(1024), rng.residues(1024)
            self.assertEqual(dot(c, krylovApply(R, y, x)), dot(x, krylovApplyTranspose(R, y, c)))


class TestBandedSpec(unittest.TestCase):
    """
    Define our banded Krylov recurrence tests.
    """
    maxDiff = None

    def test_smallBand(self):
        """M = [[1, 0], [1, 1]] and y = e_0 give K = [[1, 1], [0, 1]]."""
        M = TriangularBand([[1, 1], [0, 1]], lower=True)
        np.testing.assert_array_equal(denseFromSpec(bandedKrylovSpec(M, [1, 0])), [[1, 1], [0, 1]])

    def test_zeroOperator(self):
        """M = 0 leaves only the first column."""
        M = TriangularBand(np.zeros((1, 3), dtype=np.int64))
        expected = np.zeros((3, 3), dtype=np.int64)
        expected[:, 0] = [4, 5, 6]
        np.testing.assert_array_equal(denseFromSpec(bandedKrylovSpec(M, [4, 5, 6])), expected)

    def test_shiftBasis(self):
        """M = S with y = e_0 gives the identity."""
        M = TriangularBand([[0, 0, 0, 0], [0, 1, 1, 1]])
        np.testing.assert_array_equal(denseFromSpec(bandedKrylovSpec(M, [1, 0, 0, 0])), np.eye(4, dtype=np.int64))


class TestCharPoly(unittest.TestCase):
    """
    Define our characteristic polynomial tests.
    """
    maxDiff = None

    def test_small(self):
        """Diagonal and shift examples."""
        self.assertEqual(charPoly(Diagonal([1, 2])).tolist(), [2, P - 3, 1])
        self.assertEqual(charPoly(Shift(3)).tolist(), [0, 0, 0, 1])

    def test_quasiseparable(self):
        """A random order-two quasiseparable matrix against evaluation and interpolation."""
        rng = SplitMix64(31)
        R = Quasi(randomQuasiSep(rng, 8, order=2))
        self.assertEqual(charPoly(R).tolist(), denseCharPoly(R).tolist())

    def test_cayleyHamilton(self):
        """c_R(R) v = 0 for every kind."""
        for kind in R_KINDS:
            rng = SplitMix64(60 + R_KINDS.index(kind))
            R = randomDescriptor(rng, kind, 10, delta=2)
            dense = R.dense()
            v = rng.residues(10)
            total = np.zeros(10, dtype=np.int64)
            for c in R.charPoly[::-1]:
                total = (matMul(dense, total) + c * v) % P
            self.assertFalse(total.any())
