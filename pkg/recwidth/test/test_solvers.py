#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Tests the triangular solver, generator compression and displacement inversion.

These tests may all be executed by running tox from the
root level of the project.
"""
import unittest

import numpy as np
from pytest import raises

from ..apps import chebyshevSpec
from ..config import configure, settings
from ..descriptors import Diagonal
from ..displacement import DisplacementRep, SYLVESTER, STEIN
from ..errors import NotStronglyRegularError, SingularMatrixError, SpecValidationError
from ..field import P, inv, matMul
from ..multiply import forwardMult, transposeMult
from ..oracle import denseFromDisplacement, denseFromSpec
from ..recurrence import basicSpec, buildDyadicTree
from ..rng import SplitMix64, randomRep, randomSpec, randomTriangularSpec
from ..solvers import displacementInverse, generatorCompress, rootBlock, triangularSolve


def cauchy():
    """L = diag(2, 3), R = diag(0, 1), C D = ones."""
    return DisplacementRep(op=SYLVESTER, L=Diagonal([2, 3]), R=Diagonal([0, 1]), C=[[1], [1]], D=[[1, 1]])


class TestTriangularSolve(unittest.TestCase):
    """
    Define our triangular solver tests.
    """
    maxDiff = None

    def test_identity(self):
        """The identity spec returns the right-hand side."""
        spec = basicSpec([[1]], [()] + [(np.array([0, 1]),)] * 7, 8)
        y = np.arange(8, dtype=np.int64)
        self.assertEqual(triangularSolve(spec, y).tolist(), y.tolist())
        self.assertEqual(triangularSolve(spec, y, transposed=True).tolist(), y.tolist())

    def test_chebyshev(self):
        """A^T e_2 is the coefficient row of T_2."""
        spec = chebyshevSpec(4)
        self.assertEqual(triangularSolve(spec, [P - 1, 0, 2, 0]).tolist(), [0, 0, 1, 0])
        self.assertEqual(triangularSolve(spec, [0, 0, 2, 0], transposed=True).tolist(), [0, 0, 1, 0])

    def test_singular(self):
        """A row whose degree falls short of its index is singular."""
        g = [(), (np.array([0, 1]),), (np.array([1]),), (np.array([0, 1]),)]
        spec = basicSpec([[1]], g, 4)
        with raises(SingularMatrixError):
            triangularSolve(spec, [1, 2, 3, 4])

    def test_randomSpecsAreNonsingular(self):
        """Random triangular specs keep a nonzero diagonal across many seeds."""
        for seed in range(40):
            for t in (1, 2, 3):
                dense = denseFromSpec(randomTriangularSpec(SplitMix64(seed), 12, t))
                self.assertTrue(np.all(np.diagonal(dense) != 0), (seed, t))

    def test_unsupportedSpec(self):
        """Only square degree-(1, 0) recurrences modulo X^N are accepted."""
        rng = SplitMix64(4)
        with raises(SpecValidationError):
            triangularSolve(randomSpec(rng, 8, 1, 1, kind='diagonal'), np.zeros(8, dtype=np.int64))


class TestRecursiveSolve(unittest.TestCase):
    """
    Define our residual checks through the recursive path.
    """
    maxDiff = None

    def setUp(self):
        """Small leaves force several levels of splitting."""
        self.saved = settings.leafBlock
        configure(leafBlock=2)

    def tearDown(self):
        """Restore the leaf size."""
        configure(leafBlock=self.saved)

    def test_againstDense(self):
        """Solutions of both orientations against the dense matrix."""
        for n, t in ((16, 1), (16, 2), (37, 3), (8, 4)):
            rng = SplitMix64(n * 10 + t)
            spec = randomTriangularSpec(rng, n, t)
            dense = denseFromSpec(spec)
            y = rng.residues(n)
            np.testing.assert_array_equal(matMul(dense.T.copy(), triangularSolve(spec, y)), y)
            np.testing.assert_array_equal(matMul(dense, triangularSolve(spec, y, transposed=True)), y)

    def test_blocksMatchDense(self):
        """Every split reproduces the diagonal blocks and the lower-left block of the matrix."""
        for t in (1, 2, 3):
            rng = SplitMix64(500 + t)
            spec = randomTriangularSpec(rng, 32, t)
            dense = denseFromSpec(spec)
            root = rootBlock(spec)
            np.testing.assert_array_equal(root.dense(), dense)
            pending = [root]
            while pending:
                block = pending.pop()
                if block.isBase():
                    continue
                s, h = block.start, block.size // 2
                top, bottom, coupling, column = block.split()
                np.testing.assert_array_equal(top.dense(), dense[s:s + h, s:s + h])
                np.testing.assert_array_equal(bottom.dense(), dense[s + h:s + 2 * h, s + h:s + 2 * h])
                np.testing.assert_array_equal(denseFromSpec(coupling)[:, column:column + h],
                                              dense[s + h:s + 2 * h, s:s + h])
                pending += [top, bottom]

    def test_unevenRoot(self):
        """A size that is not a power of two is padded below and to the right."""
        spec = randomTriangularSpec(SplitMix64(37), 37, 2)
        np.testing.assert_array_equal(rootBlock(spec).dense()[:37, :37], denseFromSpec(spec))

    def test_residual(self):
        """transposeMult undoes the solve at N = 64, 256 and 1024."""
        for n in (64, 256, 1024):
            rng = SplitMix64(n)
            spec = randomTriangularSpec(rng, n, 2)
            tree = buildDyadicTree(spec)
            y = rng.residues(n)
            block = rootBlock(spec)
            np.testing.assert_array_equal(transposeMult(spec, tree, triangularSolve(spec, y, block=block)), y)
            np.testing.assert_array_equal(forwardMult(spec, tree, triangularSolve(spec, y, True, block)), y)


class TestGeneratorCompress(unittest.TestCase):
    """
    Define our generator compression tests.
    """
    maxDiff = None

    def test_rankOne(self):
        """A duplicated column collapses."""
        G = np.array([[1, 1], [2, 2]], dtype=np.int64)
        newG, newH = generatorCompress(G, np.eye(2, dtype=np.int64))
        self.assertEqual(newG.tolist(), [[1], [2]])
        self.assertEqual(newH.tolist(), [[1], [1]])

    def test_fullRank(self):
        """A minimal pair keeps its width and its product."""
        G = np.eye(2, dtype=np.int64)
        H = np.array([[1, 2], [3, 4]], dtype=np.int64)
        newG, newH = generatorCompress(G, H)
        self.assertEqual(newG.shape, (2, 2))
        np.testing.assert_array_equal(matMul(newG, newH.T.copy()), matMul(G, H.T.copy()))

    def test_zero(self):
        """The zero product has empty factors."""
        newG, newH = generatorCompress(np.zeros((3, 2), dtype=np.int64), np.ones((3, 2), dtype=np.int64))
        self.assertEqual(newG.shape, (3, 0))
        self.assertEqual(newH.shape, (3, 0))

    def test_random(self):
        """Redundant random generators shrink to the rank of their product."""
        rng = SplitMix64(19)
        base = rng.residues(10, 2)
        G = np.concatenate((base, matMul(base, rng.residues(2, 3))), axis=1)
        H = rng.residues(10, 5)
        newG, newH = generatorCompress(G, H)
        self.assertEqual(newG.shape[1], 2)
        np.testing.assert_array_equal(matMul(newG, newH.T.copy()), matMul(G, H.T.copy()))


class TestDisplacementInverse(unittest.TestCase):
    """
    Define our displacement inversion tests.
    """
    maxDiff = None

    def test_cauchy(self):
        """The 2 x 2 Cauchy matrix and the generators of its inverse."""
        inverse = displacementInverse(cauchy())
        expected = np.array([[-6, 12], [4, -6]], dtype=np.int64) % P
        np.testing.assert_array_equal(denseFromDisplacement(inverse), expected)
        residual = np.array([[12, -36], [-4, 12]], dtype=np.int64) % P
        np.testing.assert_array_equal(matMul(inverse.C, inverse.D), residual)
        self.assertEqual(inverse.rank, 1)

    def test_scalar(self):
        """A 1 x 1 representation inverts to 1 / A."""
        rep = DisplacementRep(op=SYLVESTER, L=Diagonal([2]), R=Diagonal([1]), C=[[3]], D=[[5]])
        inverse = displacementInverse(rep)
        self.assertEqual(denseFromDisplacement(inverse).tolist(), [[inv(15)]])

    def test_notStronglyRegular(self):
        """A zero leading entry is reported."""
        rep = DisplacementRep(op=SYLVESTER, L=Diagonal([2, 3]), R=Diagonal([0, 1]), C=[[0, 1], [1, 0]],
                              D=[[1, 0], [0, 1]])
        with raises(NotStronglyRegularError):
            displacementInverse(rep)

    def test_steinRejected(self):
        """Inversion works on Sylvester representations only."""
        rep = DisplacementRep(op=STEIN, L=Diagonal([2, 3]), R=Diagonal([5, 7]), C=[[1], [1]], D=[[1, 1]])
        with raises(SpecValidationError):
            displacementInverse(rep)

    def test_randomReps(self):
        """dense(inverse) dense(A) = I for banded, diagonal and quasiseparable operators."""
        for leftKind, rightKind, n in (('band', 'band', 16), ('diagonal', 'diagonal', 13), ('quasi', 'quasi', 12)):
            rng = SplitMix64(n + len(leftKind))
            rep = randomRep(rng, n, 1, leftKind=leftKind, rightKind=rightKind)
            inverse = displacementInverse(rep)
            product = matMul(denseFromDisplacement(inverse), denseFromDisplacement(rep))
            np.testing.assert_array_equal(product, np.eye(n, dtype=np.int64))
            self.assertLessEqual(inverse.rank, rep.rank)
