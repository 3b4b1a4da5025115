#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Tests the recurrence parameterisation and the dyadic tree.

These tests may all be executed by running tox from the
root level of the project.
"""
import unittest

import numpy as np
from pytest import raises

from ..apps import chebyshevSpec
from ..descriptors import Diagonal, Shift
from ..errors import LeadingCoefficientError, SpecValidationError
from ..field import P
from ..oracle import denseFromSpec
from ..polymat import pmIdentity, pmMul, pmPad, pmTrim
from ..poly import EMPTY, padTo, polyAdd, polyMul, polyNeg, polyRem
from ..recurrence import RecurrenceSpec, auditDegrees, basicSpec, buildDyadicTree, structureEntry, transition, \
    transitionArray
from ..rng import R_KINDS, SplitMix64, randomSpec


def one():
    return np.array([1], dtype=np.int64)


class TestRecurrenceSpec(unittest.TestCase):
    """
    Define our spec validation tests.
    """
    maxDiff = None

    def test_tooManyCoefficients(self):
        """Row i may only reach back min(t, i) rows."""
        with raises(SpecValidationError):
            RecurrenceSpec(rows=2, cols=2, width=1, rank=1, degree=(1, 0), g=((one(), [0, 1]), (one(), [0, 1])),
                           C=[[1], [0]], D=[[1, 0]], R=Shift(2))

    def test_degreeBound(self):
        """deg g_{i,j} is bounded by d j + dbar."""
        with raises(SpecValidationError):
            RecurrenceSpec(rows=2, cols=2, width=1, rank=1, degree=(1, 0), g=((one(),), (one(), [0, 0, 1])),
                           C=[[1], [0]], D=[[1, 0]], R=Shift(2))

    def test_descriptorSize(self):
        """R must match the column count."""
        with raises(SpecValidationError):
            RecurrenceSpec(rows=1, cols=3, width=0, rank=1, degree=(1, 0), g=((one(),),), C=[[1]], D=[[1, 0]],
                           R=Shift(2))

    def test_leadingCoefficient(self):
        """A leading coefficient vanishing on the spectrum of R is rejected."""
        with raises(LeadingCoefficientError):
            RecurrenceSpec(rows=1, cols=2, width=0, rank=1, degree=(0, 1), g=(([0, 1],),), C=[[1]], D=[[1, 1]],
                           R=Shift(2))
        with raises(LeadingCoefficientError):
            RecurrenceSpec(rows=1, cols=2, width=0, rank=1, degree=(0, 1), g=(([P - 5, 1],),), C=[[1]], D=[[1, 1]],
                           R=Diagonal([5, 6]))


class TestTransitions(unittest.TestCase):
    """
    Define our transition and tree tests.
    """
    maxDiff = None

    def test_chebyshevTransition(self):
        """Rows two and up give [[0, 1], [-1, 2X]]."""
        spec = chebyshevSpec(5)
        for i in range(2, 5):
            T = transition(spec, i)
            self.assertEqual([[p.tolist() for p in row] for row in T], [[[], [1]], [[P - 1], [0, 2]]])
        T = transition(spec, 1)
        self.assertEqual([[p.tolist() for p in row] for row in T], [[[], [1]], [[], [0, 1]]])
        with raises(IndexError):
            transition(spec, 0)

    def test_widthOneTransition(self):
        """A single-term recurrence has 1 x 1 transitions."""
        spec = basicSpec([[1]], [()] + [(np.array([0, 1]),)] * 3, 4)
        T = transition(spec, 2)
        self.assertEqual([[p.tolist() for p in row] for row in T], [[[0, 1]]])
        np.testing.assert_array_equal(denseFromSpec(spec), np.eye(4, dtype=np.int64))

    def test_leafProducts(self):
        """Level zero of the tree holds the transitions themselves."""
        spec = chebyshevSpec(8)
        tree = buildDyadicTree(spec)
        trans = transitionArray(spec)
        for k in range(8):
            leaf = tree.rangedProduct(k, k + 1)
            length = max(leaf.shape[-1], trans.shape[-1])
            np.testing.assert_array_equal(pmPad(leaf, length), pmPad(trans[k], length))

    def test_chebyshevPair(self):
        """T_[2:4] = T_3 T_2 = [[-1, 2X], [-2X, 4X^2 - 1]]."""
        tree = buildDyadicTree(chebyshevSpec(8))
        block = pmPad(tree.rangedProduct(2, 4), 3)
        expected = np.array([[[P - 1, 0, 0], [0, 2, 0]], [[0, P - 2, 0], [P - 1, 0, 4]]], dtype=np.int64)
        np.testing.assert_array_equal(block, expected)

    def test_rootMatchesSequentialProduct(self):
        """The root of the tree is the plain left-to-right product."""
        rng = SplitMix64(11)
        spec = randomSpec(rng, 16, 2, 1, kind='diagonal')
        tree = buildDyadicTree(spec)
        trans = transitionArray(spec)
        product = pmIdentity(2)
        for k in range(spec.paddedRows):
            product = pmTrim(pmMul(trans[k], product))
        root = tree.rangedProduct(0, spec.paddedRows)
        length = max(root.shape[-1], product.shape[-1])
        np.testing.assert_array_equal(pmPad(root, length), pmPad(product, length))

    def test_degreeAudit(self):
        """Every stored product respects its degree bound."""
        rng = SplitMix64(5)
        for kind, degree in (('shift', (1, 0)), ('diagonal', (1, 1)), ('band', (2, 0))):
            spec = randomSpec(rng, 32, 3, 2, kind=kind, degree=degree)
            self.assertTrue(auditDegrees(buildDyadicTree(spec)))

    def test_degreeAuditExhaustive(self):
        """Degree bounds at every size up to 256 and every width up to 4."""
        for n in (8, 16, 32, 64, 128, 256):
            for t in range(1, 5):
                rng = SplitMix64(n * 8 + t)
                self.assertTrue(auditDegrees(buildDyadicTree(randomSpec(rng, n, t, 1))), (n, t))
                if n <= 64:
                    spec = randomSpec(rng, n, t, 2, kind='diagonal', degree=(1, 1))
                    self.assertTrue(auditDegrees(buildDyadicTree(spec)), (n, t, 'diagonal'))


class TestStructureEntry(unittest.TestCase):
    """
    Define our structure entry tests.
    """
    maxDiff = None

    def test_chebyshevEntries(self):
        """h_{2,0} = 2X^2 - 1, unit diagonal, zero above."""
        spec = chebyshevSpec(4)
        tree = buildDyadicTree(spec)
        self.assertEqual(structureEntry(spec, tree, 2, 0).tolist(), [P - 1, 0, 2])
        self.assertEqual(structureEntry(spec, tree, 3, 3).tolist(), [1])
        self.assertTrue(structureEntry(spec, tree, 1, 2).isZero())

    def test_firstColumnIsTheMatrix(self):
        """With C = e_0 and D = e_0 the rows are the entries h_{i,0}."""
        spec = chebyshevSpec(6)
        tree = buildDyadicTree(spec)
        dense = denseFromSpec(spec)
        for i in range(6):
            np.testing.assert_array_equal(padTo(structureEntry(spec, tree, i, 0).coeffs, 6), dense[i])

    def test_inverseOfRecurrenceMatrix(self):
        """H G = I modulo c_R for every operator kind."""
        for kind in R_KINDS:
            rng = SplitMix64(90 + R_KINDS.index(kind))
            n = 10
            spec = randomSpec(rng, n, 2, 1, kind=kind)
            tree = buildDyadicTree(spec)
            modulus = spec.modulus
            H = [[structureEntry(spec, tree, i, j).coeffs for j in range(n)] for i in range(n)]
            G = [[EMPTY] * n for _ in range(n)]
            for i, row in enumerate(spec.g):
                G[i][i] = row[0]
                for j in range(1, len(row)):
                    G[i][i - j] = polyNeg(row[j])
            for i in range(n):
                for k in range(n):
                    total = EMPTY
                    for j in range(k, i + 1):
                        total = polyAdd(total, polyMul(H[i][j], G[j][k]))
                    expected = [1] if i == k else []
                    self.assertEqual(polyRem(total, modulus).tolist(), expected, (kind, i, k))
