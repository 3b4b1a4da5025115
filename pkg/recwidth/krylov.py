# -*- coding: utf-8 -*-
"""
Krylov matrices K(R, y), whose column j is R^j y.

Every descriptor kind gets a product K x and a transposed product K^T x:

  * Companion / Shift: multiplication y(X) x(X) modulo the modulus, and
    the transposed convolution against the recurrence-extended input.
  * Diagonal: evaluation at the diagonal, and fraction summation over the
    subproduct tree.
  * TriangularBand: the rows of K form a width-Delta recurrence modulo X^N,
    so both products run through the multiply module; upper bands are
    reversed into lower ones first.
  * Quasi: K^T x from the resolvent and one series inversion; K x by a
    Horner loop of quasiseparable products.
"""
from logging import getLogger

import numpy as np

from . import multiply
from .descriptors import RDescriptor, TriangularBand, Shift
from .field import P, asVector
from .poly import (Poly, EvalTree, trim, padTo, polyMul, polyRem, reverse, truncate, seriesInverse,
                   middleProduct, multipointEval, transposedEval)
from .quasisep import resolvent
from .recurrence import RecurrenceSpec, buildDyadicTree

logger = getLogger(__name__)


def charPoly(R):
    """Monic characteristic polynomial of a descriptor."""
    assert isinstance(R, RDescriptor)
    return Poly(R.charPoly)


def bandedKrylovSpec(M, y):
    """
    Recurrence whose rows are the rows of K(M, y) for a lower band M.

    (I - M X) F = y modulo X^N gives g_{i,0} = 1 - M[i,i] X and
    g_{i,k} = M[i, i-k] X, with error rank one generated by y.
    """
    assert isinstance(M, TriangularBand) and M.lower
    n = M.size
    y = asVector(y).reshape(n, 1)
    rows = []
    for i in range(n):
        row = [np.array([1, (-M.bands[0, i]) % P], dtype=np.int64)]
        for k in range(1, min(M.delta, i) + 1):
            row.append(np.array([0, M.bands[k, i]], dtype=np.int64))
        rows.append(tuple(row))
    D = np.zeros((1, n), dtype=np.int64)
    D[0, 0] = 1
    return RecurrenceSpec(rows=n, cols=n, width=M.delta, rank=1, degree=(0, 1), g=tuple(rows), C=y, D=D, R=Shift(n))


def _columns(x, fn):
    """Apply fn to every column when x is a matrix."""
    if x.ndim == 1:
        return fn(x)
    if not x.shape[1]:
        return x.copy()
    return np.stack([fn(x[:, c]) for c in range(x.shape[1])], axis=1)


class KrylovOperator(object):
    """
    K(R, y) with its per-kind precomputation.

    Band kinds keep the recurrence spec and its dyadic tree, diagonals keep
    the subproduct tree; the other kinds need nothing.
    """

    def __init__(self, R, y):
        """Prepare the operator."""
        assert isinstance(R, RDescriptor)
        self.R = R
        self.n = R.size
        self.y = asVector(y).reshape(-1)
        assert len(self.y) == self.n, "generator length must match the operator"
        self.kind = R.kind
        self.flipped = False
        if self.kind == 'band':
            band = R
            if not band.lower:
                band = band.flipped()
                self.flipped = True
            y = self.y[::-1].copy() if self.flipped else self.y
            self.spec = bandedKrylovSpec(band, y)
            self.tree = buildDyadicTree(self.spec)
        elif self.kind == 'diagonal':
            self.evalTree = EvalTree(R.points)

    def apply(self, x):
        """K x for a vector or a matrix of columns."""
        x = asVector(x)
        return getattr(self, '_apply_' + self.kind)(x)

    def applyTranspose(self, x):
        """K^T x for a vector or a matrix of columns."""
        x = asVector(x)
        return getattr(self, '_transpose_' + self.kind)(x)

    def _apply_companion(self, x):
        modulus = self.R.modulus
        y = trim(self.y)
        return _columns(x, lambda col: padTo(polyRem(polyMul(y, trim(col)), modulus), self.n))

    _apply_shift = _apply_companion

    def _transpose_companion(self, x):
        n = self.n
        y = trim(self.y)
        need = n + max(len(y) - 1, 0)

        def one(col):
            if self.kind == 'shift' or need <= n:
                seq = padTo(col, need)
            else:
                denominator = reverse(self.R.modulus, n)
                numerator = truncate(polyMul(trim(col), denominator), n)
                seq = padTo(polyMul(numerator, seriesInverse(denominator, need)), need)
            return middleProduct(y, seq, n)

        return _columns(x, one)

    _transpose_shift = _transpose_companion

    def _apply_diagonal(self, x):
        return _columns(x, lambda col: multipointEval(trim(col), self.evalTree) * self.y % P)

    def _transpose_diagonal(self, x):
        return _columns(x, lambda col: padTo(transposedEval(col, self.y, self.evalTree, self.n), self.n))

    def _apply_band(self, x):
        if self.flipped:
            return _columns(x, lambda col: multiply.forwardMult(self.spec, self.tree, col)[::-1].copy())
        return _columns(x, lambda col: multiply.forwardMult(self.spec, self.tree, col))

    def _transpose_band(self, x):
        if self.flipped:
            x = x[::-1].copy()
        if x.ndim == 1:
            return multiply.transposeMult(self.spec, self.tree, x)
        return multiply.transposeMultBatched(self.spec, self.tree, x)

    def _apply_quasi(self, x):
        def one(col):
            w = np.zeros(self.n, dtype=np.int64)
            for j in range(self.n - 1, -1, -1):
                w = (self.R.matvec(w) + col[j] * self.y) % P
            return w

        return _columns(x, one)

    def _transpose_quasi(self, x):
        n = self.n
        columns = x.reshape(n, -1)
        num, den = resolvent(columns, self.R.quasi(), self.y.reshape(n, 1))
        inverse = seriesInverse(reverse(den, n), n)
        out = np.zeros((n, columns.shape[1]), dtype=np.int64)
        for c in range(columns.shape[1]):
            out[:, c] = padTo(truncate(polyMul(reverse(trim(num[c, 0]), n - 1), inverse), n), n)
        return out[:, 0] if x.ndim == 1 else out


def krylovOperator(R, y):
    """KrylovOperator for (R, y), cached on the descriptor."""
    y = asVector(y).reshape(-1)
    cache = R.__dict__.setdefault('_krylovCache', {})
    key = y.tobytes()
    if key not in cache:
        cache[key] = KrylovOperator(R, y)
    return cache[key]


def krylovApply(R, y, x):
    """K(R, y) x; x may be a matrix of columns."""
    return krylovOperator(R, y).apply(x)


def krylovApplyTranspose(R, y, x):
    """K(R, y)^T x; x may be a matrix of columns."""
    return krylovOperator(R, y).applyTranspose(x)
