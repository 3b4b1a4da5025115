# -*- coding: utf-8 -*-
"""
Descriptors of the structured operator R (and of L in displacement reps).

Five kinds are supported: Companion (multiplication by X modulo a monic
polynomial), Shift (the companion of X^N), Diagonal, TriangularBand and Quasi
(a QuasiSep).  Every descriptor knows its size, characteristic polynomial,
dense form, action on vectors, transpose and a 2x2 block split with factored
off-diagonal blocks.
"""
from functools import cached_property
from logging import getLogger

import numpy as np

from .errors import SpecValidationError
from .field import P, asVector, matMul
from .linalg import rankFactor
from .poly import asPoly, monomial, productOfLinear
from .quasisep import QuasiSep

logger = getLogger(__name__)


class RDescriptor(object):
    """Common interface; subclasses set `kind` and implement the details."""

    kind = None
    modular = False

    @property
    def size(self):
        """Dimension N."""
        raise NotImplementedError

    @cached_property
    def charPoly(self):
        """Monic characteristic polynomial det(XI - R)."""
        return self._charPoly()

    def _charPoly(self):
        raise NotImplementedError

    def dense(self):
        """Dense N x N matrix."""
        raise NotImplementedError

    def matvec(self, x):
        """R x for a vector or a matrix of columns."""
        return matMul(self.dense(), asVector(x))

    def transpose(self):
        """Descriptor of R^T."""
        raise NotImplementedError

    def bandForm(self):
        """(bands, lower) for triangular band kinds, else None."""
        return None

    def quasi(self):
        """QuasiSep form of the operator."""
        return QuasiSep.fromDense(self.dense())

    def split(self, n1):
        """
        Block split at n1.

        Returns (R11, R22, UL, VL, UU, VU) with R21 = UL VL^T and
        R12 = UU VU^T.
        """
        return _splitDense(self.dense(), n1)

    def __repr__(self):
        return "{0}(size={1})".format(type(self).__name__, self.size)


def _splitDense(a, n1):
    UL, VLt = rankFactor(a[n1:, :n1])
    UU, VUt = rankFactor(a[:n1, n1:])
    return (Quasi(QuasiSep.fromDense(a[:n1, :n1])), Quasi(QuasiSep.fromDense(a[n1:, n1:])),
            UL, VLt.T.copy(), UU, VUt.T.copy())


class Companion(RDescriptor):
    """Multiplication by X on coefficient vectors, modulo a monic modulus."""

    kind = 'companion'
    modular = True

    def __init__(self, modulus):
        """modulus must be monic of degree N >= 1."""
        self.modulus = asPoly(modulus)
        if len(self.modulus) < 2 or self.modulus[-1] != 1:
            raise SpecValidationError("companion modulus must be monic of positive degree")

    @property
    def size(self):
        return len(self.modulus) - 1

    def _charPoly(self):
        return self.modulus

    def dense(self):
        n = self.size
        out = np.zeros((n, n), dtype=np.int64)
        out[np.arange(1, n), np.arange(n - 1)] = 1
        out[:, n - 1] = (-self.modulus[:n]) % P
        return out

    def matvec(self, x):
        x = asVector(x)
        top = x[-1]
        shifted = np.concatenate((np.zeros((1,) + x.shape[1:], dtype=np.int64), x[:-1]))
        if x.ndim == 1:
            return (shifted - top * self.modulus[:-1]) % P
        return (shifted - np.outer(self.modulus[:-1], top) % P) % P

    def transpose(self):
        return Quasi(QuasiSep.fromDense(self.dense().T.copy(), order=1))

    def quasi(self):
        return QuasiSep.fromDense(self.dense(), order=1)


class Shift(Companion):
    """The down-shift, companion of X^N."""

    kind = 'shift'

    def __init__(self, n):
        """N x N shift."""
        Companion.__init__(self, monomial(n))

    def matvec(self, x):
        x = asVector(x)
        return np.concatenate((np.zeros((1,) + x.shape[1:], dtype=np.int64), x[:-1]))

    def bandForm(self):
        bands = np.zeros((2, self.size), dtype=np.int64)
        bands[1, 1:] = 1
        return bands, True

    def transpose(self):
        return TriangularBand(*_transposeBands(*self.bandForm()))

    def split(self, n1):
        return TriangularBand(*self.bandForm()).split(n1)


class Diagonal(RDescriptor):
    """diag(z_0, ..., z_{N-1})."""

    kind = 'diagonal'

    def __init__(self, points):
        """Store the diagonal."""
        self.points = asVector(points).reshape(-1)

    @property
    def size(self):
        return len(self.points)

    def _charPoly(self):
        return productOfLinear(self.points)

    def dense(self):
        return np.diag(self.points)

    def matvec(self, x):
        x = asVector(x)
        if x.ndim == 1:
            return x * self.points % P
        return x * self.points[:, None] % P

    def transpose(self):
        return self

    def bandForm(self):
        return self.points.reshape(1, -1).copy(), True

    def split(self, n1):
        empty1 = np.zeros((n1, 0), dtype=np.int64)
        empty2 = np.zeros((self.size - n1, 0), dtype=np.int64)
        return Diagonal(self.points[:n1]), Diagonal(self.points[n1:]), empty2, empty1, empty1, empty2


def _transposeBands(bands, lower):
    """Bands of the transpose: row i of diagonal k moves to row i - k (or i + k)."""
    width, n = bands.shape
    out = np.zeros_like(bands)
    for k in range(width):
        if lower:
            out[k, :n - k] = bands[k, k:]
        else:
            out[k, k:] = bands[k, :n - k]
    return out, not lower


class TriangularBand(RDescriptor):
    """
    Triangular matrix with Delta+1 nonzero diagonals.

    bands[k, i] is entry (i, i - k) of a lower band or (i, i + k) of an upper
    one; slots falling outside the matrix must be zero.
    """

    kind = 'band'

    def __init__(self, bands, lower=True):
        """Validate and store the diagonals."""
        self.bands = asVector(bands)
        if self.bands.ndim != 2 or not self.bands.shape[0]:
            raise SpecValidationError("band data must have shape (Delta+1, N)")
        self.lower = bool(lower)
        n = self.size
        for k in range(1, self.bands.shape[0]):
            outside = self.bands[k, :k] if self.lower else self.bands[k, n - k:]
            if np.any(outside):
                raise SpecValidationError("band entries outside the matrix")

    @property
    def size(self):
        return self.bands.shape[1]

    @property
    def delta(self):
        """Number of off-diagonals."""
        return self.bands.shape[0] - 1

    def _charPoly(self):
        return productOfLinear(self.bands[0])

    def dense(self):
        n = self.size
        out = np.zeros((n, n), dtype=np.int64)
        for k in range(self.bands.shape[0]):
            rows = np.arange(k, n) if self.lower else np.arange(n - k)
            cols = rows - k if self.lower else rows + k
            out[rows, cols] = self.bands[k, rows]
        return out

    def matvec(self, x):
        x = asVector(x)
        n = self.size
        out = np.zeros_like(x)
        for k in range(self.bands.shape[0]):
            coeff = self.bands[k] if x.ndim == 1 else self.bands[k][:, None]
            if self.lower:
                out[k:] = (out[k:] + coeff[k:] * x[:n - k]) % P
            else:
                out[:n - k] = (out[:n - k] + coeff[:n - k] * x[k:]) % P
        return out

    def transpose(self):
        return TriangularBand(*_transposeBands(self.bands, self.lower))

    def flipped(self):
        """J M J, which turns an upper band into a lower one and back."""
        return TriangularBand(self.bands[:, ::-1].copy(), lower=not self.lower)

    def bandForm(self):
        return self.bands, self.lower

    def quasi(self):
        return QuasiSep.fromDense(self.dense(), order=max(self.delta, 1))

    def split(self, n1):
        n, delta = self.size, self.delta
        top = self.bands[:, :n1].copy()
        bottom = self.bands[:, n1:].copy()
        corner = min(delta, n1, n - n1)
        UL = np.zeros((n - n1, 0), dtype=np.int64)
        VL = np.zeros((n1, 0), dtype=np.int64)
        UU = np.zeros((n1, 0), dtype=np.int64)
        VU = np.zeros((n - n1, 0), dtype=np.int64)
        if self.lower:
            for k in range(1, delta + 1):
                bottom[k, :k] = 0
            if corner:
                block = self.dense()[n1:n1 + corner, n1 - corner:n1]
                left, right = rankFactor(block)
                UL = np.zeros((n - n1, left.shape[1]), dtype=np.int64)
                UL[:corner] = left
                VL = np.zeros((n1, left.shape[1]), dtype=np.int64)
                VL[n1 - corner:] = right.T
        else:
            for k in range(1, delta + 1):
                top[k, n1 - k:] = 0
            if corner:
                block = self.dense()[n1 - corner:n1, n1:n1 + corner]
                left, right = rankFactor(block)
                UU = np.zeros((n1, left.shape[1]), dtype=np.int64)
                UU[n1 - corner:] = left
                VU = np.zeros((n - n1, left.shape[1]), dtype=np.int64)
                VU[:corner] = right.T
        return (TriangularBand(top, self.lower), TriangularBand(bottom, self.lower), UL, VL, UU, VU)


class Quasi(RDescriptor):
    """Operator given by a QuasiSep."""

    kind = 'quasi'

    def __init__(self, matrix):
        """Wrap a QuasiSep (dense arrays are converted)."""
        self.matrix = matrix if isinstance(matrix, QuasiSep) else QuasiSep.fromDense(matrix)

    @property
    def size(self):
        return self.matrix.size

    def _charPoly(self):
        return self.matrix.charPoly()

    def dense(self):
        return self.matrix.dense()

    def matvec(self, x):
        return self.matrix.matvec(x)

    def transpose(self):
        return Quasi(self.matrix.transpose())

    def quasi(self):
        return self.matrix

    def split(self, n1):
        m = self.matrix
        if m.isLeaf or m.split != n1:
            return _splitDense(m.dense(), n1)
        return Quasi(m.upper), Quasi(m.lower), m.UL, m.VL, m.UU, m.VU


def isBand(descriptor):
    """True for kinds with a triangular band form (diagonal and shift included)."""
    return descriptor.bandForm() is not None
