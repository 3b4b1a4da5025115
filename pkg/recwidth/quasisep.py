# -*- coding: utf-8 -*-
"""
Quasiseparable matrices and their resolvent.

A QuasiSep of order t is either a small dense leaf or a 2x2 block split
whose off-diagonal blocks are stored as factor pairs of width at most t:

    R = [[R11,        UU VU^T],
         [UL VL^T,    R22    ]]

resolvent(B, R, C) returns the rational matrix B^T (XI - R)^{-1} C as a
polynomial numerator matrix over the common denominator det(XI - R).
Children are combined by the Woodbury identity at enough field points and
interpolated back.
"""
from logging import getLogger

import numpy as np

from .config import settings
from .field import P, asVector, matMul, invArray
from .linalg import rankFactor, solveBatched, solve
from .poly import polyEval, polyEvalMany, interpolateMany, trim

logger = getLogger(__name__)

POINT_STRIDE = 1000003
POINT_OFFSET = 12345


def candidatePoints(count):
    """Deterministic, pairwise distinct field points for evaluation."""
    return (np.arange(count, dtype=np.int64) * POINT_STRIDE + POINT_OFFSET) % P


class QuasiSep(object):
    """
    Recursive quasiseparable representation.

    Leaves hold `block`; inner nodes hold `upper`, `lower` (the diagonal
    blocks) and the factor pairs UL, VL (lower-left block UL VL^T) and UU, VU
    (upper-right block UU VU^T).
    """

    def __init__(self, size, block=None, upper=None, lower=None, UL=None, VL=None, UU=None, VU=None):
        """Store either a dense leaf or a split node."""
        self.size = size
        self.block = None if block is None else asVector(block)
        self.upper, self.lower = upper, lower
        self.UL, self.VL, self.UU, self.VU = UL, VL, UU, VU
        if block is None:
            assert upper.size + lower.size == size
            self.order = max(UL.shape[1], UU.shape[1], upper.order, lower.order)
        else:
            assert self.block.shape == (size, size)
            self.order = 0

    @property
    def isLeaf(self):
        """True for dense leaves."""
        return self.block is not None

    @property
    def split(self):
        """Size of the leading diagonal block."""
        return self.upper.size

    @classmethod
    def fromDense(cls, a, order=None, leafSize=None):
        """
        Build the representation of a dense matrix.

        Off-diagonal blocks are factored exactly by rank, so `order` only
        steers the leaf size (settings.quasiLeafSize, else twice the order).
        """
        a = asVector(a)
        n = a.shape[0]
        if leafSize is None:
            if settings.quasiLeafSize is not None:
                leafSize = settings.quasiLeafSize
            else:
                if order is None:
                    half = n // 2
                    order = max(_blockRank(a[half:, :half]), _blockRank(a[:half, half:])) if n > 1 else 0
                leafSize = 2 * max(order, 1)
        if n <= max(leafSize, 1):
            return cls(n, block=a)
        half = n // 2
        UL, VLt = rankFactor(a[half:, :half])
        UU, VUt = rankFactor(a[:half, half:])
        return cls(n, upper=cls.fromDense(a[:half, :half], leafSize=leafSize),
                   lower=cls.fromDense(a[half:, half:], leafSize=leafSize),
                   UL=UL, VL=VLt.T.copy(), UU=UU, VU=VUt.T.copy())

    def dense(self):
        """Expand to a dense matrix."""
        if self.isLeaf:
            return self.block.copy()
        h = self.split
        out = np.zeros((self.size, self.size), dtype=np.int64)
        out[:h, :h] = self.upper.dense()
        out[h:, h:] = self.lower.dense()
        out[h:, :h] = matMul(self.UL, self.VL.T.copy())
        out[:h, h:] = matMul(self.UU, self.VU.T.copy())
        return out

    def matvec(self, x):
        """Product R x for a vector or a matrix of columns."""
        x = asVector(x)
        if self.isLeaf:
            return matMul(self.block, x)
        h = self.split
        top = (self.upper.matvec(x[:h]) + matMul(self.UU, matMul(self.VU.T.copy(), x[h:]))) % P
        bottom = (self.lower.matvec(x[h:]) + matMul(self.UL, matMul(self.VL.T.copy(), x[:h]))) % P
        return np.concatenate((top, bottom))

    def transpose(self):
        """Representation of R^T; the U and V roles of each factor pair swap."""
        if self.isLeaf:
            return QuasiSep(self.size, block=self.block.T.copy())
        return QuasiSep(self.size, upper=self.upper.transpose(), lower=self.lower.transpose(),
                        UL=self.VU, VL=self.UU, UU=self.VL, VU=self.UL)

    def charPoly(self):
        """det(XI - R), via the resolvent with empty side matrices."""
        empty = np.zeros((self.size, 0), dtype=np.int64)
        return resolvent(empty, self, empty)[1]

    def __repr__(self):
        return "QuasiSep(size={0}, order={1})".format(self.size, self.order)


def _blockRank(block):
    if not block.size:
        return 0
    return rankFactor(block)[0].shape[1]


def _goodPoints(count, *dens):
    """Candidate points where none of the denominators vanish."""
    points = candidatePoints(count)
    keep = np.ones(count, dtype=bool)
    for den in dens:
        keep &= polyEval(den, points) != 0
    return points[keep]


def _interpolate(points, numValues, denValues, n):
    """Back from point values to (num, den) with deg num < n and deg den = n."""
    num = interpolateMany(points, np.moveaxis(numValues, 0, -1))[..., :n]
    den = trim(interpolateMany(points, denValues))
    return num, den


def _leafResolvent(B, block, C):
    n = block.shape[0]
    points = candidatePoints(2 * n + 1)
    system = (points[:, None, None] * np.eye(n, dtype=np.int64) - block) % P
    rhs = np.broadcast_to(C, (len(points),) + C.shape)
    dets, sol = solveBatched(system, rhs)
    good = np.flatnonzero(dets)[:n + 1]
    assert len(good) == n + 1, "not enough evaluation points"
    values = matMul(B.T.copy(), sol[good]) * dets[good, None, None] % P
    return _interpolate(points[good], values, dets[good], n)


def resolvent(B, R, C):
    """
    Rational resolvent B^T (XI - R)^{-1} C.

    Returns (num, den) where den = det(XI - R) is monic of degree N and num
    is a (k, k2, N) array of numerator coefficients.
    """
    assert isinstance(R, QuasiSep)
    B, C = asVector(B), asVector(C)
    assert B.shape[0] == R.size and C.shape[0] == R.size
    if R.isLeaf:
        num, den = _leafResolvent(B, R.block, C)
    else:
        num, den = _splitResolvent(B, R, C)
    if settings.debug:
        _checkResolvent(B, R, C, num, den)
    return num, den


def _splitResolvent(B, R, C):
    n, h = R.size, R.split
    k, k2 = B.shape[1], C.shape[1]
    ql, qu = R.UL.shape[1], R.UU.shape[1]
    num1, den1 = resolvent(np.concatenate((B[:h], R.VL), axis=1), R.upper,
                           np.concatenate((C[:h], R.UU), axis=1))
    num2, den2 = resolvent(np.concatenate((B[h:], R.VU), axis=1), R.lower,
                           np.concatenate((C[h:], R.UL), axis=1))
    points = _goodPoints(3 * n + 1, den1, den2)
    d1 = polyEval(den1, points)
    d2 = polyEval(den2, points)
    # Values as (points, rows, cols).
    v1 = np.moveaxis(polyEvalMany(num1, points), -1, 0) * invArray(d1)[:, None, None] % P
    v2 = np.moveaxis(polyEvalMany(num2, points), -1, 0) * invArray(d2)[:, None, None] % P
    count = len(points)
    q = qu + ql
    woodbury = np.zeros((count, q, q), dtype=np.int64)
    woodbury[:, np.arange(q), np.arange(q)] = 1
    woodbury[:, :qu, qu:] = (-v2[:, k:, k2:]) % P
    woodbury[:, qu:, :qu] = (-v1[:, k:, k2:]) % P
    right = np.concatenate((v2[:, k:, :k2], v1[:, k:, :k2]), axis=1)
    dets, correction = solveBatched(woodbury, right)
    good = np.flatnonzero(dets)[:n + 1]
    assert len(good) == n + 1, "not enough evaluation points"
    logger.debug("resolvent of size %d: %d of %d points usable", n, len(good), count)
    left = np.concatenate((v1[good, :k, k2:], v2[good, :k, k2:]), axis=2)
    values = (v1[good, :k, :k2] + v2[good, :k, :k2] + matMul(left, correction[good])) % P
    denValues = d1[good] * d2[good] % P * dets[good] % P
    values = values * denValues[:, None, None] % P
    return _interpolate(points[good], values, denValues, n)


def _checkResolvent(B, R, C, num, den):
    """Compare against a dense solve at one field point."""
    xi = int(candidatePoints(R.size + 2)[-1])
    scale = int(polyEval(den, [xi])[0])
    if not scale:
        return
    system = (xi * np.eye(R.size, dtype=np.int64) - R.dense()) % P
    expected = matMul(B.T.copy(), solve(system, C)) * scale % P
    actual = polyEvalMany(num, [xi])[..., 0]
    assert np.array_equal(actual, expected), "resolvent mismatch at size {0}".format(R.size)
