# -*- coding: utf-8 -*-
"""
Dense Gaussian elimination over F_p.

Row operations are applied to whole numpy rows at a time; every product of
two residues fits in int64 so an outer-product update followed by a
reduction is exact.
"""
from logging import getLogger

import numpy as np

from .errors import SingularMatrixError, NotStronglyRegularError
from .field import P, inv, invArray, asVector, matMul

logger = getLogger(__name__)


def rref(a, limit=None):
    """
    Reduced row echelon form.

    Pivots are searched only in the first `limit` columns (all of them by
    default), which lets callers reduce an augmented matrix.  Returns the
    reduced matrix and the list of pivot columns.
    """
    work = asVector(a).copy()
    rows, cols = work.shape
    limit = cols if limit is None else limit
    pivots = []
    row = 0
    for col in range(limit):
        if row == rows:
            break
        nonzero = np.flatnonzero(work[row:, col])
        if not nonzero.size:
            continue
        pick = row + nonzero[0]
        if pick != row:
            work[[row, pick]] = work[[pick, row]]
        work[row] = work[row] * inv(work[row, col]) % P
        factors = work[:, col].copy()
        factors[row] = 0
        work = (work - np.outer(factors, work[row]) % P) % P
        pivots.append(col)
        row += 1
    return work, pivots


def rank(a):
    """Rank of a matrix."""
    a = asVector(a)
    if not a.size:
        return 0
    return len(rref(a)[1])


def solve(a, y):
    """
    Solve a x = y for square nonsingular a.

    y may be a vector or a matrix of right-hand sides.
    """
    a = asVector(a)
    n = a.shape[0]
    assert a.shape == (n, n), "square matrix expected"
    y = asVector(y)
    vector = y.ndim == 1
    rhs = y.reshape(n, -1)
    reduced, pivots = rref(np.concatenate((a, rhs), axis=1), limit=n)
    if len(pivots) < n:
        raise SingularMatrixError()
    x = reduced[:, n:]
    return x[:, 0] if vector else x


def solveConsistent(a, y):
    """
    Any solution of a x = y, or None when the system is inconsistent.

    Free variables are set to zero.
    """
    a = asVector(a)
    rows, cols = a.shape
    reduced, pivots = rref(np.concatenate((a, asVector(y).reshape(rows, 1)), axis=1), limit=cols + 1)
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, col in enumerate(pivots):
        x[col] = reduced[row, cols]
    return x


def inverse(a):
    """Inverse of a square matrix."""
    a = asVector(a)
    return solve(a, np.eye(a.shape[0], dtype=np.int64))


def det(a):
    """Determinant by elimination with row swaps."""
    work = asVector(a).copy()
    n = work.shape[0]
    result = 1
    for col in range(n):
        nonzero = np.flatnonzero(work[col:, col])
        if not nonzero.size:
            return 0
        pick = col + nonzero[0]
        if pick != col:
            work[[col, pick]] = work[[pick, col]]
            result = -result
        pivot = int(work[col, col])
        result = result * pivot % P
        factors = work[col + 1:, col] * inv(pivot) % P
        work[col + 1:] = (work[col + 1:] - np.outer(factors, work[col]) % P) % P
    return result % P


def rankFactor(a):
    """
    Column-row factorisation a = left @ right.

    left holds the pivot columns of a and right the nonzero rows of its
    reduced echelon form, so both have exactly rank(a) columns/rows.
    """
    a = asVector(a)
    rows, cols = a.shape
    if not a.size:
        return np.zeros((rows, 0), dtype=np.int64), np.zeros((0, cols), dtype=np.int64)
    reduced, pivots = rref(a)
    return a[:, pivots], reduced[:len(pivots)]


def inverseNoPivot(a):
    """
    Gauss-Jordan inverse without row exchanges.

    A zero pivot means some leading principal minor vanishes and raises
    NotStronglyRegularError.
    """
    a = asVector(a)
    n = a.shape[0]
    work = np.concatenate((a, np.eye(n, dtype=np.int64)), axis=1)
    for col in range(n):
        if work[col, col] == 0:
            raise NotStronglyRegularError()
        work[col] = work[col] * inv(work[col, col]) % P
        factors = work[:, col].copy()
        factors[col] = 0
        work = (work - np.outer(factors, work[col]) % P) % P
    return work[:, n:]


def kron(a, b):
    """Kronecker product of residue matrices."""
    return np.kron(asVector(a), asVector(b)) % P


def sylvesterDense(left, right, rhs, stein=False):
    """
    Solve left X - X right = rhs (or X - left X right = rhs) densely.

    Builds the N^2 x N^2 Kronecker system, so it is meant for small blocks and
    for the oracle.
    """
    left, right, rhs = asVector(left), asVector(right), asVector(rhs)
    m, n = rhs.shape
    # Row-major vec: vec(L X) = (L kron I) vec X, vec(X R) = (I kron R^T) vec X.
    if stein:
        system = (np.eye(m * n, dtype=np.int64) - kron(left, right.T)) % P
    else:
        system = (kron(left, np.eye(n, dtype=np.int64)) - kron(np.eye(m, dtype=np.int64), right.T)) % P
    return solve(system, rhs.reshape(-1)).reshape(m, n)


def matPow(a, k):
    """Dense matrix power."""
    a = asVector(a)
    result = np.eye(a.shape[0], dtype=np.int64)
    while k:
        if k & 1:
            result = matMul(result, a)
        a = matMul(a, a)
        k >>= 1
    return result


def solveBatched(a, y):
    """
    Solve a stack of small systems at once.

    a has shape (B, q, q) and y shape (B, q, m).  Returns (dets, x): the
    determinant of every system and its solution, which is left as garbage
    wherever the determinant is zero.
    """
    a, y = asVector(a), asVector(y)
    batch, q = a.shape[0], a.shape[1]
    work = np.concatenate((a, y), axis=2)
    dets = np.ones(batch, dtype=np.int64)
    index = np.arange(batch)
    for col in range(q):
        nonzero = work[:, col:, col] != 0
        found = nonzero.any(axis=1)
        pick = col + np.argmax(nonzero, axis=1)
        pivotRows = work[index, pick].copy()
        work[index, pick] = work[index, col]
        work[index, col] = pivotRows
        dets = np.where(pick != col, (P - dets) % P, dets)
        pivots = work[:, col, col]
        dets = np.where(found, dets * pivots % P, 0)
        work[:, col] = work[:, col] * invArray(np.where(found, pivots, 1))[:, None] % P
        factors = work[:, :, col].copy()
        factors[:, col] = 0
        work = (work - factors[:, :, None] * work[:, col][:, None, :] % P) % P
    return dets, work[:, :, q:]
