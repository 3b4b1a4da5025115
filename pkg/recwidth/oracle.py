# -*- coding: utf-8 -*-
"""
Dense brute-force references.

Nothing here is fast and nothing here calls the fast paths: rows are
generated by running the recurrence literally, displacement equations are
solved row by row (or through the Kronecker system), and the sequences used
by the applications come from their textbook recursions.
"""
from logging import getLogger
from math import comb

import numpy as np

from .descriptors import RDescriptor
from .displacement import DisplacementRep, SYLVESTER
from .errors import LeadingCoefficientError, NotInvertibleError, SingularMatrixError
from .field import P, asVector, inv, matMul, powMod
from .linalg import det, solve, sylvesterDense
from .poly import interpolate, padTo, polyInvMod, polyMul, polyRem, trim
from .recurrence import RecurrenceSpec

logger = getLogger(__name__)

# Largest size solved through the Kronecker system when neither operator is triangular.
KRONECKER_LIMIT = 24


def _polyAtMatrix(p, R):
    """p(R) as a dense matrix."""
    n = R.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in p[::-1]:
        out = matMul(out, R)
        out[np.arange(n), np.arange(n)] = (out[np.arange(n), np.arange(n)] + c) % P
    return out


def _polyTimesVector(p, R, v):
    """p(R) v by Horner."""
    out = np.zeros_like(v)
    for c in p[::-1]:
        out = (matMul(R, out) + c * v) % P
    return out


def _modularRows(spec, F):
    """Rows as polynomials modulo c_R (companion kinds)."""
    modulus = spec.modulus
    n = spec.cols
    rows = []
    inverses = {}
    for i, row in enumerate(spec.g):
        total = trim(F[i])
        for j in range(1, len(row)):
            total = polyRem(_addPoly(total, polyMul(row[j], trim(rows[i - j]))), modulus)
        key = row[0].tobytes()
        if key not in inverses:
            try:
                inverses[key] = polyInvMod(row[0], modulus)
            except NotInvertibleError:
                raise LeadingCoefficientError()
        rows.append(padTo(polyRem(polyMul(inverses[key], polyRem(total, modulus)), modulus), n))
    return np.array(rows, dtype=np.int64).reshape(spec.rows, n)


def _addPoly(a, b):
    length = max(len(a), len(b))
    return trim((padTo(a, length) + padTo(b, length)) % P)


def _matrixRows(spec, F):
    """Rows by dense R arithmetic."""
    R = spec.R.dense()
    n = spec.cols
    rows = np.zeros((spec.rows, n), dtype=np.int64)
    inverses = {}
    for i, row in enumerate(spec.g):
        total = F[i].copy()
        for j in range(1, len(row)):
            total = (total + _polyTimesVector(row[j], R, rows[i - j])) % P
        lead = row[0]
        if len(lead) == 1:
            rows[i] = total * inv(lead[0]) % P
            continue
        key = lead.tobytes()
        if key not in inverses:
            inverses[key] = _polyAtMatrix(lead, R)
        try:
            rows[i] = solve(inverses[key], total)
        except SingularMatrixError:
            raise LeadingCoefficientError()
    return rows


def denseFromSpec(spec):
    """The matrix of a recurrence spec, generated row by row."""
    assert isinstance(spec, RecurrenceSpec)
    F = matMul(spec.C, spec.D) if spec.rank else np.zeros((spec.rows, spec.cols), dtype=np.int64)
    if spec.R.modular:
        return _modularRows(spec, F)
    return _matrixRows(spec, F)


def _rowSolve(L, R, F, stein):
    """Row by row solution for triangular L (top-down when lower, bottom-up when upper)."""
    n, m = F.shape
    A = np.zeros((n, m), dtype=np.int64)
    lower = not np.any(np.triu(L, 1))
    order = range(n) if lower else range(n - 1, -1, -1)
    eye = np.eye(m, dtype=np.int64)
    for i in order:
        others = np.flatnonzero(L[i])
        others = others[others != i]
        rest = matMul(L[i, others], A[others]) if others.size else np.zeros(m, dtype=np.int64)
        if stein:
            rhs = (F[i] + matMul(rest, R)) % P
            operator = (eye - L[i, i] * R) % P
        else:
            rhs = (F[i] - rest) % P
            operator = (L[i, i] * eye - R) % P
        A[i] = solve(operator.T.copy(), rhs)
    return A


def _isTriangular(M):
    return not np.any(np.triu(M, 1)) or not np.any(np.tril(M, -1))


def denseFromDisplacement(rep):
    """
    The unique A of a displacement representation.

    Triangular L goes row by row, triangular R column by column (through the
    transposed equation); anything else is solved as one Kronecker system.
    The residual is checked before returning.
    """
    assert isinstance(rep, DisplacementRep)
    L, R = rep.L.dense(), rep.R.dense()
    F = matMul(rep.C, rep.D) if rep.rank else np.zeros(rep.shape, dtype=np.int64)
    stein = rep.op != SYLVESTER
    if _isTriangular(L):
        A = _rowSolve(L, R, F, stein)
    elif _isTriangular(R):
        sign = F.T if stein else (-F.T) % P
        A = _rowSolve(R.T.copy(), L.T.copy(), sign.copy(), stein).T.copy()
    else:
        assert max(rep.shape) <= KRONECKER_LIMIT, "dense Kronecker solve is limited to small matrices"
        A = sylvesterDense(L, R, F, stein=stein)
    assert not np.any(denseDisplacementResidual(rep, A)), "dense displacement solve left a residual"
    return A


def denseDisplacementResidual(rep, A):
    """L A - A R - C D (Sylvester) or A - L A R - C D (Stein)."""
    assert isinstance(rep, DisplacementRep)
    L, R = rep.L.dense(), rep.R.dense()
    A = asVector(A)
    F = matMul(rep.C, rep.D) if rep.rank else np.zeros(rep.shape, dtype=np.int64)
    if rep.op == SYLVESTER:
        return (matMul(L, A) - matMul(A, R) - F) % P
    return (A - matMul(matMul(L, A), R) - F) % P


def denseSolve(A, y):
    """x with A x = y; raises SingularMatrixError."""
    return solve(A, y)


def denseCharPoly(R):
    """det(X I - R) by evaluation at N + 1 points and interpolation."""
    dense = R.dense() if isinstance(R, RDescriptor) else asVector(R)
    n = dense.shape[0]
    points = np.arange(n + 1, dtype=np.int64)
    values = [det((x * np.eye(n, dtype=np.int64) - dense) % P) for x in points]
    return trim(interpolate(points, np.array(values, dtype=np.int64)))


def denseKrylov(R, y):
    """K(R, y) with column j equal to R^j y."""
    dense = R.dense() if isinstance(R, RDescriptor) else asVector(R)
    n = dense.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    column = asVector(y).reshape(-1)
    for j in range(n):
        out[:, j] = column
        column = matMul(dense, column)
    return out


def stirlingTable(n):
    """W[i, k] = {i k} by {i+1 k} = k {i k} + {i k-1}."""
    W = np.zeros((n, n), dtype=np.int64)
    if n:
        W[0, 0] = 1
    for i in range(1, n):
        W[i, 1:] = (np.arange(1, n) * W[i - 1, 1:] + W[i - 1, :-1]) % P
    return W


def bernoulliRecursive(n):
    """B_0 .. B_{n-1} mod p from sum_{k<=m} C(m+1, k) B_k = 0."""
    out = []
    for m in range(n):
        if not m:
            out.append(1)
            continue
        total = sum(comb(m + 1, k) % P * b for k, b in enumerate(out)) % P
        out.append((-total) * inv(m + 1) % P)
    return out


def bivariateMatrix(points, d):
    """Entry (i, a + d b) = x_i^a y_i^b."""
    out = np.zeros((len(points), d * d), dtype=np.int64)
    for i, (x, y) in enumerate(points):
        for b in range(d):
            for a in range(d):
                out[i, a + d * b] = powMod(x, a) * powMod(y, b) % P
    return out


def orthoMatrix(family):
    """A[i, j] = a_i(z_j) by running the three-term recurrence on the point values."""
    points = family.points
    count = len(family.alpha)
    out = np.zeros((count, len(points)), dtype=np.int64)
    out[0] = 1
    for i in range(1, count):
        value = (family.alpha[i] * points + family.beta[i]) % P * out[i - 1] % P
        if i > 1:
            value = (value + family.gamma[i] * out[i - 2]) % P
        out[i] = value
    return out
