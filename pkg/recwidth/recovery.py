# -*- coding: utf-8 -*-
"""
Fitting a width-t recurrence to a dense matrix.

Row i >= t of the matrix, read as a polynomial modulo X^N, must equal
sum_{j=1..t} g_{i,j} a_{i-j} with deg g_{i,j} <= j.  Every coefficient of
that identity is linear in the t(t+3)/2 unknown coefficients of the g_{i,j},
so each row is one small linear system.
"""
from dataclasses import dataclass, field
from logging import getLogger

import numpy as np

from .field import asVector
from .linalg import solveConsistent
from .recurrence import RecurrenceSpec, basicSpec

logger = getLogger(__name__)


@dataclass
class FitReport(object):
    """Outcome of recoverRecurrence: a spec, or the rows that did not fit."""

    spec: RecurrenceSpec = None
    rowsOk: list = field(default_factory=list)
    reason: str = ''

    @property
    def ok(self):
        """True when a spec was found."""
        return self.spec is not None

    @property
    def failedRows(self):
        """Indices of rows that no width-t recurrence reproduces."""
        return [i for i, good in enumerate(self.rowsOk) if not good]


def unknownCount(t):
    """Coefficients of g_{i,1}, ..., g_{i,t} with deg g_{i,j} <= j."""
    return t * (t + 3) // 2


def _rowSystem(A, i, t):
    """Constraint matrix of row i: one column per (j, l) holding X^l a_{i-j} mod X^N."""
    n = A.shape[1]
    columns = []
    for j in range(1, t + 1):
        for shift in range(j + 1):
            col = np.zeros(n, dtype=np.int64)
            col[shift:] = A[i - j, :n - shift]
            columns.append(col)
    return np.stack(columns, axis=1)


def _unpack(solution, t):
    coeffs, at = [], 0
    for j in range(1, t + 1):
        coeffs.append(solution[at:at + j + 1])
        at += j + 1
    return coeffs


def recoverRecurrence(A, t):
    """
    Recover a plain width-t recurrence (modulus X^N) reproducing A.

    Returns a FitReport; rows that admit no coefficients are flagged.
    """
    A = asVector(A)
    assert A.ndim == 2, "dense matrix expected"
    rows, n = A.shape
    flags = [True] * rows
    for i in range(min(t, rows)):
        if np.any(A[i, i + 1:]):
            flags[i] = False
    if not all(flags):
        return FitReport(rowsOk=flags, reason="initial rows exceed their degree bound")
    if rows > t and n <= unknownCount(t):
        return FitReport(rowsOk=flags, reason="insufficient constraints")
    g = [()] * rows
    for i in range(t, rows):
        if not t:
            flags[i] = not A[i].any()
            continue
        solution = solveConsistent(_rowSystem(A, i, t), A[i])
        if solution is None:
            flags[i] = False
            continue
        g[i] = tuple(_unpack(solution, t))
    if not all(flags):
        logger.debug("width %d fails on %d of %d rows", t, flags.count(False), rows)
        return FitReport(rowsOk=flags, reason="no width-{0} recurrence for rows {1}".format(
            t, [i for i, good in enumerate(flags) if not good]))
    spec = basicSpec([A[i] for i in range(min(t, rows))], g, n)
    return FitReport(spec=spec, rowsOk=flags)
