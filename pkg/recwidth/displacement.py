# -*- coding: utf-8 -*-
"""
Displacement-rank representations.

A DisplacementRep defines A as the unique solution of

    Sylvester:  L A - A R = C D
    Stein:      A - L A R = C D

Banded L turns the rows of A into a width-Delta recurrence over R^T, so
products go through the multiply module.  Any other L is handled through
the resolvent of L:

    A^T b = sum_k K(R^T, d_k) p_k,   p_k = b^T (L - X I)^{-1} c_k  mod c_R

(or b^T (I - X L)^{-1} c_k for Stein).  Products with A itself are
transposed products of the transposed representation.
"""
from dataclasses import dataclass
from functools import cached_property
from logging import getLogger

import numpy as np

from . import krylov
from .descriptors import RDescriptor, isBand
from .errors import DisplacementOperatorError, SpecValidationError
from .field import P, asVector
from .multiply import transposeMultBatched
from .poly import trim, padTo, polyGcdExt, polyInvMod, polyMul, polyNeg, polyRem, reverse
from .quasisep import QuasiSep, resolvent
from .recurrence import RecurrenceSpec, buildDyadicTree

logger = getLogger(__name__)

SYLVESTER = 'sylvester'
STEIN = 'stein'

__all__ = ['DisplacementRep', 'displacementToRecurrence', 'dispMult', 'transposeRep', 'resolvent', 'QuasiSep',
           'SYLVESTER', 'STEIN']


@dataclass(frozen=True, eq=False)
class DisplacementRep(object):
    """(op, L, R, C, D) with C of shape rows x r and D of shape r x cols."""

    op: str
    L: RDescriptor
    R: RDescriptor
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        """Normalise the generators and check that A is uniquely defined."""
        if self.op not in (SYLVESTER, STEIN):
            raise SpecValidationError("displacement operator must be 'sylvester' or 'stein'")
        rows, cols = self.L.size, self.R.size
        C = asVector(self.C).reshape(rows, -1)
        D = asVector(self.D).reshape(C.shape[1], cols)
        object.__setattr__(self, 'C', C)
        object.__setattr__(self, 'D', D)
        if self.op == SYLVESTER:
            left = self.L.charPoly
        else:
            left = reverse(self.L.charPoly, rows)
        if len(polyGcdExt(left, self.R.charPoly)[0]) != 1:
            raise DisplacementOperatorError()

    @property
    def rank(self):
        """Generator width r."""
        return self.C.shape[1]

    @property
    def shape(self):
        """(rows, cols) of A."""
        return self.L.size, self.R.size

    @cached_property
    def Rt(self):
        """Descriptor of R^T, kept so Krylov caches survive between products."""
        return self.R.transpose()

    @cached_property
    def bandPreparation(self):
        """(spec, tree, flipped) for banded L."""
        spec, flipped = _bandSpec(self)
        return spec, buildDyadicTree(spec), flipped

    @cached_property
    def transposed(self):
        """The representation of A^T."""
        return transposeRep(self)


def _bandSpec(rep):
    bands, lower = rep.L.bandForm()
    C = rep.C
    flipped = not lower
    if flipped:
        bands = bands[:, ::-1].copy()
        C = C[::-1].copy()
    rows = rep.L.size
    delta = bands.shape[0] - 1
    coeffs = []
    for i in range(rows):
        if rep.op == SYLVESTER:
            row = [np.array([bands[0, i], P - 1], dtype=np.int64)]
            row += [np.array([(-bands[k, i]) % P], dtype=np.int64) for k in range(1, min(delta, i) + 1)]
        else:
            row = [np.array([1, (-bands[0, i]) % P], dtype=np.int64)]
            row += [np.array([0, bands[k, i]], dtype=np.int64) for k in range(1, min(delta, i) + 1)]
        coeffs.append(tuple(row))
    spec = RecurrenceSpec(rows=rows, cols=rep.R.size, width=delta, rank=rep.rank, degree=(0, 1),
                          g=tuple(coeffs), C=C, D=rep.D, R=rep.Rt)
    return spec, flipped


def displacementToRecurrence(rep):
    """
    Recurrence over R^T whose rows are the rows of A (banded L only).

    Upper bands are reversed first, so the spec then describes J A.
    """
    assert isinstance(rep, DisplacementRep)
    if not isBand(rep.L):
        raise SpecValidationError("recurrence reduction needs a triangular band L")
    return rep.bandPreparation[0]


def _quasiCoefficients(rep, B):
    """p_k for every column of B, shape (batch, r, cols)."""
    n = rep.R.size
    modulus = rep.R.charPoly
    num, den = resolvent(B, rep.L.quasi(), rep.C)
    rows = rep.L.size
    if rep.op == SYLVESTER:
        scale = polyNeg(polyInvMod(den, modulus))
    else:
        scale = polyInvMod(reverse(den, rows), modulus)
    out = np.zeros(num.shape[:2] + (n,), dtype=np.int64)
    for c, k in np.ndindex(*num.shape[:2]):
        top = trim(num[c, k]) if rep.op == SYLVESTER else reverse(trim(num[c, k]), rows - 1)
        out[c, k] = padTo(polyRem(polyMul(polyRem(top, modulus), scale), modulus), n)
    return out


def _transposeProduct(rep, B):
    """A^T B for a rows x batch matrix."""
    if isBand(rep.L):
        spec, tree, flipped = rep.bandPreparation
        return transposeMultBatched(spec, tree, B[::-1].copy() if flipped else B)
    out = np.zeros((rep.R.size, B.shape[1]), dtype=np.int64)
    if not rep.rank or not B.shape[1]:
        return out
    coefficients = _quasiCoefficients(rep, B)
    for k in range(rep.rank):
        out = (out + krylov.krylovApply(rep.Rt, rep.D[k], coefficients[:, k, :].T.copy())) % P
    return out


def dispMult(rep, b, transposed=False):
    """
    A b, or A^T b when transposed is set.

    b may be a vector or a matrix of columns.
    """
    assert isinstance(rep, DisplacementRep)
    b = asVector(b)
    columns = b.reshape(b.shape[0], -1)
    if transposed:
        out = _transposeProduct(rep, columns)
    else:
        out = _transposeProduct(rep.transposed, columns)
    return out[:, 0] if b.ndim == 1 else out


def transposeRep(rep):
    """
    Representation of A^T.

    Sylvester (L, R, C, D) maps to (R^T, L^T, -D^T, C^T) and Stein to
    (R^T, L^T, D^T, C^T).
    """
    assert isinstance(rep, DisplacementRep)
    C = rep.D.T.copy()
    if rep.op == SYLVESTER:
        C = (-C) % P
    return DisplacementRep(op=rep.op, L=rep.Rt, R=rep.L.transpose(), C=C, D=rep.C.T.copy())
