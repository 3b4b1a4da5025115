# -*- coding: utf-8 -*-
"""
Fast products with a recurrence-width matrix.

transposeMult computes A^T b from the bilinear form b^T H C, which is
assembled bottom-up over the dyadic tree:

    H_[l:r] = S_[m:r] H_[l:m] + S_[l:m] H_[m:r] + P_[m:r] Q_[l:m]
    P_[l:r] = S_[m:r] P_[l:m] + P_[m:r] T'_[l:m]

and reduced modulo c_R with a single inverse of S_[0:M].  forwardMult runs
the transposed program: linear functionals travel top-down through the same
tree and are read off against the block gradients.
"""
from logging import getLogger

import numpy as np

from . import krylov
from .field import P, asVector, matMul
from .poly import Poly, trim, padTo, polyMul, polyRem, reverse, truncate, seriesInverse, middleProduct
from .polymat import pmPad, pmTrim, pmMul, pmElem, pmAdd, pmCorr, pmCorrMatVec
from .recurrence import RecurrenceSpec, DyadicTree

logger = getLogger(__name__)


def _blockInputs(spec, tree, B):
    """Pad B (rows x batch) and cut it into blocks: (blocks, batch, blockSize)."""
    rows, batch = B.shape
    padded = np.zeros((spec.paddedRows, batch), dtype=np.int64)
    padded[:rows] = B
    nb = spec.paddedRows // tree.blockSize
    return padded.reshape(nb, tree.blockSize, batch).transpose(0, 2, 1).copy()


def _rawBilinear(spec, tree, B):
    """Unreduced H_[0:M] for every column of B, shape (batch, r, L)."""
    blocks = _blockInputs(spec, tree, B)
    nb, batch, bs = blocks.shape
    t, r = spec.internalWidth, spec.rank
    length = tree.Pgrad.shape[-1]
    Pstate = matMul(blocks, tree.Pgrad.reshape(nb, bs, t * length)).reshape(nb, batch, 1, t, length)
    Hstate = matMul(blocks, tree.Hgrad.reshape(nb, bs, r * length)).reshape(nb, batch, 1, r, length)
    cap = tree.cap
    # TODO: keep the NTT transforms of S, Q and T on the tree; every query recomputes them.
    for h in range(tree.blockLevel, len(tree.T) - 1):
        k = h - tree.blockLevel
        SL = tree.S[h][0::2][:, None, None, None, :]
        SR = tree.S[h][1::2][:, None, None, None, :]
        QL = tree.Q[k][0::2][:, None]
        TL = tree.T[h][0::2][:, None]
        Hnext = pmAdd(pmAdd(pmElem(SR, Hstate[0::2], cap), pmElem(SL, Hstate[1::2], cap)),
                      pmMul(Pstate[1::2], QL, cap))
        if h < len(tree.T) - 2:
            Pstate = pmTrim(pmAdd(pmElem(SR, Pstate[0::2], cap), pmMul(Pstate[1::2], TL, cap)))
        Hstate = pmTrim(Hnext)
    return Hstate[0, :, 0]


def _reduce(spec, tree, raw):
    """(raw mod c_R) * S_[0:M]^{-1} mod c_R for every entry, shape (batch, r, N)."""
    modulus = spec.modulus
    n = spec.cols
    out = np.zeros(raw.shape[:-1] + (n,), dtype=np.int64)
    for index in np.ndindex(*raw.shape[:-1]):
        value = polyRem(trim(raw[index]), modulus)
        out[index] = padTo(polyRem(polyMul(value, tree.rootInverse), modulus), n)
    return out


def bilinearCore(spec, tree, b):
    """b^T H C reduced modulo c_R, as a list of r Poly values."""
    assert isinstance(spec, RecurrenceSpec) and isinstance(tree, DyadicTree)
    b = asVector(b).reshape(-1, 1)
    assert b.shape[0] == spec.rows, "b must have one entry per row"
    reduced = _reduce(spec, tree, _rawBilinear(spec, tree, b))[0]
    return [Poly(p) for p in reduced]


def transposeMultBatched(spec, tree, B):
    """A^T B for a rows x batch matrix B; returns cols x batch."""
    assert isinstance(spec, RecurrenceSpec) and isinstance(tree, DyadicTree)
    B = asVector(B)
    assert B.ndim == 2 and B.shape[0] == spec.rows, "B must be rows x batch"
    batch = B.shape[1]
    out = np.zeros((spec.cols, batch), dtype=np.int64)
    if not spec.rank or not batch:
        return out
    reduced = _reduce(spec, tree, _rawBilinear(spec, tree, B))
    for k in range(spec.rank):
        out = (out + krylov.krylovApply(spec.R, spec.D[k], reduced[:, k, :].T.copy())) % P
    return out


def transposeMult(spec, tree, b):
    """A^T b."""
    return transposeMultBatched(spec, tree, asVector(b).reshape(-1, 1))[:, 0]


def _extendedSequence(spec, seq, length):
    """Continue seq (of length N) by the linear recurrence with characteristic c_R."""
    n = spec.cols
    if spec.cap is not None or length <= n:
        return padTo(seq, length)
    denominator = reverse(spec.modulus, n)
    numerator = truncate(polyMul(trim(seq), denominator), n)
    return padTo(polyMul(numerator, seriesInverse(denominator, length)), length)


def _rootFunctionals(spec, tree, b):
    """Functionals q -> b^T (q S_[0:M]^{-1})(R) d_k on coefficient sequences, shape (r, L)."""
    need = tree.required[-1]
    inverse = tree.rootInverse
    out = np.zeros((spec.rank, need), dtype=np.int64)
    for k in range(spec.rank):
        beta = krylov.krylovApplyTranspose(spec.R, spec.D[k], b)
        seq = _extendedSequence(spec, beta, need + len(inverse))
        out[k] = middleProduct(inverse, seq, need)
    return out


def forwardMult(spec, tree, b):
    """A b for a length-cols vector b."""
    assert isinstance(spec, RecurrenceSpec) and isinstance(tree, DyadicTree)
    b = asVector(b).reshape(-1)
    assert b.shape[0] == spec.cols, "b must have one entry per column"
    t = spec.internalWidth
    if not spec.rank:
        return np.zeros(spec.rows, dtype=np.int64)
    levels = len(tree.T) - tree.blockLevel
    Lam = _rootFunctionals(spec, tree, b)[None]
    Pi = np.zeros((1, t, Lam.shape[-1]), dtype=np.int64)
    for k in range(levels - 2, -1, -1):
        h = tree.blockLevel + k
        need = tree.required[k]
        SL = tree.S[h][0::2][:, None, :]
        SR = tree.S[h][1::2][:, None, :]
        leftLam = pmCorr(SR, Lam, need)
        leftPi = pmCorr(SR, Pi, need)
        rightLam = pmCorr(SL, Lam, need)
        rightPi = (pmCorrMatVec(tree.T[h][0::2], Pi, need) + pmCorrMatVec(tree.Q[k][0::2], Lam, need)) % P
        Lam = np.stack((leftLam, rightLam), axis=1).reshape((-1,) + leftLam.shape[1:])
        Pi = np.stack((leftPi, rightPi), axis=1).reshape((-1,) + leftPi.shape[1:])
    nb, bs = tree.Hgrad.shape[0], tree.blockSize
    length = tree.Hgrad.shape[-1]
    Lam = pmPad(Lam, length)
    Pi = pmPad(Pi, length)
    out = matMul(tree.Hgrad.reshape(nb, bs, -1), Lam.reshape(nb, -1, 1))
    out = (out + matMul(tree.Pgrad.reshape(nb, bs, -1), Pi.reshape(nb, -1, 1))) % P
    return out.reshape(-1)[:spec.rows]
