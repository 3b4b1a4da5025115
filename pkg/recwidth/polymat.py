# -*- coding: utf-8 -*-
"""
Stacks of polynomial matrices.

A polynomial matrix is an int64 array whose last axis holds coefficients;
the two axes before it are the matrix rows and columns and anything in front
is a batch.  Products go through one forward transform per operand and
accumulate the inner dimension in the transform domain.
"""
import numpy as np

from .field import P
from .poly import ntt, nextPow2, trim


def pmPad(a, length):
    """Zero pad or cut the coefficient axis to `length`."""
    a = np.asarray(a, dtype=np.int64)
    have = a.shape[-1]
    if have == length:
        return a
    if have > length:
        return a[..., :length]
    pad = np.zeros(a.shape[:-1] + (length - have,), dtype=np.int64)
    return np.concatenate((a, pad), axis=-1)


def pmTrim(a):
    """Drop coefficient slots that are zero across the whole stack (keeps one)."""
    a = np.asarray(a, dtype=np.int64)
    if not a.size:
        return a
    used = np.flatnonzero(a.reshape(-1, a.shape[-1]).any(axis=0))
    return a[..., :max(used[-1] + 1 if used.size else 1, 1)]


def pmIdentity(n, batch=()):
    """Identity polynomial matrices."""
    out = np.zeros(tuple(batch) + (n, n, 1), dtype=np.int64)
    out[..., np.arange(n), np.arange(n), 0] = 1
    return out


def _transform(a, size):
    return ntt(pmPad(a, size))


def _inverse(fa, length):
    return ntt(fa, invert=True)[..., :length]


def pmAdd(a, b):
    """Sum with broadcasting; lengths are aligned by padding."""
    length = max(a.shape[-1], b.shape[-1])
    return (pmPad(a, length) + pmPad(b, length)) % P


def pmElem(a, b, cap=None):
    """Entrywise polynomial product with broadcasting, optionally mod X^cap."""
    full = a.shape[-1] + b.shape[-1] - 1
    length = full if cap is None else min(full, cap)
    size = nextPow2(full)
    return _inverse(_transform(a, size) * _transform(b, size) % P, length)


def pmMul(a, b, cap=None):
    """
    Polynomial matrix product a @ b with broadcasting over batch axes.

    a is (..., m, k, La) and b is (..., k, n, Lb); the inner dimension is
    accumulated after transforming.
    """
    full = a.shape[-1] + b.shape[-1] - 1
    length = full if cap is None else min(full, cap)
    size = nextPow2(full)
    fa = _transform(a, size)
    fb = _transform(b, size)
    inner = a.shape[-2]
    assert b.shape[-3] == inner, "inner dimensions differ"
    total = None
    for k in range(inner):
        part = fa[..., :, k, None, :] * fb[..., None, k, :, :] % P
        total = part if total is None else (total + part) % P
    if total is None:
        shape = np.broadcast_shapes(a.shape[:-3], b.shape[:-3]) + (a.shape[-3], b.shape[-2], length)
        return np.zeros(shape, dtype=np.int64)
    return _inverse(total, length)


def pmCorr(p, seq, outLen):
    """
    Apply multiplication by p to functionals, entrywise.

    out[..., x] = sum_u p[..., u] * seq[..., x + u] for x < outLen; reads
    beyond the end of seq count as zero.
    """
    lp = p.shape[-1]
    window = lp + outLen - 1
    size = nextPow2(window)
    fp = _transform(p[..., ::-1], size)
    fs = _transform(pmPad(seq, window), size)
    return ntt(fp * fs % P, invert=True)[..., lp - 1:lp - 1 + outLen]


def pmCorrMatVec(pm, seq, outLen):
    """
    Transposed action of a polynomial matrix on a vector of functionals.

    pm is (..., m, k, Lp) and seq (..., k, Ls); returns (..., m, outLen) with
    out[u] = sum_s pmCorr(pm[u, s], seq[s]).
    """
    lp = pm.shape[-1]
    window = lp + outLen - 1
    size = nextPow2(window)
    fp = _transform(pm[..., ::-1], size)
    fs = _transform(pmPad(seq, window), size)
    inner = pm.shape[-2]
    total = None
    for s in range(inner):
        part = fp[..., :, s, :] * fs[..., None, s, :] % P
        total = part if total is None else (total + part) % P
    if total is None:
        return np.zeros(pm.shape[:-2] + (outLen,), dtype=np.int64)
    return ntt(total, invert=True)[..., lp - 1:lp - 1 + outLen]


def pmEntry(a, *index):
    """One entry as a trimmed coefficient array."""
    return trim(np.asarray(a)[index])
