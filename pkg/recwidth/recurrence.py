# -*- coding: utf-8 -*-
"""
Recurrence parameterisation and its dyadic preprocessing tree.

Row i of a matrix A of recurrence width (t, r) satisfies

    g_{i,0}(R) a_i = sum_{j=1..min(t,i)} g_{i,j}(R) a_{i-j} + f_i

with rows a_i as column vectors and F = C D of rank r.  Leading
coefficients are folded into the transitions by the scaling

    g'_{i,j} = g_{i,j} * prod_{k=i-j+1..i-1} g_{k,0}

so that entry (i, j) of H = G^{-1} is T'_[j:i][t-1, t-1] / S_[j:i+1], where
T'_[l:r] = T_{r-1} ... T_l multiplies scaled companion transitions and
S_[l:r] = prod_{k=l..r-1} g_{k,0}.
"""
from dataclasses import dataclass
from functools import cached_property
from logging import getLogger

import numpy as np

from .config import settings
from .descriptors import RDescriptor, Shift
from .errors import SpecValidationError, LeadingCoefficientError, NotInvertibleError
from .field import asVector
from .poly import Poly, asPoly, trim, padTo, polyEval, polyGcdExt, polyInvMod, polyMul, polyRem, nextPow2
from .polymat import pmPad, pmTrim, pmIdentity, pmMul, pmElem, pmAdd

logger = getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RecurrenceSpec(object):
    """
    The (G, F, R) parameterisation of a width-(t, r), degree-(d, dbar) matrix.

    g[i] lists g_{i,0}, ..., g_{i,min(t,i)} (missing trailing entries are
    zero); C is rows x r and D is r x cols.  Validation runs on construction.
    """

    rows: int
    cols: int
    width: int
    rank: int
    degree: tuple
    g: tuple
    C: np.ndarray
    D: np.ndarray
    R: RDescriptor

    def __post_init__(self):
        """Normalise the coefficient data and check every structural constraint."""
        if self.rows < 1 or self.cols < 1 or self.width < 0 or self.rank < 0:
            raise SpecValidationError("dimensions must be positive and width/rank non-negative")
        if not isinstance(self.R, RDescriptor) or self.R.size != self.cols:
            raise SpecValidationError("R must be a descriptor of size {0}".format(self.cols))
        d, dbar = self.degree
        if len(self.g) != self.rows:
            raise SpecValidationError("need coefficient polynomials for all {0} rows".format(self.rows))
        rows = []
        for i, row in enumerate(self.g):
            row = tuple(asPoly(p) for p in row)
            if not row or not len(row[0]):
                raise SpecValidationError("g[{0}][0] must be a nonzero polynomial".format(i))
            if len(row) > min(self.width, i) + 1:
                raise SpecValidationError("row {0} has more than min(t, i) + 1 coefficients".format(i))
            for j, p in enumerate(row):
                if len(p) - 1 > d * j + dbar:
                    raise SpecValidationError("deg g[{0}][{1}] = {2} exceeds {3}".format(
                        i, j, len(p) - 1, d * j + dbar))
            rows.append(row)
        object.__setattr__(self, 'g', tuple(rows))
        object.__setattr__(self, 'degree', (int(d), int(dbar)))
        C = asVector(self.C).reshape(self.rows, self.rank)
        D = asVector(self.D).reshape(self.rank, self.cols)
        object.__setattr__(self, 'C', C)
        object.__setattr__(self, 'D', D)
        self._checkLeading()

    def _checkLeading(self):
        """g_{i,0}(R) must be invertible wherever that is cheap to decide."""
        distinct = {}
        for row in self.g:
            distinct.setdefault(row[0].tobytes(), row[0])
        kind = self.R.kind
        if kind == 'shift':
            bad = [p for p in distinct.values() if p[0] == 0]
        elif kind == 'companion':
            bad = [p for p in distinct.values() if len(polyGcdExt(p, self.R.modulus)[0]) != 1]
        elif kind in ('diagonal', 'band'):
            eigen = np.unique(self.R.bandForm()[0][0])
            bad = [p for p in distinct.values() if np.any(polyEval(p, eigen) == 0)]
        else:
            bad = []
        if bad:
            raise LeadingCoefficientError()

    @property
    def internalWidth(self):
        """Width used by the transitions (at least one)."""
        return max(self.width, 1)

    @property
    def paddedRows(self):
        """Row count rounded up to a power of two."""
        return nextPow2(self.rows)

    @cached_property
    def modulus(self):
        """c_R, the characteristic polynomial of R."""
        return self.R.charPoly

    @property
    def cap(self):
        """Coefficient cap for products: N for Shift, unbounded otherwise."""
        return self.cols if self.R.kind == 'shift' else None

    @cached_property
    def coefficientArray(self):
        """g as an array of shape (paddedRows, internalWidth + 1, L); padding rows are identity rows."""
        t = self.internalWidth
        length = max(len(p) for row in self.g for p in row)
        out = np.zeros((self.paddedRows, t + 1, length), dtype=np.int64)
        for i, row in enumerate(self.g):
            for j, p in enumerate(row):
                out[i, j, :len(p)] = p
        out[self.rows:, 0, 0] = 1
        return out

    @cached_property
    def paddedC(self):
        """C with zero rows appended up to paddedRows."""
        out = np.zeros((self.paddedRows, self.rank), dtype=np.int64)
        out[:self.rows] = self.C
        return out

    def __repr__(self):
        return "RecurrenceSpec(rows={0}, cols={1}, width={2}, rank={3}, degree={4}, R={5!r})".format(
            self.rows, self.cols, self.width, self.rank, self.degree, self.R)


def basicSpec(initial, g, n):
    """
    Width-t recurrence in the plain form: rows below t are given outright.

    initial holds a_0, ..., a_{t-1} as coefficient lists; g[i] (for i >= t)
    lists g_{i,1}, ..., g_{i,t}.  The result has modulus X^n, C = I_t on its
    first t rows, D = the initial rows and degree (1, 0).
    """
    t = len(initial)
    rows = len(g)
    D = np.zeros((t, n), dtype=np.int64)
    for k, a in enumerate(initial):
        D[k] = padTo(asPoly(a), n)
    C = np.zeros((rows, t), dtype=np.int64)
    C[np.arange(min(t, rows)), np.arange(min(t, rows))] = 1
    one = np.array([1], dtype=np.int64)
    coeffs = [(one,) if i < t else (one,) + tuple(g[i]) for i in range(rows)]
    return RecurrenceSpec(rows=rows, cols=n, width=t, rank=t, degree=(1, 0), g=tuple(coeffs), C=C, D=D, R=Shift(n))


def _scaledCoefficients(spec):
    """g'_{i,j} for every (padded) row, shape (paddedRows, t + 1, L)."""
    cap = spec.cap
    g = spec.coefficientArray
    rows, width = g.shape[0], g.shape[1] - 1
    leading = g[:, 0, :]
    scaled = [g[:, 0:1, :], g[:, 1:2, :]] if width else [g[:, 0:1, :]]
    run = np.ones((rows, 1), dtype=np.int64)
    for j in range(2, width + 1):
        # Multiply in g_{i-j+1,0}; rows where i-j+1 < 0 have g_{i,j} = 0 anyway.
        shifted = np.zeros((rows, leading.shape[1]), dtype=np.int64)
        shifted[:, 0] = 1
        shifted[j - 1:] = leading[:rows - j + 1]
        run = pmElem(run, shifted, cap)
        scaled.append(pmElem(run[:, None, :], g[:, j:j + 1, :], cap))
    length = max(s.shape[-1] for s in scaled)
    return np.concatenate([pmPad(s, length) for s in scaled], axis=1)


def transitionArray(spec):
    """
    All transitions as one array of shape (paddedRows, t, t, L).

    Entry k advances the state (a_{k-t+1}, ..., a_k) to the one ending at
    a_{k+1}, so it is built from row k + 1; the last entry has a zero bottom
    row.
    """
    t = spec.internalWidth
    scaled = _scaledCoefficients(spec)
    rows, length = scaled.shape[0], scaled.shape[-1]
    out = np.zeros((rows, t, t, length), dtype=np.int64)
    out[:, np.arange(t - 1), np.arange(1, t), 0] = 1
    # Bottom row of T_k holds (g'_{k+1,t}, ..., g'_{k+1,1}).
    out[:rows - 1, t - 1, :, :] = scaled[1:, :0:-1, :]
    if spec.cap is not None:
        out = out[..., :spec.cap]
    return pmTrim(out)


def transition(spec, i):
    """
    The t x t companion transition built from row i (1 <= i < rows).

    Returned as a list of rows of Poly values.
    """
    assert isinstance(spec, RecurrenceSpec)
    if not 1 <= i < spec.rows:
        raise IndexError("transition index {0} outside 1..{1}".format(i, spec.rows - 1))
    arr = transitionArray(spec)[i - 1]
    return [[Poly(arr[u, v]) for v in range(arr.shape[1])] for u in range(arr.shape[0])]


def productLevels(leaves, cap=None):
    """
    Dyadic products of a power-of-two list of polynomial matrices.

    levels[h][b] = leaves[(b+1)2^h - 1] ... leaves[b 2^h] (later factors on
    the left).
    """
    levels = [pmTrim(leaves)]
    while levels[-1].shape[0] > 1:
        below = levels[-1]
        levels.append(pmTrim(pmMul(below[1::2], below[0::2], cap)))
    return levels


def _suffixLevels(leading, cap=None):
    levels = [pmTrim(leading)]
    while levels[-1].shape[0] > 1:
        below = levels[-1]
        levels.append(pmTrim(pmElem(below[1::2], below[0::2], cap)))
    return levels


class DyadicTree(object):
    """
    Preprocessed ranged products for one RecurrenceSpec.

    T[h] has shape (paddedRows >> h, t, t, L_h) with T[h][b] = T'_[b 2^h : (b+1) 2^h];
    S[h] holds the matching products of leading coefficients.  From the
    block level upwards the tree also stores the per-block gradients used
    by the multiplications and the Q products of every node.
    """

    def __init__(self, spec):
        """Build every level bottom-up."""
        assert isinstance(spec, RecurrenceSpec)
        self.spec = spec
        cap = spec.cap
        self.cap = cap
        leading = spec.coefficientArray[:, 0, :]
        if cap is not None:
            leading = leading[:, :cap]
        self.T = productLevels(transitionArray(spec), cap)
        self.S = _suffixLevels(leading, cap)
        logger.debug("dyadic tree: %d levels over %d rows, width %d", len(self.T), spec.paddedRows, spec.internalWidth)
        blockSize = min(max(nextPow2(spec.internalWidth), settings.leafBlock), spec.paddedRows)
        self.blockSize = blockSize
        self.blockLevel = blockSize.bit_length() - 1
        self._buildBlocks(leading)
        self._buildQ()
        self._buildRequired()
        self._buildRoot()
        if settings.debug:
            auditDegrees(self)

    def _buildBlocks(self, leading):
        spec, cap, bs = self.spec, self.cap, self.blockSize
        t, r = spec.internalWidth, spec.rank
        nb = spec.paddedRows // bs
        trans = self.T[0].reshape((nb, bs) + self.T[0].shape[1:])
        lead = leading.reshape(nb, bs, -1)
        C = spec.paddedC.reshape(nb, bs, r)
        one = np.ones((nb, 1), dtype=np.int64)
        prefix = [one]
        for o in range(bs):
            prefix.append(pmElem(prefix[-1], lead[:, o], cap))
        suffix = [one]
        for o in range(bs - 1, -1, -1):
            suffix.append(pmElem(suffix[-1], lead[:, o], cap))
        suffix = suffix[::-1]
        Z = pmIdentity(t, (nb,))
        Y = np.zeros((nb, t, r, 1), dtype=np.int64)
        Y[:, t - 1, :, 0] = C[:, 0]
        pgrad, hgrad = [], []
        for o in range(bs):
            pgrad.append(pmElem(suffix[o + 1][:, None, :], Z[:, t - 1], cap))
            hgrad.append(pmElem(suffix[o + 1][:, None, :], Y[:, t - 1], cap))
            step = trans[:, o]
            if o < bs - 1:
                Z = pmTrim(pmMul(step, Z, cap))
                fresh = np.zeros((nb, t, r, 1), dtype=np.int64)
                fresh[:, t - 1, :, 0] = C[:, o + 1]
                fresh = pmElem(prefix[o + 1][:, None, None, :], fresh, cap)
                Y = pmTrim(pmAdd(pmMul(step, Y, cap), fresh))
            else:
                self.blockQ = pmTrim(pmMul(step, Y, cap))
        length = max(max(p.shape[-1] for p in pgrad), max(h.shape[-1] for h in hgrad))
        self.Pgrad = np.stack([pmPad(p, length) for p in pgrad], axis=1)
        self.Hgrad = np.stack([pmPad(h, length) for h in hgrad], axis=1)

    def _buildQ(self):
        """Q[k] belongs to level blockLevel + k."""
        self.Q = [self.blockQ]
        for h in range(self.blockLevel, len(self.T) - 1):
            below = self.Q[-1]
            left = pmMul(self.T[h][1::2], below[0::2], self.cap)
            right = pmElem(self.S[h][0::2][:, None, None, :], below[1::2], self.cap)
            self.Q.append(pmTrim(pmAdd(left, right)))

    def _buildRequired(self):
        """Functional lengths needed at each level by the forward traversal."""
        need = self.Pgrad.shape[-1]
        self.required = [need]
        for h in range(self.blockLevel, len(self.T) - 1):
            grow = max(self.S[h].shape[-1], self.T[h].shape[-1], self.Q[h - self.blockLevel].shape[-1])
            need = need + grow - 1
            if self.cap is not None:
                need = min(need, self.cap)
            self.required.append(need)

    def _buildRoot(self):
        spec = self.spec
        root = trim(self.S[-1][0])
        try:
            self.rootInverse = polyInvMod(root, spec.modulus)
        except NotInvertibleError:
            raise LeadingCoefficientError()

    def rangedProduct(self, start, stop):
        """T'_[start:stop] for a dyadic interval."""
        width = stop - start
        h = width.bit_length() - 1
        assert width == 1 << h and start % width == 0, "interval is not dyadic"
        return self.T[h][start >> h]

    def suffixProduct(self, start, stop):
        """S_[start:stop] for a dyadic interval."""
        width = stop - start
        h = width.bit_length() - 1
        assert width == 1 << h and start % width == 0, "interval is not dyadic"
        return trim(self.S[h][start >> h])


def buildDyadicTree(spec):
    """Preprocess a spec; see DyadicTree."""
    return DyadicTree(spec)


def auditDegrees(tree):
    """
    Check the degree bound of every stored range product.

    deg T'_[l:r][i, j] <= (d + dbar) max(r - l + i - j, 0) and
    deg S_[l:r] <= dbar (r - l); raises AssertionError on violation.
    """
    d, dbar = tree.spec.degree
    step = d + dbar
    for h, level in enumerate(tree.T):
        width = 1 << h
        t = level.shape[1]
        nonzero = level != 0
        for i in range(t):
            for j in range(t):
                used = np.flatnonzero(nonzero[:, i, j].any(axis=0))
                if used.size:
                    bound = step * max(width + i - j, 0)
                    if tree.cap is not None:
                        bound = min(bound, tree.cap - 1)
                    assert used[-1] <= bound, "T entry ({0},{1}) at width {2} has degree {3} > {4}".format(
                        i, j, width, used[-1], bound)
        used = np.flatnonzero(tree.S[h].any(axis=0))
        if used.size:
            assert used[-1] <= dbar * width, "S at width {0} has degree {1}".format(width, used[-1])
    return True


def structureEntry(spec, tree, i, j):
    """
    Entry h_{i,j} of H = G^{-1} reduced modulo c_R.

    Computed by a sequential product of transitions and one modular inverse,
    so it is meant for tests.
    """
    assert isinstance(spec, RecurrenceSpec)
    if j > i:
        return Poly()
    modulus = spec.modulus
    trans = transitionArray(spec)
    t = spec.internalWidth
    product = pmIdentity(t)
    denominator = np.array([1], dtype=np.int64)
    for k in range(j, i):
        product = pmTrim(pmMul(trans[k], product))
        product = np.stack([np.stack([pmPad(polyRem(trim(product[u, v]), modulus), max(len(modulus), 1))
                                      for v in range(t)]) for u in range(t)])
    for k in range(j, i + 1):
        denominator = polyRem(polyMul(denominator, trim(spec.coefficientArray[k, 0])), modulus)
    try:
        scale = polyInvMod(denominator, modulus)
    except NotInvertibleError:
        raise LeadingCoefficientError()
    return Poly(polyRem(polyMul(trim(product[t - 1, t - 1]), scale), modulus))
