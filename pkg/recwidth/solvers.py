# -*- coding: utf-8 -*-
"""
Solvers for recurrence-width and displacement-rank matrices.

triangularSolve inverts the lower triangular matrix of a plain width-t
recurrence (rows a_i with deg a_i = i modulo X^N) by halving: each half is a
ShiftedSpec, i.e. the same recurrence restarted from a window of
coefficients of the t preceding rows, and the off-diagonal coupling is a
small recurrence spec multiplied through the multiply module.

displacementInverse returns Sylvester generators of A^{-1} by recursive
Schur complements on the block split of L and R.
"""
from logging import getLogger

import numpy as np

from .config import settings
from .descriptors import Shift
from .displacement import DisplacementRep, SYLVESTER, dispMult
from .errors import SingularMatrixError, SpecValidationError
from .field import P, asVector, inv, matMul
from .linalg import rankFactor, solve, sylvesterDense, inverseNoPivot
from .multiply import transposeMult, forwardMult
from .poly import padTo, polyMul, trim, nextPow2
from .polymat import pmMul
from .recurrence import RecurrenceSpec, productLevels, buildDyadicTree

logger = getLogger(__name__)


class _SolverContext(object):
    """Normalised recurrence data shared by every block of one solve."""

    def __init__(self, spec):
        """Check the shape of the recurrence and normalise g_{i,0} to one."""
        assert isinstance(spec, RecurrenceSpec)
        d, dbar = spec.degree
        t = spec.width
        if spec.R.kind != 'shift' or dbar != 0 or d > 1 or spec.rows != spec.cols:
            raise SpecValidationError("triangular solves need a square degree-(1,0) recurrence modulo X^N")
        if np.any(spec.C[t:]):
            raise SpecValidationError("triangular solves need the error term confined to the first t rows")
        if spec.rows < t:
            raise SpecValidationError("triangular solves need at least t rows")
        n = spec.rows
        size = nextPow2(max(n, 2 * max(t, 1)))
        # deg g_{i,j} <= j, so t + 1 coefficients hold every g_{i,j}.
        length = max(t, 1) + 1
        self.n, self.size, self.t, self.length = n, size, t, length
        g = np.zeros((size, t + 1, length), dtype=np.int64)
        for i, row in enumerate(spec.g):
            scale = inv(row[0][0])
            for j, p in enumerate(row):
                g[i, j] = padTo(p, length) * scale % P
        # Padding rows a_i = X a_{i-1} keep the matrix triangular with the same solution.
        g[n:, 0, 0] = 1
        if t:
            g[n:, 1, 1] = 1
        self.g = g
        F = matMul(spec.C[:t], spec.D)
        initial = np.zeros((t, size), dtype=np.int64)
        for i in range(t):
            value = padTo(F[i] * inv(spec.g[i][0][0]) % P, size)
            for j in range(1, i + 1):
                value = (value + padTo(polyMul(trim(g[i, j]), trim(initial[i - j])), size)) % P
            initial[i] = value
        self.initial = initial
        self.levels = productLevels(self._rowTransitions(), cap=size) if t else None

    def _rowTransitions(self):
        """T for every row: identity below t, companion step afterwards."""
        t, size = self.t, self.size
        out = np.zeros((size, t, t, self.length), dtype=np.int64)
        out[:, np.arange(t - 1), np.arange(1, t), 0] = 1
        out[t:, t - 1, :, :] = self.g[t:, :0:-1, :]
        out[:t] = 0
        out[:t, np.arange(t), np.arange(t), 0] = 1
        return out

    def advance(self, start, count, state, length):
        """State after rows [start, start + count), truncated to `length` coefficients."""
        h = count.bit_length() - 1
        product = self.levels[h][start >> h]
        return pmMul(product, state[:, None, :], cap=length)[:, 0, :]

    def step(self, i, state, length):
        """New row i from the state of the t rows before it."""
        t = self.t
        value = np.zeros(length, dtype=np.int64)
        for j in range(1, t + 1):
            if self.g[i, j].any():
                value = (value + padTo(polyMul(trim(self.g[i, j]), trim(state[t - j])), length)) % P
        return value


class ShiftedSpec(object):
    """
    Diagonal block [start, start + size) of the triangular matrix.

    `state` holds coefficients offset .. start + size - 1 of the t rows
    preceding the block (for the first block, the preloaded rows a_0 ..
    a_{t-1}).  Coefficients below the offset cannot reach column start.
    """

    def __init__(self, context, start, size, offset, state):
        """Store the window."""
        self.context = context
        self.start, self.size, self.offset = start, size, offset
        self.state = state

    @property
    def width(self):
        """Coefficient window length."""
        return self.start + self.size - self.offset

    def isBase(self):
        """Blocks below the leaf size, or too small to split, are solved densely."""
        t = self.context.t
        return self.size <= settings.leafBlock or self.size < 2 * max(t, 1) or not t

    def rows(self):
        """Window coefficients of every row of the block, shape (size, width)."""
        ctx, t = self.context, self.context.t
        state = self.state.copy()
        out = np.zeros((self.size, self.width), dtype=np.int64)
        for u in range(self.size):
            i = self.start + u
            if i < t:
                out[u] = ctx.initial[i][self.offset:self.offset + self.width]
                continue
            value = ctx.step(i, state, self.width) if t else np.zeros(self.width, dtype=np.int64)
            out[u] = value
            if t:
                state = np.concatenate((state[1:], value[None]), axis=0)
        return out

    def dense(self):
        """The block as a dense lower triangular matrix."""
        lo = self.start - self.offset
        return self.rows()[:, lo:lo + self.size]

    def split(self):
        """(top, bottom, coupling spec, column offset of the block in the coupling)."""
        ctx, t = self.context, self.context.t
        half = self.size // 2
        start, offset = self.start, self.offset
        topOffset = max(0, start - half - t)
        top = ShiftedSpec(ctx, start, half, topOffset,
                          self.state[:, topOffset - offset:start + half - offset].copy())
        full = ctx.advance(start, half, self.state, self.width)
        bottomOffset = max(0, start - t)
        bottom = ShiftedSpec(ctx, start + half, half, bottomOffset, full[:, bottomOffset - offset:].copy())
        return top, bottom, self._coupling(full, half), start - offset

    def _coupling(self, full, half):
        """Recurrence for the rows of the lower-left block, in window coordinates."""
        ctx, t = self.context, self.context.t
        cols = self.start + half - self.offset
        first = self.start + half
        one = np.array([1], dtype=np.int64)
        D = np.zeros((t, cols), dtype=np.int64)
        coeffs = []
        for u in range(half):
            i = first + u
            coeffs.append((one,) + tuple(trim(ctx.g[i, j]) for j in range(1, min(t, u) + 1)))
            if u < t:
                value = np.zeros(cols, dtype=np.int64)
                for j in range(u + 1, t + 1):
                    value = (value + padTo(polyMul(trim(ctx.g[i, j]), trim(full[t - j + u, :cols])), cols)) % P
                D[u] = value
        C = np.zeros((half, t), dtype=np.int64)
        C[np.arange(t), np.arange(t)] = 1
        return RecurrenceSpec(rows=half, cols=cols, width=t, rank=t, degree=(1, 0), g=tuple(coeffs), C=C, D=D,
                              R=Shift(cols))


def _solveBlock(block, y, transposed):
    dense = block.dense()
    if np.any(np.diagonal(dense) == 0):
        raise SingularMatrixError()
    return solve(dense if transposed else dense.T, y)


def _solve(block, y, transposed):
    """transposed=False solves B^T x = y, transposed=True solves B x = y."""
    if block.isBase():
        return _solveBlock(block, y, transposed)
    top, bottom, coupling, column = block.split()
    half = block.size // 2
    tree = buildDyadicTree(coupling)
    if transposed:
        x1 = _solve(top, y[:half], transposed)
        padded = np.zeros(coupling.cols, dtype=np.int64)
        padded[column:column + half] = x1
        x2 = _solve(bottom, (y[half:] - forwardMult(coupling, tree, padded)) % P, transposed)
    else:
        x2 = _solve(bottom, y[half:], transposed)
        x1 = _solve(top, (y[:half] - transposeMult(coupling, tree, x2)[column:column + half]) % P, transposed)
    return np.concatenate((x1, x2))


def rootBlock(spec):
    """The ShiftedSpec covering the whole (padded) matrix of a plain recurrence."""
    ctx = _SolverContext(spec)
    return ShiftedSpec(ctx, 0, ctx.size, 0, ctx.initial.copy())


def triangularSolve(spec, y, transposed=False, block=None):
    """
    Solve A^T x = y (or A x = y when transposed is set).

    spec must be a square recurrence modulo X^N of degree (1, 0) whose error
    term lives in the first t rows; a row with deg a_i < i makes A singular.
    A root block from rootBlock(spec) may be passed in to reuse its setup.
    """
    y = asVector(y).reshape(-1)
    assert len(y) == spec.rows, "right-hand side has the wrong length"
    block = rootBlock(spec) if block is None else block
    padded = np.zeros(block.size, dtype=np.int64)
    padded[:len(y)] = y
    x = _solve(block, padded, transposed)
    return x[:spec.rows]


def generatorCompress(G, H):
    """
    Minimal generators with the same product.

    Returns (G', H') with G' H'^T = G H^T and exactly rank(G H^T) columns.
    """
    G, H = asVector(G), asVector(H)
    Gb, T = rankFactor(G)
    K = matMul(H, T.T.copy())
    Kb, U = rankFactor(K)
    return matMul(Gb, U.T.copy()), Kb


def _blockGenerators(descriptor, n1):
    """Factors W, Z of the off-diagonal part of a descriptor split: off = W Z^T."""
    first, second, UL, VL, UU, VU = descriptor.split(n1)
    n = descriptor.size
    qu, ql = UU.shape[1], UL.shape[1]
    W = np.zeros((n, qu + ql), dtype=np.int64)
    Z = np.zeros((n, qu + ql), dtype=np.int64)
    W[:n1, :qu] = UU
    W[n1:, qu:] = UL
    Z[n1:, :qu] = VU
    Z[:n1, qu:] = VL
    return first, second, W, Z


def _invert(rep, depth=0):
    """Sylvester rep of A^{-1}: R A^{-1} - A^{-1} L = C' D'."""
    n = rep.L.size
    G, Ht = rep.C, rep.D
    if n <= settings.inverseLeafSize:
        A = sylvesterDense(rep.L.dense(), rep.R.dense(), matMul(G, Ht))
        Ainv = inverseNoPivot(A)
        newG, newH = generatorCompress((-matMul(Ainv, G)) % P, matMul(Ainv.T.copy(), Ht.T.copy()))
        return DisplacementRep(op=SYLVESTER, L=rep.R, R=rep.L, C=newG, D=newH.T.copy())
    n1 = n // 2
    L11, L22, WL, ZL = _blockGenerators(rep.L, n1)
    R11, R22, WR, ZR = _blockGenerators(rep.R, n1)
    Gf = np.concatenate((G, (-WL) % P, dispMult(rep, WR)), axis=1)
    Hf = np.concatenate((Ht.T, dispMult(rep, ZL, transposed=True), ZR), axis=1)
    G1, H1 = generatorCompress(Gf[:n1], Hf[:n1])
    G2, H2 = Gf[n1:], Hf[n1:]
    inv11 = _invert(DisplacementRep(op=SYLVESTER, L=L11, R=R11, C=G1, D=H1.T.copy()), depth + 1)

    def lower(x):
        padded = np.zeros((n,) + x.shape[1:], dtype=np.int64)
        padded[:n1] = x
        return dispMult(rep, padded)[n1:]

    def upper(z):
        padded = np.zeros((n,) + z.shape[1:], dtype=np.int64)
        padded[n1:] = z
        return dispMult(rep, padded)[:n1]

    def lowerT(z):
        padded = np.zeros((n,) + z.shape[1:], dtype=np.int64)
        padded[n1:] = z
        return dispMult(rep, padded, transposed=True)[:n1]

    def upperT(x):
        padded = np.zeros((n,) + x.shape[1:], dtype=np.int64)
        padded[:n1] = x
        return dispMult(rep, padded, transposed=True)[n1:]

    G1full, H1full = Gf[:n1], Hf[:n1]
    schurG = (G2 - lower(dispMult(inv11, G1full))) % P
    schurH = (H2 - upperT(dispMult(inv11, H1full, transposed=True))) % P
    schurG, schurH = generatorCompress(schurG, schurH)
    invS = _invert(DisplacementRep(op=SYLVESTER, L=L22, R=R22, C=schurG, D=schurH.T.copy()), depth + 1)

    def applyInverse(x):
        y1 = dispMult(inv11, x[:n1])
        z = dispMult(invS, (x[n1:] - lower(y1)) % P)
        y1 = (y1 - dispMult(inv11, upper(z))) % P
        return np.concatenate((y1, z))

    def applyInverseT(x):
        y1 = dispMult(inv11, x[:n1], transposed=True)
        z = dispMult(invS, (x[n1:] - upperT(y1)) % P, transposed=True)
        y1 = (y1 - dispMult(inv11, lowerT(z), transposed=True)) % P
        return np.concatenate((y1, z))

    newG, newH = generatorCompress((-applyInverse(G)) % P, applyInverseT(Ht.T.copy()))
    logger.debug("inverse of size %d at depth %d: generator width %d", n, depth, newG.shape[1])
    return DisplacementRep(op=SYLVESTER, L=rep.R, R=rep.L, C=newG, D=newH.T.copy())


def displacementInverse(rep):
    """
    Sylvester generators of A^{-1} for a strongly regular A.

    The result has L' = R and R' = L with R A^{-1} - A^{-1} L = C' D'.
    """
    assert isinstance(rep, DisplacementRep)
    if rep.op != SYLVESTER:
        raise SpecValidationError("displacement inversion needs a Sylvester representation")
    if rep.L.size != rep.R.size:
        raise SpecValidationError("displacement inversion needs a square matrix")
    return _invert(rep)
