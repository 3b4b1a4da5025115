# -*- coding: utf-8 -*-
"""
Reproducible random test material.

SplitMix64 is a tiny stream generator with published constants, so the
cases behind a given seed are the same on every platform.  The helpers build
random specs, displacement reps and quasiseparable matrices on top of it.
"""
from logging import getLogger

import numpy as np

from .descriptors import Companion, Diagonal, Quasi, Shift, TriangularBand, isBand
from .displacement import DisplacementRep, SYLVESTER
from .errors import DisplacementOperatorError, LeadingCoefficientError
from .field import P, inv
from .quasisep import QuasiSep
from .recurrence import RecurrenceSpec, basicSpec

logger = getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_1 = 0xBF58476D1CE4E5B9
MIX_2 = 0x94D049BB133111EB

R_KINDS = ('shift', 'companion', 'diagonal', 'band', 'quasi')

# Retries before a random draw that keeps hitting a degenerate case gives up.
MAX_ATTEMPTS = 20


class SplitMix64(object):
    """The splitmix64 stream."""

    def __init__(self, seed):
        """Start the stream at `seed`."""
        self.state = int(seed) & MASK64

    def next(self):
        """Next 64-bit output."""
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX_1) & MASK64
        z = ((z ^ (z >> 27)) * MIX_2) & MASK64
        return z ^ (z >> 31)

    def below(self, bound):
        """Integer in [0, bound)."""
        return self.next() % bound

    def residue(self, nonzero=False):
        """Field element, optionally nonzero."""
        if nonzero:
            return 1 + self.below(P - 1)
        return self.below(P)

    def residues(self, *shape):
        """Array of field elements."""
        count = int(np.prod(shape)) if shape else 1
        return np.array([self.residue() for _ in range(count)], dtype=np.int64).reshape(shape)

    def distinct(self, count, avoid=()):
        """`count` pairwise distinct residues, none of them in `avoid`."""
        seen = set(int(v) for v in avoid)
        out = []
        while len(out) < count:
            value = self.residue()
            if value not in seen:
                seen.add(value)
                out.append(value)
        return np.array(out, dtype=np.int64)


def randomQuasiSep(rng, n, order=1):
    """Dense random matrix whose off-diagonal blocks have rank <= order, as a QuasiSep."""
    if order == 0:
        dense = np.diag(rng.residues(n))
    else:
        U, V = rng.residues(n, order), rng.residues(n, order)
        W, Z = rng.residues(n, order), rng.residues(n, order)
        dense = np.zeros((n, n), dtype=np.int64)
        for k in range(order):
            dense = (dense + np.tril(np.outer(U[:, k], V[:, k]) % P, -1)) % P
            dense = (dense + np.triu(np.outer(W[:, k], Z[:, k]) % P, 1)) % P
        dense[np.arange(n), np.arange(n)] = rng.residues(n)
    return QuasiSep.fromDense(dense, order=order)


def randomDescriptor(rng, kind, n, delta=1, avoid=()):
    """Random descriptor of the given kind and size."""
    if kind == 'shift':
        return Shift(n)
    if kind == 'companion':
        return Companion(np.concatenate((rng.residues(n), [1])))
    if kind == 'diagonal':
        return Diagonal(rng.distinct(n, avoid))
    if kind == 'band':
        bands = rng.residues(delta + 1, n)
        bands[0] = rng.distinct(n, avoid)
        for k in range(1, delta + 1):
            bands[k, :k] = 0
        return TriangularBand(bands, lower=True)
    if kind == 'quasi':
        return Quasi(randomQuasiSep(rng, n, order=1))
    raise ValueError("unknown descriptor kind: {0}".format(kind))


def _randomPoly(rng, degree, nonzeroConstant=False):
    coeffs = rng.residues(degree + 1)
    if nonzeroConstant:
        coeffs[0] = rng.residue(nonzero=True)
    return coeffs


def randomSpec(rng, n, t, r, kind='shift', degree=(1, 0), rows=None):
    """
    Random spec of width t, rank r over an R of the given kind.

    With dbar = 0 every g_{i,0} is a nonzero constant, so the spec is always
    valid; larger dbar redraws until the leading coefficients are invertible.
    """
    rows = n if rows is None else rows
    d, dbar = degree
    for attempt in range(MAX_ATTEMPTS):
        R = randomDescriptor(rng, kind, n)
        g = []
        for i in range(rows):
            row = [_randomPoly(rng, dbar, nonzeroConstant=True)]
            row += [_randomPoly(rng, d * j + dbar) for j in range(1, min(t, i) + 1)]
            g.append(tuple(row))
        C, D = rng.residues(rows, r), rng.residues(r, n)
        try:
            return RecurrenceSpec(rows=rows, cols=n, width=t, rank=r, degree=degree, g=tuple(g), C=C, D=D, R=R)
        except LeadingCoefficientError:
            logger.debug("random spec attempt %d had a non-invertible leading coefficient", attempt)
    raise LeadingCoefficientError()


def randomTriangularSpec(rng, n, t):
    """
    Random plain width-t spec modulo X^n whose rows have deg a_i = i exactly.

    The X^i coefficient of row i is forced to be nonzero by nudging the top
    coefficient of g_{i,1}.
    """
    initial = []
    leads = []
    for i in range(min(t, n)):
        row = np.zeros(n, dtype=np.int64)
        row[:i] = rng.residues(i)
        row[i] = rng.residue(nonzero=True)
        initial.append(row)
        leads.append(int(row[i]))
    g = [()] * n
    for i in range(t, n):
        coeffs = [rng.residues(j + 1) for j in range(1, t + 1)]
        lead = sum(int(coeffs[j - 1][j]) * leads[i - j] for j in range(1, t + 1)) % P
        if not lead:
            coeffs[0][1] = (coeffs[0][1] + 1) % P
            lead = leads[i - 1]
        leads.append(lead)
        g[i] = tuple(coeffs)
    return basicSpec(initial, g, n)


def _spectrumToAvoid(L, op):
    """Eigenvalues R must not have for the rep to be unique (band kinds only)."""
    if not isBand(L):
        return ()
    eigen = L.bandForm()[0][0]
    if op == SYLVESTER:
        return eigen
    return [inv(e) for e in eigen if e]


def randomRep(rng, n, r, op=SYLVESTER, leftKind='diagonal', rightKind='diagonal'):
    """Random displacement rep; redraws until the operator is invertible."""
    for attempt in range(MAX_ATTEMPTS):
        L = randomDescriptor(rng, leftKind, n)
        avoid = _spectrumToAvoid(L, op)
        R = randomDescriptor(rng, rightKind, n, avoid=avoid)
        try:
            return DisplacementRep(op=op, L=L, R=R, C=rng.residues(n, r), D=rng.residues(r, n))
        except DisplacementOperatorError:
            logger.debug("random rep attempt %d had overlapping spectra", attempt)
    raise DisplacementOperatorError()
