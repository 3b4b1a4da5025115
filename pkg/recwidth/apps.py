# -*- coding: utf-8 -*-
"""
Applications built on the fast products.

  * Orthogonal polynomial transforms: a_i = (alpha_i X + beta_i) a_{i-1} +
    gamma_i a_{i-2} evaluated at distinct points, a width-2 recurrence over
    a diagonal R.
  * Stirling numbers of the second kind: the rows of W are the Krylov
    columns of the lower bidiagonal D + S, so W x and W^T x are transposed
    and plain Krylov products.
  * Bernoulli numbers B_i = sum_k (-1)^k k!/(k+1) {i k}, i.e. one product
    with W.
  * Bivariate evaluation: the monomial evaluation matrix of points (x, y)
    with total x-degree and y-degree below d has recurrence width one over
    the shift of size d^2.
"""
from dataclasses import dataclass
from functools import cached_property, lru_cache
from logging import getLogger

import numpy as np

from .descriptors import Diagonal, Shift, TriangularBand
from .errors import RepeatedPointsError, SpecValidationError
from .field import P, asVector, inv, powMod
from .krylov import krylovApply, krylovApplyTranspose
from .multiply import forwardMult, transposeMult
from .recurrence import RecurrenceSpec, buildDyadicTree

logger = getLogger(__name__)

FORWARD = 'forward'
PROJECTION = 'projection'


def _threeTermRows(alpha, beta, gamma):
    one = np.array([1], dtype=np.int64)
    rows = [(one,)]
    for i in range(1, len(alpha)):
        row = (one, np.array([beta[i], alpha[i]], dtype=np.int64))
        if i > 1:
            row += (np.array([gamma[i]], dtype=np.int64),)
        rows.append(row)
    return tuple(rows)


@dataclass(frozen=True, eq=False)
class OrthoFamily(object):
    """
    Three-term recurrence coefficients and the evaluation points.

    alpha, beta and gamma have one entry per polynomial; entry 0 is unused
    (a_0 = 1) and gamma_1 is ignored since a_{-1} = 0.
    """

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        """Normalise to residues and check the lengths."""
        for name in ('alpha', 'beta', 'gamma', 'points'):
            object.__setattr__(self, name, asVector(getattr(self, name)).reshape(-1))
        if not len(self.alpha) == len(self.beta) == len(self.gamma):
            raise SpecValidationError("alpha, beta and gamma need one entry per polynomial")

    @cached_property
    def spec(self):
        """Width-2, rank-1, degree-(1, 0) recurrence over diag(points)."""
        if len(np.unique(self.points)) != len(self.points):
            raise RepeatedPointsError()
        n = len(self.points)
        C = np.zeros((len(self.alpha), 1), dtype=np.int64)
        C[0, 0] = 1
        return RecurrenceSpec(rows=len(self.alpha), cols=n, width=2, rank=1, degree=(1, 0),
                              g=_threeTermRows(self.alpha, self.beta, self.gamma), C=C,
                              D=np.ones((1, n), dtype=np.int64), R=Diagonal(self.points))

    @cached_property
    def tree(self):
        """Dyadic tree of the spec."""
        return buildDyadicTree(self.spec)


def chebyshevFamily(points, count=None):
    """Chebyshev polynomials of the first kind T_0 .. T_{count-1} at the given points."""
    points = asVector(points).reshape(-1)
    count = len(points) if count is None else count
    alpha = np.full(count, 2, dtype=np.int64)
    alpha[:2] = [0, 1]
    beta = np.zeros(count, dtype=np.int64)
    gamma = np.full(count, P - 1, dtype=np.int64)
    gamma[:2] = 0
    return OrthoFamily(alpha=alpha, beta=beta, gamma=gamma, points=points)


def chebyshevSpec(n):
    """
    Coefficient matrix of T_0 .. T_{n-1} as a recurrence modulo X^n.

    t = 2, C = D = e_0, g_{1,1} = X, g_{i,1} = 2X and g_{i,2} = -1.
    """
    one = np.array([1], dtype=np.int64)
    rows = [(one,)]
    for i in range(1, n):
        if i == 1:
            rows.append((one, np.array([0, 1], dtype=np.int64)))
        else:
            rows.append((one, np.array([0, 2], dtype=np.int64), np.array([P - 1], dtype=np.int64)))
    C = np.zeros((n, 1), dtype=np.int64)
    C[0, 0] = 1
    D = np.zeros((1, n), dtype=np.int64)
    D[0, 0] = 1
    return RecurrenceSpec(rows=n, cols=n, width=2, rank=1, degree=(1, 0), g=tuple(rows), C=C, D=D, R=Shift(n))


def orthogonalTransform(family, b, direction=FORWARD):
    """
    Transform for A[i, j] = a_i(z_j).

    Forward evaluates sum_i b_i a_i at every point, i.e. A^T b; projection
    takes one value per point back to one number per polynomial, A b.
    """
    assert isinstance(family, OrthoFamily)
    if direction == FORWARD:
        return transposeMult(family.spec, family.tree, b)
    if direction == PROJECTION:
        return forwardMult(family.spec, family.tree, b)
    raise ValueError("direction must be '{0}' or '{1}'".format(FORWARD, PROJECTION))


@lru_cache(maxsize=8)
def stirlingOperator(n):
    """The lower bidiagonal D + S with D = diag(0, 1, ..., n-1)."""
    bands = np.zeros((2, n), dtype=np.int64)
    bands[0] = np.arange(n)
    bands[1, 1:] = 1
    return TriangularBand(bands, lower=True)


def stirlingApply(n, x, transposed=False):
    """W x (or W^T x) for the n x n Stirling matrix W[i, j] = {i j}."""
    start = np.zeros(n, dtype=np.int64)
    start[0] = 1
    operator = stirlingOperator(n)
    if transposed:
        return krylovApply(operator, start, x)
    return krylovApplyTranspose(operator, start, x)


def bernoulliNumbers(n):
    """B_0, ..., B_{n-1} modulo p (B_1 = -1/2)."""
    assert 0 <= n < P
    if not n:
        return []
    x = np.zeros(n, dtype=np.int64)
    factorial = 1
    for k in range(n):
        if k:
            factorial = factorial * k % P
        value = factorial * inv(k + 1) % P
        x[k] = value if k % 2 == 0 else (-value) % P
    return [int(v) for v in stirlingApply(n, x)]


def bivariateEvalSpec(points, d):
    """
    Spec whose row i evaluates the monomials x^a y^b (a, b < d) at point i.

    Columns are ordered 1, x, ..., x^{d-1}, y, yx, ...; with N = d^2,

        (1/(xy) - X/y - X^d/x + X^{d+1}) a_i = 1/(xy) - (x^{d-1}/y) X^d

    modulo X^N, so the width is one (with a zero g_{i,1}) and the error
    matrix has two nonzero columns.
    """
    points = [(int(x) % P, int(y) % P) for x, y in points]
    assert d >= 1 and points
    n = d * d
    rank = 2 if d > 1 else 1
    rows = []
    C = np.zeros((len(points), rank), dtype=np.int64)
    for i, (x, y) in enumerate(points):
        if not x or not y:
            raise SpecValidationError("bivariate points need nonzero coordinates")
        ix, iy = inv(x), inv(y)
        lead = np.zeros(d + 2, dtype=np.int64)
        lead[0] = ix * iy % P
        lead[1] = (-iy) % P
        lead[d] = (lead[d] - ix) % P
        lead[d + 1] = (lead[d + 1] + 1) % P
        rows.append((lead,))
        C[i, 0] = ix * iy % P
        if rank == 2:
            C[i, 1] = (-powMod(x, d - 1) * iy) % P
    D = np.zeros((rank, n), dtype=np.int64)
    D[0, 0] = 1
    if rank == 2:
        D[1, d] = 1
    logger.debug("bivariate spec: %d points, d = %d", len(points), d)
    return RecurrenceSpec(rows=len(points), cols=n, width=1, rank=rank, degree=(0, d + 1), g=tuple(rows), C=C, D=D,
                          R=Shift(n))
