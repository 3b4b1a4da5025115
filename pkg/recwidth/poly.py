# -*- coding: utf-8 -*-
"""
Dense univariate polynomials over F_p.

Internally a polynomial is a trimmed int64 numpy array of coefficients,
constant term first; the zero polynomial is the empty array.  The Poly class
wraps such an array for callers who prefer operators.  Multiplication switches
from split schoolbook convolution to a number-theoretic transform once the
degree sum reaches settings.nttThreshold.
"""
from functools import lru_cache
from logging import getLogger

import numpy as np

from .config import settings
from .errors import NotInvertibleError, RepeatedPointsError, ZeroModulusError, FieldModulusError
from .field import P, ROOT, TWO_ADICITY, SPLIT_BITS, SPLIT_MASK, CHUNK, inv, invArray, asVector, matMul

logger = getLogger(__name__)

NEG_INF = float('-inf')
# Subtrees whose remainder is at most this long are finished by Horner.
HORNER_CUTOFF = 32
# Long division is used below this quotient length, Newton division above.
NEWTON_DIVISION_CUTOFF = 64
EMPTY = np.zeros(0, dtype=np.int64)


def trim(a):
    """Drop trailing zero coefficients."""
    a = np.asarray(a, dtype=np.int64)
    nonzero = np.flatnonzero(a)
    if nonzero.size == 0:
        return EMPTY
    return a[:nonzero[-1] + 1]


def asPoly(coeffs):
    """Return coeffs reduced into the field and trimmed."""
    if isinstance(coeffs, Poly):
        return coeffs.coeffs
    return trim(asVector(coeffs).reshape(-1))


def degree(a):
    """Degree of a polynomial; the zero polynomial has degree -inf."""
    return len(a) - 1 if len(a) else NEG_INF


def monomial(k, c=1):
    """Return c*X^k."""
    out = np.zeros(k + 1, dtype=np.int64)
    out[k] = c % P
    return trim(out)


def padTo(a, n):
    """Coefficients of a as a length-n array, zero padded or truncated."""
    out = np.zeros(n, dtype=np.int64)
    m = min(n, len(a))
    out[:m] = a[:m]
    return out


def polyAdd(a, b):
    """Sum of two polynomials."""
    if len(a) < len(b):
        a, b = b, a
    out = np.array(a, dtype=np.int64)
    out[:len(b)] = (out[:len(b)] + b) % P
    return trim(out)


def polyNeg(a):
    """Negation."""
    return trim((-np.asarray(a, dtype=np.int64)) % P)


def polySub(a, b):
    """Difference a - b."""
    return polyAdd(a, polyNeg(b))


def polyScale(a, c):
    """Scalar multiple c*a."""
    return trim(np.asarray(a, dtype=np.int64) * (int(c) % P) % P)


def truncate(a, n):
    """a mod X^n."""
    return trim(a[:n])


def reverse(a, n):
    """Coefficients of X^n a(1/X) for deg a <= n."""
    return trim(padTo(a, n + 1)[::-1])


def polyDeriv(a):
    """Formal derivative."""
    if len(a) <= 1:
        return EMPTY
    return trim(a[1:] * np.arange(1, len(a), dtype=np.int64) % P)


def polyMulSchool(a, b):
    """Schoolbook product by split int64 convolution."""
    if not len(a) or not len(b):
        return EMPTY
    lo = b & SPLIT_MASK
    hi = b >> SPLIT_BITS
    return trim((np.convolve(a, hi) % P * (1 << SPLIT_BITS) + np.convolve(a, lo)) % P)


@lru_cache(maxsize=None)
def _bitReversal(n):
    bits = n.bit_length() - 1
    index = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((index >> b) & 1) << (bits - 1 - b)
    return rev


@lru_cache(maxsize=None)
def _twiddles(length, invert):
    half = length // 2
    root = pow(ROOT, (P - 1) // length, P)
    if invert:
        root = pow(root, P - 2, P)
    powers = np.ones(1, dtype=np.int64)
    step = root
    while len(powers) < half:
        powers = np.concatenate((powers, powers * step % P))
        step = step * step % P
    return powers[:half]


def nextPow2(n):
    """Smallest power of two >= n (and >= 1)."""
    return 1 << max(0, int(n) - 1).bit_length()


def ntt(a, invert=False):
    """
    Number-theoretic transform along the last axis.

    The last axis length must be a power of two dividing p - 1.  Leading axes
    are transformed independently, which lets callers batch whole levels of a
    polynomial-matrix tree through one call.
    """
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[-1]
    if n > (1 << TWO_ADICITY):
        raise FieldModulusError("transform length {0} exceeds 2^{1}".format(n, TWO_ADICITY))
    if n == 1:
        return a.copy()
    lead = a.shape[:-1]
    a = a[..., _bitReversal(n)]
    length = 2
    while length <= n:
        half = length // 2
        blocks = a.reshape(lead + (n // length, length))
        u = blocks[..., :half]
        v = blocks[..., half:] * _twiddles(length, invert) % P
        a = np.concatenate(((u + v) % P, (u - v) % P), axis=-1).reshape(lead + (n,))
        length <<= 1
    if invert:
        a = a * pow(n, P - 2, P) % P
    return a


def polyMulNtt(a, b):
    """Product through the transform."""
    if not len(a) or not len(b):
        return EMPTY
    full = len(a) + len(b) - 1
    size = nextPow2(full)
    fa = ntt(padTo(a, size))
    fb = ntt(padTo(b, size))
    return trim(ntt(fa * fb % P, invert=True)[:full])


def polyMul(a, b):
    """Exact product, NTT once deg(a)+deg(b) reaches the threshold."""
    if not len(a) or not len(b):
        return EMPTY
    if len(a) + len(b) - 2 >= settings.nttThreshold or min(len(a), len(b)) > CHUNK:
        return polyMulNtt(a, b)
    return polyMulSchool(a, b)


def seriesInverse(a, n):
    """Return b with a*b = 1 mod X^n by Newton iteration; a(0) must be nonzero."""
    if n <= 0:
        return EMPTY
    if not len(a) or a[0] == 0:
        raise NotInvertibleError()
    b = np.array([inv(a[0])], dtype=np.int64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        ab = truncate(polyMul(truncate(a, k), b), k)
        correction = polySub(np.array([2], dtype=np.int64), ab)
        b = truncate(polyMul(b, correction), k)
    return b


def _monomialDegree(m):
    """k when m is c*X^k, otherwise None."""
    if len(m) and not np.any(m[:-1]):
        return len(m) - 1
    return None


def polyDivmod(a, m):
    """Quotient and remainder of a by nonzero m."""
    a, m = trim(a), trim(m)
    if not len(m):
        raise ZeroModulusError()
    dm = len(m) - 1
    if len(a) <= dm:
        return EMPTY, a
    lcInv = inv(m[-1])
    qlen = len(a) - dm
    if qlen <= NEWTON_DIVISION_CUTOFF or dm <= 8:
        rem = np.array(a, dtype=np.int64)
        quot = np.zeros(qlen, dtype=np.int64)
        monic = m * lcInv % P
        for k in range(qlen - 1, -1, -1):
            c = rem[k + dm]
            if c:
                quot[k] = c
                rem[k:k + dm + 1] = (rem[k:k + dm + 1] - c * monic) % P
        return trim(quot * lcInv % P), trim(rem[:dm])
    revQuot = truncate(polyMul(reverse(a, len(a) - 1), seriesInverse(reverse(m, dm), qlen)), qlen)
    quot = reverse(revQuot, qlen - 1)
    return quot, truncate(polySub(a, polyMul(quot, m)), dm)


def polyRem(a, m):
    """Remainder of a modulo m; m = X^k reduces by truncation."""
    m = trim(m)
    if not len(m):
        raise ZeroModulusError()
    k = _monomialDegree(m)
    if k is not None:
        return truncate(trim(a), k)
    return polyDivmod(a, m)[1]


def polyGcdExt(a, b):
    """
    Extended Euclid.

    Returns (g, s, t) with s*a + t*b = g and g monic (or zero when both
    inputs are zero).
    """
    r0, r1 = trim(a), trim(b)
    s0, s1 = np.array([1], dtype=np.int64), EMPTY
    t0, t1 = EMPTY, np.array([1], dtype=np.int64)
    while len(r1):
        q, r = polyDivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, polySub(s0, polyMul(q, s1))
        t0, t1 = t1, polySub(t0, polyMul(q, t1))
    if not len(r0):
        return EMPTY, EMPTY, EMPTY
    scale = inv(r0[-1])
    return polyScale(r0, scale), polyScale(s0, scale), polyScale(t0, scale)


def polyInvMod(a, m):
    """
    Inverse of a modulo m.

    Series inversion handles m = X^k; any other modulus goes through the
    extended Euclidean algorithm.  A common factor raises NotInvertibleError.
    """
    m = trim(m)
    if not len(m):
        raise ZeroModulusError()
    if len(m) == 1:
        return EMPTY
    k = _monomialDegree(m)
    a = polyRem(a, m)
    if k is not None:
        if not len(a) or a[0] == 0:
            raise NotInvertibleError()
        return seriesInverse(a, k)
    g, s, _ = polyGcdExt(a, m)
    if len(g) != 1:
        raise NotInvertibleError()
    return polyRem(s, m)


def polyEval(a, points):
    """Horner evaluation of a at every point (vectorised over the points)."""
    points = asVector(points)
    out = np.zeros_like(points)
    for c in a[::-1]:
        out = (out * points + c) % P
    return out


def middleProduct(p, seq, length):
    """
    Apply multiplication by p to a linear functional.

    seq lists the functional's values on 1, X, X^2, ...; the result lists the
    values of q -> seq(p*q) on the first `length` monomials.  Reads past the
    end of seq count as zero.
    """
    if not len(p) or length <= 0:
        return np.zeros(max(length, 0), dtype=np.int64)
    need = length + len(p) - 1
    window = padTo(seq, need)
    prod = polyMul(p[::-1].copy(), trim(window))
    return padTo(prod[len(p) - 1:], length)


def productOfLinear(points):
    """Return the product of (X - z) over the points."""
    return EvalTree(points).root


class EvalTree(object):
    """
    Subproduct tree over a list of evaluation points.

    levels[0] holds the linear factors X - z_i; each later level multiplies
    neighbouring pairs, carrying an odd last node up unchanged.  Node k of
    level h covers points [k*2^h, (k+1)*2^h).
    """

    def __init__(self, points):
        """Build every level bottom-up."""
        self.points = asVector(points).reshape(-1)
        level = [trim(np.array([(-z) % P, 1], dtype=np.int64)) for z in self.points]
        self.levels = [level]
        while len(level) > 1:
            paired = [polyMul(level[k], level[k + 1]) for k in range(0, len(level) - 1, 2)]
            if len(level) % 2:
                paired.append(level[-1])
            level = paired
            self.levels.append(level)

    @property
    def root(self):
        """Product of all linear factors."""
        if not len(self.points):
            return np.array([1], dtype=np.int64)
        return self.levels[-1][0]

    def __len__(self):
        return len(self.points)

    def span(self, height, index):
        """Slice of points covered by a node."""
        width = 1 << height
        return slice(index * width, min((index + 1) * width, len(self.points)))


def multipointEval(a, tree):
    """Evaluate a at every point of the tree by remaindering down the levels."""
    assert isinstance(tree, EvalTree)
    out = np.zeros(len(tree), dtype=np.int64)
    if not len(tree):
        return out
    a = trim(a)
    top = len(tree.levels) - 1

    def descend(height, index, rem):
        span = tree.span(height, index)
        if height == 0 or len(rem) <= HORNER_CUTOFF:
            out[span] = polyEval(rem, tree.points[span])
            return
        for child in (2 * index, 2 * index + 1):
            if child < len(tree.levels[height - 1]):
                descend(height - 1, child, polyRem(rem, tree.levels[height - 1][child]))

    descend(top, 0, polyRem(a, tree.root))
    return out


def transposedEval(x, y, tree, n):
    """
    Transposed Vandermonde product.

    Returns sum_i x_i y_i / (1 - z_i X) mod X^n, i.e. the vector
    K(diag z, y)^T x, by summing fractions up the tree and inverting the
    root denominator once.
    """
    assert isinstance(tree, EvalTree)
    weights = asVector(x) * asVector(y) % P
    if not len(tree) or n <= 0:
        return EMPTY
    nums = [trim(np.array([w], dtype=np.int64)) for w in weights]
    for height in range(1, len(tree.levels)):
        below = tree.levels[height - 1]
        merged = []
        for k in range(0, len(nums) - 1, 2):
            left, right = below[k], below[k + 1]
            merged.append(polyAdd(polyMul(nums[k], right[::-1].copy()), polyMul(nums[k + 1], left[::-1].copy())))
        if len(nums) % 2:
            merged.append(nums[-1])
        nums = merged
    denominator = tree.root[::-1].copy()
    return truncate(polyMul(truncate(nums[0], n), seriesInverse(denominator, n)), n)


def interpolate(points, values, tree=None):
    """Unique polynomial of degree < len(points) through the given values."""
    tree = tree if tree is not None else EvalTree(points)
    values = asVector(values)
    if not len(tree):
        return EMPTY
    derivative = multipointEval(polyDeriv(tree.root), tree)
    if np.any(derivative == 0):
        raise RepeatedPointsError()
    parts = [trim(np.array([v], dtype=np.int64)) for v in values * invArray(derivative) % P]
    for height in range(1, len(tree.levels)):
        below = tree.levels[height - 1]
        merged = []
        for k in range(0, len(parts) - 1, 2):
            merged.append(polyAdd(polyMul(parts[k], below[k + 1]), polyMul(parts[k + 1], below[k])))
        if len(parts) % 2:
            merged.append(parts[-1])
        parts = merged
    return parts[0]


def interpolateMany(points, values):
    """
    Interpolate many value vectors over the same points at once.

    values has shape (..., n) for n points; the result has the same shape and
    holds coefficient vectors.  Works through the Lagrange basis, so the cost
    is quadratic in n but entirely vectorised.
    """
    points = asVector(points)
    values = asVector(values)
    n = len(points)
    if n == 0:
        return values
    root = padTo(productOfLinear(points), n + 1)
    # Row i of quotients holds root / (X - z_i), computed by synthetic division.
    quotients = np.zeros((n, n), dtype=np.int64)
    carry = np.zeros(n, dtype=np.int64)
    for k in range(n - 1, -1, -1):
        carry = (root[k + 1] + carry * points) % P
        quotients[:, k] = carry
    weights = np.zeros(n, dtype=np.int64)
    for k in range(n - 1, -1, -1):
        weights = (weights * points + quotients[:, k]) % P
    if np.any(weights == 0):
        raise RepeatedPointsError()
    scaled = values * invArray(weights) % P
    return matMul(scaled, quotients)


def vandermonde(points, n):
    """Matrix with entry (i, j) = z_i^j, shape (len(points), n)."""
    points = asVector(points)
    out = np.ones((len(points), n), dtype=np.int64)
    for j in range(1, n):
        out[:, j] = out[:, j - 1] * points % P
    return out


class Poly(object):
    """
    Value wrapper around a coefficient array.

    Supports +, -, *, % (remainder), unary minus, equality, evaluation by
    calling, and degree with -inf for the zero polynomial.
    """

    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        """Reduce and trim the coefficients."""
        self.coeffs = asPoly(coeffs)

    @property
    def degree(self):
        """Degree, -inf for zero."""
        return degree(self.coeffs)

    def isZero(self):
        """True for the zero polynomial."""
        return not len(self.coeffs)

    def tolist(self):
        """Coefficients as Python ints."""
        return [int(c) for c in self.coeffs]

    def __add__(self, other):
        return Poly(polyAdd(self.coeffs, asPoly(other)))

    def __sub__(self, other):
        return Poly(polySub(self.coeffs, asPoly(other)))

    def __neg__(self):
        return Poly(polyNeg(self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(polyScale(self.coeffs, other))
        return Poly(polyMul(self.coeffs, asPoly(other)))

    __rmul__ = __mul__

    def __mod__(self, other):
        return Poly(polyRem(self.coeffs, asPoly(other)))

    def __eq__(self, other):
        if isinstance(other, (Poly, list, tuple, np.ndarray)):
            return np.array_equal(self.coeffs, asPoly(other))
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.tolist()))

    def __call__(self, x):
        return int(polyEval(self.coeffs, [x])[0])

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return "Poly({0})".format(self.tolist())


def polyEvalMany(coeffs, points):
    """
    Evaluate every polynomial of a stack at every point.

    coeffs has shape (..., L) and the result shape (..., len(points)).
    """
    coeffs = np.asarray(coeffs, dtype=np.int64)
    points = asVector(points)
    if not coeffs.shape[-1]:
        return np.zeros(coeffs.shape[:-1] + (len(points),), dtype=np.int64)
    return matMul(coeffs, vandermonde(points, coeffs.shape[-1]).T.copy())
