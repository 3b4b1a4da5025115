# -*- coding: utf-8 -*-
"""
Arithmetic in the prime field F_p.

Elements are plain integer residues in [0, P).  Vectors and matrices are
numpy int64 arrays of residues.  Elementwise products fit in int64 because
P < 2^31; inner products do not, so matMul splits its right operand into
15-bit halves before handing the work to numpy.
"""
from logging import getLogger

import numpy as np

from .config import fieldModulus, FIELD_ENV_VAR
from .errors import FieldModulusError, NotInvertibleError

logger = getLogger(__name__)

SPLIT_BITS = 15
SPLIT_MASK = (1 << SPLIT_BITS) - 1
# Longest inner dimension one split product can accumulate without overflow.
CHUNK = 1 << 15
MIN_TWO_ADICITY = 16


def _isPrime(n):
    """Deterministic Miller-Rabin for n < 2^64."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d, s = d // 2, s + 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primeFactors(n):
    factors, q = set(), 2
    while q * q <= n:
        while n % q == 0:
            factors.add(q)
            n //= q
        q += 1
    if n > 1:
        factors.add(n)
    return factors


def validateModulus(p):
    """
    Check that p can serve as the field and find its transform parameters.

    Returns (p, primitive root, two-adicity of p - 1).
    """
    if not 2 < p < (1 << 31) or not _isPrime(p):
        raise FieldModulusError("{0}={1} is not an odd prime below 2^31".format(FIELD_ENV_VAR, p))
    adicity = ((p - 1) & -(p - 1)).bit_length() - 1
    if adicity < MIN_TWO_ADICITY:
        raise FieldModulusError("{0}={1} is not NTT-friendly: p - 1 has only 2^{2} as power-of-two factor"
                                .format(FIELD_ENV_VAR, p, adicity))
    factors = _primeFactors(p - 1)
    root = 2
    while any(pow(root, (p - 1) // q, p) == 1 for q in factors):
        root += 1
    return p, root, adicity


P, ROOT, TWO_ADICITY = validateModulus(fieldModulus())
logger.debug("field modulus %d, primitive root %d, two-adicity %d", P, ROOT, TWO_ADICITY)


def normalize(x):
    """Map any integer to its canonical residue."""
    return int(x) % P


def inv(x):
    """Return the multiplicative inverse of a field element."""
    x = int(x) % P
    if x == 0:
        raise NotInvertibleError("0 has no inverse in F_{0}".format(P))
    return pow(x, P - 2, P)


def powMod(x, e):
    """Return x^e in the field; negative exponents invert first."""
    if e < 0:
        return pow(inv(x), -e, P)
    return pow(int(x) % P, e, P)


def asVector(values):
    """Return values as an int64 residue array."""
    return np.asarray(values, dtype=np.int64) % P


def invArray(values):
    """Invert every entry of an array by Fermat exponentiation."""
    values = asVector(values)
    if np.any(values == 0):
        raise NotInvertibleError("0 has no inverse in F_{0}".format(P))
    result = np.ones_like(values)
    base, exponent = values.copy(), P - 2
    while exponent:
        if exponent & 1:
            result = result * base % P
        base = base * base % P
        exponent >>= 1
    return result


def powArray(values, exponent):
    """Raise every entry of an array to a non-negative power."""
    values = asVector(values)
    result = np.ones_like(values)
    base = values.copy()
    while exponent:
        if exponent & 1:
            result = result * base % P
        base = base * base % P
        exponent >>= 1
    return result


def _splitProduct(a, b):
    lo = b & SPLIT_MASK
    hi = b >> SPLIT_BITS
    return (np.matmul(a, hi) % P * (1 << SPLIT_BITS) + np.matmul(a, lo)) % P


def matMul(a, b):
    """
    Exact product of residue matrices (or vectors), broadcasting like matmul.

    Long inner dimensions are processed in chunks so no partial sum exceeds
    the int64 range.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1]
    if inner <= CHUNK:
        return _splitProduct(a, b)
    total = None
    for start in range(0, inner, CHUNK):
        stop = min(start + CHUNK, inner)
        bPart = b[start:stop] if b.ndim == 1 else b[..., start:stop, :]
        part = _splitProduct(a[..., start:stop], bPart)
        total = part if total is None else (total + part) % P
    return total


def matVec(a, x):
    """Exact matrix-vector product."""
    return matMul(a, x)


def dot(x, y):
    """Exact inner product of two residue vectors."""
    return int(matMul(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)))


def identity(n):
    """Return the n x n identity over the field."""
    return np.eye(n, dtype=np.int64)
