"""Arithmetic in GF(q), q = 2^61 - 1, plus seeded randomness.

Scalars are plain Python ints in ``[0, q)``.  Array code stores elements as
``uint64`` and goes through the numba kernels :func:`mulmod`, :func:`addmod`,
:func:`submod` and :func:`invmod`.  A 61x61-bit product is split into 32-bit
halves so every partial product fits in 64 bits; ``2^61 = 1 (mod q)`` turns
the reduction into shifts and masks.
"""

from __future__ import annotations

import numpy as np
from numba import njit

Q = (1 << 61) - 1
Q64 = np.uint64(Q)

_LO32 = np.uint64(0xFFFFFFFF)
_LO29 = np.uint64((1 << 29) - 1)
_S3 = np.uint64(3)
_S29 = np.uint64(29)
_S32 = np.uint64(32)
_S61 = np.uint64(61)
_ZERO = np.uint64(0)
_ONE = np.uint64(1)


# --------------------------------------------------------------------------
# Scalar (Python int) arithmetic

def fadd(a: int, b: int) -> int:
    return (a + b) % Q


def fsub(a: int, b: int) -> int:
    return (a - b) % Q


def fneg(a: int) -> int:
    return -a % Q


def fmul(a: int, b: int) -> int:
    return a * b % Q


def finv(a: int) -> int:
    a %= Q
    if a == 0:
        raise ZeroDivisionError("inverse of zero in GF(2^61 - 1)")
    return pow(a, Q - 2, Q)


# --------------------------------------------------------------------------
# numba kernels on uint64

@njit(inline="always")
def mulmod(a, b):
    a0 = a & _LO32
    a1 = a >> _S32
    b0 = b & _LO32
    b1 = b >> _S32
    lo = a0 * b0
    mid = a0 * b1 + a1 * b0
    s = ((a1 * b1) << _S3) + (mid >> _S29) + ((mid & _LO29) << _S32) + (lo & Q64) + (lo >> _S61)
    s = (s & Q64) + (s >> _S61)
    if s >= Q64:
        s -= Q64
    return s


@njit(inline="always")
def addmod(a, b):
    s = a + b
    if s >= Q64:
        s -= Q64
    return s


@njit(inline="always")
def submod(a, b):
    if a >= b:
        return a - b
    return a + Q64 - b


@njit(inline="always")
def negmod(a):
    if a == _ZERO:
        return a
    return Q64 - a


@njit(cache=True)
def invmod(a):
    # Fermat: a^(q-2); q-2 = 2^61 - 3 has every bit set except bit 1.
    result = _ONE
    base = a
    e = Q64 - np.uint64(2)
    while e > _ZERO:
        if e & _ONE:
            result = mulmod(result, base)
        base = mulmod(base, base)
        e >>= _ONE
    return result


@njit(cache=True)
def mul_arrays(a, b, out):
    for i in range(a.shape[0]):
        out[i] = mulmod(a[i], b[i])


# --------------------------------------------------------------------------
# Randomness

class Rng:
    """Deterministic generator over a counter-based Philox stream.

    One instance is owned by one caller.  Parallel work must use
    :meth:`spawn`, never share an instance.
    """

    def __init__(self, seed: int = 0):
        if not 0 <= seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = seed
        self._gen = np.random.Generator(np.random.Philox(seed))

    def sample_uniform(self) -> int:
        return int(self._gen.integers(0, Q, dtype=np.uint64))

    def sample_array(self, size: int) -> np.ndarray:
        return self._gen.integers(0, Q, size=size, dtype=np.uint64)

    def random(self, size: int | None = None):
        return self._gen.random(size)

    def integers(self, low: int, high: int, size: int | None = None):
        return self._gen.integers(low, high, size=size)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def spawn(self, key: int) -> "Rng":
        """Child generator whose seed is a fixed function of (seed, key)."""
        child = np.random.SeedSequence([self.seed, key]).generate_state(1, np.uint64)[0]
        return Rng(int(child))


def sample_uniform(rng: Rng) -> int:
    return rng.sample_uniform()
