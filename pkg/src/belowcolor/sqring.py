"""The squarefree ring R = GF(q)[y_0..y_{p-1}] / (y_v^2).

An element is a dense vector of ``2^p`` coefficients; entry ``T`` (a bitmask)
is the coefficient of the monomial ``prod_{v in T} y_v``.  Multiplication is
subset convolution, done with ranked zeta / Moebius transforms in
O(2^p p^2) field operations.

Ranked form.  For a lane ``X`` (a subset of the variables) the ranked zeta
transform stores the truncated series ``sum_{A <= X} f(A) z^|A| mod z^(p+1)``.
Substituting ``y_v -> z [v in X]`` is a ring homomorphism from the free
polynomial ring into GF(q)[z]/(z^(p+1)), so sums and products may be computed
lane by lane in ranked form and transformed back only once.  The coefficient
of the full monomial is the signed lane sum ``sum_X (-1)^(p-|X|) [z^p]``, see
:func:`top_coefficient`.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np
from numba import njit

from .errors import GuardError
from .ffield import Q, Q64, addmod, finv, fmul, mul_arrays, mulmod, submod

MAX_VARIABLES = 24

_POPCOUNT_CACHE: dict[int, np.ndarray] = {}


def popcounts(p: int) -> np.ndarray:
    """``popcount(X)`` for every ``X < 2^p`` as an int64 array."""
    table = _POPCOUNT_CACHE.get(p)
    if table is None:
        table = np.zeros(1 << p, dtype=np.int64)
        for b in range(p):
            table[1 << b:2 << b] = table[:1 << b] + 1
        table.setflags(write=False)
        _POPCOUNT_CACHE[p] = table
    return table


def check_variable_count(p: int) -> None:
    if p < 0:
        raise ValueError("variable count must be non-negative")
    if p > MAX_VARIABLES:
        raise GuardError(f"{p} ring variables exceeds the memory guard of {MAX_VARIABLES}")


# --------------------------------------------------------------------------
# Kernels

@njit(cache=True)
def ranked_zeta_chunk(raw, p, c, h, pc, out):
    """Ranked zeta of ``raw`` on the lanes ``X = (h << c) | x``, ``x < 2^c``.

    ``out`` has shape ``(2^c, p + 1)``.  Subsets of the high part ``h`` are
    summed explicitly; the low ``c`` bits go through the usual in-place
    transform.  With ``c == p`` and ``h == 0`` this is the whole transform.
    """
    lanes = 1 << c
    r = p + 1
    for x in range(lanes):
        for k in range(r):
            out[x, k] = 0
    sub = h
    while True:
        hi_rank = 0
        t = sub
        while t:
            t &= t - 1
            hi_rank += 1
        base = sub << c
        for x in range(lanes):
            v = raw[base | x]
            if v != 0:
                k = hi_rank + pc[x]
                out[x, k] = addmod(out[x, k], v)
        if sub == 0:
            break
        sub = (sub - 1) & h
    for b in range(c):
        bit = 1 << b
        for x in range(lanes):
            if x & bit:
                y = x ^ bit
                for k in range(r):
                    out[x, k] = addmod(out[x, k], out[y, k])


@njit(cache=True)
def ranked_mobius_diagonal(hat, p, pc, out):
    """Invert the ranked zeta transform in place and read off rank ``|X|``."""
    lanes = hat.shape[0]
    r = p + 1
    for b in range(p):
        bit = 1 << b
        for x in range(lanes):
            if x & bit:
                y = x ^ bit
                for k in range(r):
                    hat[x, k] = submod(hat[x, k], hat[y, k])
    for x in range(lanes):
        out[x] = hat[x, pc[x]]


@njit(inline="always")
def series_mul(f, g, out, r):
    for k in range(r):
        acc = np.uint64(0)
        for i in range(k + 1):
            if f[i] != 0 and g[k - i] != 0:
                acc = addmod(acc, mulmod(f[i], g[k - i]))
        out[k] = acc


@njit(cache=True)
def series_mul_lanes(f, g, out):
    r = f.shape[1]
    for x in range(f.shape[0]):
        series_mul(f[x], g[x], out[x], r)


@njit(cache=True)
def signed_top_sum(hat, p, pc):
    """``sum_X (-1)^(p-|X|) hat[X, p]`` over the lanes present in ``hat``."""
    pos = np.uint64(0)
    neg = np.uint64(0)
    for x in range(hat.shape[0]):
        if (p - pc[x]) % 2 == 0:
            pos = addmod(pos, hat[x, p])
        else:
            neg = addmod(neg, hat[x, p])
    return submod(pos, neg)


# --------------------------------------------------------------------------
# Array-level helpers

def ranked_zeta(coeffs: np.ndarray, p: int) -> np.ndarray:
    out = np.empty((1 << p, p + 1), dtype=np.uint64)
    ranked_zeta_chunk(np.ascontiguousarray(coeffs, dtype=np.uint64), p, p, 0, popcounts(p), out)
    return out


def ranked_mobius(hat: np.ndarray, p: int) -> np.ndarray:
    work = np.array(hat, dtype=np.uint64, copy=True)
    out = np.empty(1 << p, dtype=np.uint64)
    ranked_mobius_diagonal(work, p, popcounts(p), out)
    return out


def top_coefficient(hat: np.ndarray, p: int) -> int:
    """Coefficient of ``prod_v y_v`` of the element whose ranked form is ``hat``."""
    return int(signed_top_sum(hat, p, popcounts(p)))


def _addv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    s = a + b
    return np.where(s >= Q64, s - Q64, s)


def _negv(a: np.ndarray) -> np.ndarray:
    return np.where(a == 0, a, Q64 - a)


# --------------------------------------------------------------------------
# Ring elements

class RingElement:
    """Immutable element of the squarefree ring on ``p`` variables."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        check_variable_count(p)
        arr = np.array(coeffs, dtype=np.uint64, copy=True)
        if arr.shape != (1 << p,):
            raise ValueError(f"expected {1 << p} coefficients, got shape {arr.shape}")
        if np.any(arr >= Q64):
            raise ValueError("coefficients must lie in [0, q)")
        arr.setflags(write=False)
        self.p = p
        self.coeffs = arr

    @classmethod
    def _wrap(cls, p: int, arr: np.ndarray) -> "RingElement":
        obj = cls.__new__(cls)
        arr.setflags(write=False)
        obj.p = p
        obj.coeffs = arr
        return obj

    @classmethod
    def zero(cls, p: int) -> "RingElement":
        check_variable_count(p)
        return cls._wrap(p, np.zeros(1 << p, dtype=np.uint64))

    @classmethod
    def one(cls, p: int) -> "RingElement":
        return cls.constant(p, 1)

    @classmethod
    def constant(cls, p: int, c: int) -> "RingElement":
        check_variable_count(p)
        arr = np.zeros(1 << p, dtype=np.uint64)
        arr[0] = c % Q
        return cls._wrap(p, arr)

    @classmethod
    def variable(cls, p: int, v: int) -> "RingElement":
        if not 0 <= v < p:
            raise ValueError(f"variable index {v} out of range for p={p}")
        return from_sparse_terms(p, [(1 << v, 1)])

    def _check(self, other: "RingElement") -> None:
        if other.p != self.p:
            raise ValueError(f"mismatched variable counts {self.p} and {other.p}")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement._wrap(self.p, _addv(self.coeffs, other.coeffs))

    def __neg__(self) -> "RingElement":
        return RingElement._wrap(self.p, _negv(self.coeffs))

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement._wrap(self.p, _addv(self.coeffs, _negv(other.coeffs)))

    def __mul__(self, other) -> "RingElement":
        if isinstance(other, (int, np.integer)):
            return self.scale(int(other))
        return ring_mul(self, other)

    __rmul__ = __mul__

    def scale(self, c: int) -> "RingElement":
        c %= Q
        out = np.empty_like(self.coeffs)
        mul_arrays(self.coeffs, np.full(self.coeffs.shape, c, dtype=np.uint64), out)
        return RingElement._wrap(self.p, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.p == other.p and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs.tobytes()))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def is_unit(self) -> bool:
        return int(self.coeffs[0]) != 0

    def inverse(self) -> "RingElement":
        """Inverse of a unit: ``c (1 + n)`` with ``n`` nilpotent of order <= p+1."""
        c = int(self.coeffs[0])
        if c == 0:
            raise ZeroDivisionError("element with zero constant term is not invertible")
        inv_c = finv(c)
        nil = self.scale(inv_c) - RingElement.one(self.p)
        term = RingElement.one(self.p)
        acc = RingElement.one(self.p)
        minus_nil = -nil
        for _ in range(self.p):
            term = term * minus_nil
            if term.is_zero():
                break
            acc = acc + term
        return acc.scale(inv_c)

    def terms(self) -> list[tuple[int, int]]:
        nz = np.nonzero(self.coeffs)[0]
        return [(int(t), int(self.coeffs[t])) for t in nz]

    def __repr__(self) -> str:
        if self.is_zero():
            return f"RingElement(p={self.p}, 0)"
        parts = []
        for t, c in self.terms():
            mono = "*".join(f"y{v}" for v in range(self.p) if t >> v & 1)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return f"RingElement(p={self.p}, {' + '.join(parts)})"


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    a._check(b)
    p = a.p
    if p == 0:
        return RingElement._wrap(0, np.array([fmul(int(a.coeffs[0]), int(b.coeffs[0]))], dtype=np.uint64))
    fa = ranked_zeta(a.coeffs, p)
    fb = ranked_zeta(b.coeffs, p)
    prod = np.empty_like(fa)
    series_mul_lanes(fa, fb, prod)
    return RingElement._wrap(p, ranked_mobius(prod, p))


def coefficient_at(a: RingElement, subset: int) -> int:
    if not 0 <= subset < 1 << a.p:
        raise ValueError(f"subset mask {subset} out of range for p={a.p}")
    return int(a.coeffs[subset])


def from_sparse_terms(p: int, terms: Iterable[tuple[int, int]]) -> RingElement:
    check_variable_count(p)
    acc: dict[int, int] = {}
    for subset, c in terms:
        if not 0 <= subset < 1 << p:
            raise ValueError(f"subset mask {subset} out of range for p={p}")
        acc[subset] = (acc.get(subset, 0) + c) % Q
    arr = np.zeros(1 << p, dtype=np.uint64)
    for subset, c in acc.items():
        arr[subset] = c
    return RingElement._wrap(p, arr)


def ring_neg(a: RingElement) -> RingElement:
    return -a


__all__ = [
    "RingElement",
    "ring_add",
    "ring_mul",
    "ring_neg",
    "coefficient_at",
    "from_sparse_terms",
    "ranked_zeta",
    "ranked_mobius",
    "top_coefficient",
    "popcounts",
]
