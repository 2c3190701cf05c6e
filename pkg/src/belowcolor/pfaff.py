"""Pfaffians of skew-symmetric matrices over the squarefree ring.

Sign convention: a perfect matching ``{i1,j1},...,{im,jm}`` with ``ik < jk`` and
``i1 < i2 < ...`` contributes the sign of the permutation ``(i1 j1 ... im jm)``.
With it ``Pf(A)^2 = det(A)``.

Two evaluation routes share one lane kernel that works on ranked forms (see
:mod:`belowcolor.sqring`):

* elimination -- skew Gaussian elimination, two rows and columns at a time.
  Division is by ring units only.  An element of the ring is a unit iff its
  constant coefficient is non-zero, and that coefficient is the same in every
  lane, so the pivot sequence is fixed up front by eliminating the matrix of
  constant coefficients over GF(q).  If that elimination stalls, the remaining
  Schur block has only nilpotent entries and is handed to the division-free
  route (or is zero outright when its half-size exceeds ``p``).
* division-free -- with ``J`` the standard symplectic form, ``Pf(J + t(A - J))``
  is a polynomial of degree ``dim/2`` in ``t``.  Eliminating over
  ``R[t]/(t^(dim/2+1))`` always pivots on ``1 + O(t)``, which inverts by a
  power series, so only ring additions and multiplications occur.  Summing the
  ``t``-coefficients evaluates at ``t = 1``.  Cost O(dim^5) ring operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np
from numba import njit

from .errors import GuardError
from .ffield import Q, addmod, finv, invmod, mulmod, negmod, submod
from .sqring import (
    RingElement,
    check_variable_count,
    popcounts,
    ranked_mobius,
    ranked_zeta_chunk,
    series_mul,
    series_mul_lanes,
    signed_top_sum,
)

BRUTEFORCE_MAX_DIM = 12
DEFAULT_CHUNK_BYTES = 256 << 20


@dataclass(frozen=True)
class SkewRingMatrix:
    dim: int
    p: int
    entries: tuple[tuple[RingElement, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.dim or any(len(row) != self.dim for row in self.entries):
            raise ValueError("entries must be a dim x dim table")
        for i in range(self.dim):
            if not self.entries[i][i].is_zero():
                raise ValueError(f"non-zero diagonal entry at {i}")
            for j in range(i + 1, self.dim):
                a, b = self.entries[i][j], self.entries[j][i]
                if a.p != self.p or b.p != self.p:
                    raise ValueError("entry ring does not match matrix ring")
                if not (a + b).is_zero():
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not negatives")

    @classmethod
    def from_upper(cls, p: int, dim: int, upper: Mapping[tuple[int, int], RingElement]) -> "SkewRingMatrix":
        zero = RingElement.zero(p)
        rows = [[zero] * dim for _ in range(dim)]
        for (i, j), val in upper.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"upper-triangle key {(i, j)} invalid for dim {dim}")
            rows[i][j] = val
            rows[j][i] = -val
        return cls(dim, p, tuple(tuple(r) for r in rows))

    def upper_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in combinations(range(self.dim), 2) if not self.entries[i][j].is_zero()]


# --------------------------------------------------------------------------
# Lane kernels

@njit(inline="always")
def _series_inverse(a, inv_a0, out, r):
    out[0] = inv_a0
    for n in range(1, r):
        acc = np.uint64(0)
        for i in range(1, n + 1):
            if a[i] != 0 and out[n - i] != 0:
                acc = addmod(acc, mulmod(a[i], out[n - i]))
        out[n] = negmod(mulmod(inv_a0, acc))


@njit(cache=True)
def _division_free_block(W, off, size, r, out):
    """Pf of ``W[off:off+size, off:off+size]`` (upper triangle, truncated series)."""
    m = size // 2
    T = m + 1
    B = np.zeros((size, size, T, r), dtype=np.uint64)
    for a in range(size):
        for b in range(a + 1, size):
            for k in range(r):
                B[a, b, 1, k] = W[off + a, off + b, k]
            if b == a + 1 and a % 2 == 0:
                B[a, b, 0, 0] = 1
                B[a, b, 1, 0] = submod(B[a, b, 1, 0], np.uint64(1))
    res = np.zeros((T, r), dtype=np.uint64)
    res[0, 0] = 1
    inv = np.zeros((T, r), dtype=np.uint64)
    tmp = np.zeros((T, r), dtype=np.uint64)
    zs = np.zeros(r, dtype=np.uint64)
    Sa = np.zeros((size, T, r), dtype=np.uint64)
    Ta = np.zeros((size, T, r), dtype=np.uint64)
    for s in range(m):
        k0 = 2 * s
        k1 = k0 + 1
        piv = B[k0, k1]
        # piv = 1 + O(t): inverse coefficients in t by recurrence.
        for n in range(T):
            for k in range(r):
                inv[n, k] = 0
        inv[0, 0] = 1
        for n in range(1, T):
            for i in range(1, n + 1):
                series_mul(piv[i], inv[n - i], zs, r)
                for k in range(r):
                    inv[n, k] = submod(inv[n, k], zs[k])
        _bivariate_mul(res, piv, tmp, T, r, zs)
        res[:, :] = tmp
        for a in range(k1 + 1, size):
            _bivariate_mul(B[k0, a], inv, Sa[a], T, r, zs)
            _bivariate_mul(B[k1, a], inv, Ta[a], T, r, zs)
        for a in range(k1 + 1, size):
            for b in range(a + 1, size):
                _bivariate_mul(Ta[a], B[k0, b], tmp, T, r, zs)
                for n in range(T):
                    for k in range(r):
                        B[a, b, n, k] = addmod(B[a, b, n, k], tmp[n, k])
                _bivariate_mul(Sa[a], B[k1, b], tmp, T, r, zs)
                for n in range(T):
                    for k in range(r):
                        B[a, b, n, k] = submod(B[a, b, n, k], tmp[n, k])
    for k in range(r):
        acc = np.uint64(0)
        for n in range(T):
            acc = addmod(acc, res[n, k])
        out[k] = acc


@njit(inline="always")
def _bivariate_mul(f, g, out, T, r, zs):
    for n in range(T):
        for k in range(r):
            out[n, k] = 0
        for i in range(n + 1):
            series_mul(f[i], g[n - i], zs, r)
            for k in range(r):
                out[n, k] = addmod(out[n, k], zs[k])


@njit(cache=True)
def _pfaffian_lanes(Zc, eid, eneg, d, npairs, inv0, nil_rest, out):
    # Zc[x, e] is the ranked series of entry e in lane x
    lanes = Zc.shape[0]
    r = Zc.shape[2]
    W = np.zeros((max(d, 1), max(d, 1), r), dtype=np.uint64)
    res = np.zeros(r, dtype=np.uint64)
    tmp = np.zeros(r, dtype=np.uint64)
    inv = np.zeros(r, dtype=np.uint64)
    Sa = np.zeros((max(d, 1), r), dtype=np.uint64)
    Ta = np.zeros((max(d, 1), r), dtype=np.uint64)
    rest = d - 2 * npairs
    for x in range(lanes):
        for a in range(d):
            for b in range(a + 1, d):
                e = eid[a, b]
                if e < 0:
                    for k in range(r):
                        W[a, b, k] = 0
                elif eneg[a, b]:
                    for k in range(r):
                        W[a, b, k] = negmod(Zc[x, e, k])
                else:
                    for k in range(r):
                        W[a, b, k] = Zc[x, e, k]
        for k in range(r):
            res[k] = 0
        res[0] = 1
        for s in range(npairs):
            k0 = 2 * s
            k1 = k0 + 1
            _series_inverse(W[k0, k1], inv0[s], inv, r)
            series_mul(res, W[k0, k1], tmp, r)
            for k in range(r):
                res[k] = tmp[k]
            for a in range(k1 + 1, d):
                series_mul(W[k0, a], inv, Sa[a], r)
                series_mul(W[k1, a], inv, Ta[a], r)
            for a in range(k1 + 1, d):
                for b in range(a + 1, d):
                    series_mul(Ta[a], W[k0, b], tmp, r)
                    for k in range(r):
                        W[a, b, k] = addmod(W[a, b, k], tmp[k])
                    series_mul(Sa[a], W[k1, b], tmp, r)
                    for k in range(r):
                        W[a, b, k] = submod(W[a, b, k], tmp[k])
        if rest > 0:
            if nil_rest and rest // 2 >= r:
                for k in range(r):
                    res[k] = 0
            else:
                _division_free_block(W, 2 * npairs, rest, r, inv)
                series_mul(res, inv, tmp, r)
                for k in range(r):
                    res[k] = tmp[k]
        for k in range(r):
            out[x, k] = res[k]


@njit(cache=True)
def _zeta_entries(raw, p, c, h, pc, Zc):
    tmp = np.empty((Zc.shape[0], Zc.shape[2]), dtype=np.uint64)
    for e in range(raw.shape[0]):
        ranked_zeta_chunk(raw[e], p, c, h, pc, tmp)
        for x in range(Zc.shape[0]):
            for k in range(Zc.shape[2]):
                Zc[x, e, k] = tmp[x, k]


# --------------------------------------------------------------------------
# Pivot planning on the constant coefficients

@dataclass
class _Plan:
    order: list[int]
    npairs: int
    inv0: np.ndarray
    sign: int
    eid: np.ndarray
    eneg: np.ndarray
    nil_rest: bool


def _permutation_sign(order: Sequence[int]) -> int:
    seen = [False] * len(order)
    sign = 1
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _plan(dim: int, pairs: Sequence[tuple[int, int]], constants: Sequence[int], division_free: bool) -> _Plan:
    npairs = 0
    inv0: list[int] = []
    order_head: list[int] = []
    remaining = list(range(dim))
    if not division_free:
        W = [[0] * dim for _ in range(dim)]
        for (i, j), c in zip(pairs, constants):
            W[i][j] = c % Q
            W[j][i] = -c % Q
        while remaining:
            piv = next(
                ((x, y) for ix, x in enumerate(remaining) for y in remaining[ix + 1:] if W[x][y]),
                None,
            )
            if piv is None:
                break
            x, y = piv
            ia = finv(W[x][y])
            remaining = [v for v in remaining if v != x and v != y]
            for iu, u in enumerate(remaining):
                wyu, wxu = W[y][u], W[x][u]
                for v in remaining[iu + 1:]:
                    val = (W[u][v] + (wyu * W[x][v] - wxu * W[y][v]) * ia) % Q
                    W[u][v] = val
                    W[v][u] = -val % Q
            order_head += [x, y]
            inv0.append(ia)
            npairs += 1
    order = order_head + remaining
    pos_entry = {pair: e for e, pair in enumerate(pairs)}
    eid = np.full((dim, dim), -1, dtype=np.int64)
    eneg = np.zeros((dim, dim), dtype=np.bool_)
    for a in range(dim):
        for b in range(a + 1, dim):
            u, v = order[a], order[b]
            e = pos_entry.get((min(u, v), max(u, v)))
            if e is not None:
                eid[a, b] = e
                eneg[a, b] = u > v
    return _Plan(order, npairs, np.array(inv0, dtype=np.uint64), _permutation_sign(order),
                 eid, eneg, not division_free)


def _chunk_bits(p: int, n_entries: int, budget: int) -> int:
    per_lane = max(n_entries, 1) * (p + 1) * 8
    c = p
    while c > 0 and per_lane << c > budget:
        c -= 1
    return c


def _validate(raw: np.ndarray, pairs: Sequence[tuple[int, int]], dim: int, p: int) -> np.ndarray:
    check_variable_count(p)
    if dim % 2:
        raise ValueError("Pfaffian of an odd-dimensional matrix is undefined")
    raw = np.ascontiguousarray(raw, dtype=np.uint64).reshape(len(pairs), 1 << p)
    return raw


def _scaled(series: np.ndarray, sign: int) -> np.ndarray:
    if sign < 0:
        return np.where(series == 0, series, np.uint64(Q) - series)
    return series


def pfaffian_ranked(raw: np.ndarray, pairs: Sequence[tuple[int, int]], dim: int, p: int,
                    division_free: bool = False, chunk_bytes: int = DEFAULT_CHUNK_BYTES) -> np.ndarray:
    """Ranked form ``(2^p, p+1)`` of the Pfaffian.

    ``raw[e]`` holds the coefficient vector of the entry at ``pairs[e] = (i, j)``
    with ``i < j``; absent pairs are zero.
    """
    raw = _validate(raw, pairs, dim, p)
    plan = _plan(dim, pairs, raw[:, 0].tolist(), division_free)
    c = _chunk_bits(p, len(pairs), chunk_bytes)
    pc = popcounts(p)
    out = np.empty((1 << p, p + 1), dtype=np.uint64)
    Zc = np.empty((1 << c, max(len(pairs), 1), p + 1), dtype=np.uint64)
    for h in range(1 << (p - c)):
        _zeta_entries(raw, p, c, h, pc, Zc)
        block = out[h << c:(h + 1) << c]
        _pfaffian_lanes(Zc, plan.eid, plan.eneg, dim, plan.npairs, plan.inv0, plan.nil_rest, block)
    return _scaled(out, plan.sign)


def pfaffian_chain_tops(raw: np.ndarray, pairs: Sequence[tuple[int, int]], dim: int, p: int,
                        chain: np.ndarray, chunk_bytes: int = DEFAULT_CHUNK_BYTES) -> list[int]:
    """Full-monomial coefficients of ``Pf * f_1 * ... * f_j`` for ``j = 0..len(chain)``.

    ``chain[j]`` is the coefficient vector of ``f_{j+1}``.  Lanes are processed
    in chunks so memory stays within ``chunk_bytes`` for the ranked entries.
    """
    raw = _validate(raw, pairs, dim, p)
    chain = np.ascontiguousarray(chain, dtype=np.uint64).reshape(-1, 1 << p)
    plan = _plan(dim, pairs, raw[:, 0].tolist(), False)
    c = _chunk_bits(p, len(pairs) + 2, chunk_bytes)
    pc = popcounts(p)
    lanes = 1 << c
    tops = [0] * (len(chain) + 1)
    Zc = np.empty((lanes, max(len(pairs), 1), p + 1), dtype=np.uint64)
    acc = np.empty((lanes, p + 1), dtype=np.uint64)
    phi = np.empty_like(acc)
    nxt = np.empty_like(acc)
    for h in range(1 << (p - c)):
        _zeta_entries(raw, p, c, h, pc, Zc)
        _pfaffian_lanes(Zc, plan.eid, plan.eneg, dim, plan.npairs, plan.inv0, plan.nil_rest, acc)
        pcs = pc[h << c:(h + 1) << c]
        tops[0] = (tops[0] + int(signed_top_sum(acc, p, pcs))) % Q
        for j in range(len(chain)):
            ranked_zeta_chunk(chain[j], p, c, h, pc, phi)
            series_mul_lanes(acc, phi, nxt)
            acc, nxt = nxt, acc
            tops[j + 1] = (tops[j + 1] + int(signed_top_sum(acc, p, pcs))) % Q
    return [t * plan.sign % Q for t in tops]


# --------------------------------------------------------------------------
# Public API

def _raw_of(m: SkewRingMatrix) -> tuple[np.ndarray, list[tuple[int, int]]]:
    pairs = m.upper_pairs()
    raw = np.zeros((len(pairs), 1 << m.p), dtype=np.uint64)
    for e, (i, j) in enumerate(pairs):
        raw[e] = m.entries[i][j].coeffs
    return raw, pairs


def pfaffian(m: SkewRingMatrix, method: str = "auto") -> RingElement:
    """Pfaffian of ``m``; ``method`` is ``"auto"`` (elimination with a division-free fallback) or ``"division_free"``."""
    if method not in ("auto", "division_free"):
        raise ValueError(f"unknown method {method!r}")
    if m.dim % 2:
        raise ValueError("Pfaffian of an odd-dimensional matrix is undefined")
    if m.dim == 0:
        return RingElement.one(m.p)
    raw, pairs = _raw_of(m)
    hat = pfaffian_ranked(raw, pairs, m.dim, m.p, division_free=(method == "division_free"))
    return RingElement._wrap(m.p, ranked_mobius(hat, m.p))


def _perfect_matchings(vs: list[int]):
    if not vs:
        yield []
        return
    first = vs[0]
    for idx in range(1, len(vs)):
        rest = vs[1:idx] + vs[idx + 1:]
        for sub in _perfect_matchings(rest):
            yield [(first, vs[idx])] + sub


def _inversion_parity(seq: Sequence[int]) -> int:
    inv = sum(1 for a, b in combinations(range(len(seq)), 2) if seq[a] > seq[b])
    return -1 if inv % 2 else 1


def pfaffian_bruteforce(m: SkewRingMatrix) -> RingElement:
    """Signed sum over every perfect matching, by enumeration."""
    if m.dim > BRUTEFORCE_MAX_DIM:
        raise GuardError(f"brute-force Pfaffian limited to dim <= {BRUTEFORCE_MAX_DIM}")
    if m.dim % 2:
        raise ValueError("Pfaffian of an odd-dimensional matrix is undefined")
    total = RingElement.zero(m.p)
    for matching in _perfect_matchings(list(range(m.dim))):
        flat = [v for e in matching for v in e]
        term = RingElement.one(m.p)
        for i, j in matching:
            term = term * m.entries[i][j]
            if term.is_zero():
                break
        if term.is_zero():
            continue
        total = total + term if _inversion_parity(flat) > 0 else total - term
    return total


def field_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Determinant over GF(q) by fraction-free (Bareiss) elimination."""
    a = [[x % Q for x in row] for row in rows]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        inv_prev = finv(prev)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) * inv_prev % Q
        prev = a[k][k]
    det = a[n - 1][n - 1] if n else 1
    return det * sign % Q


def field_pfaffian(rows: Sequence[Sequence[int]]) -> int:
    """Pfaffian of a skew matrix with GF(q) entries (the ``p = 0`` ring)."""
    n = len(rows)
    upper = {(i, j): RingElement.constant(0, rows[i][j]) for i in range(n) for j in range(i + 1, n)
             if rows[i][j] % Q}
    return int(pfaffian(SkewRingMatrix.from_upper(0, n, upper)).coeffs[0])


__all__ = [
    "SkewRingMatrix",
    "pfaffian",
    "pfaffian_bruteforce",
    "pfaffian_ranked",
    "pfaffian_chain_tops",
    "field_determinant",
    "field_pfaffian",
    "invmod",
]
