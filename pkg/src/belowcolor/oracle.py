"""Exact exponential-time solvers used as ground truth."""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import GuardError
from .graphcore import Graph, bits, complement

CHROMATIC_MAX_N = 18
BRANCH_CHROMATIC_MAX_N = 12
MIS_MAX_N = 40
MATCHING_MAX_N = 14


def _guard(g: Graph, limit: int, what: str) -> None:
    if g.n > limit:
        raise GuardError(f"{what} oracle limited to n <= {limit}, got {g.n}")


@njit(cache=True)
def _chromatic_dp(adj, n):
    size = 1 << n
    nbr = np.zeros(size, dtype=np.int64)
    indep = np.zeros(size, dtype=np.bool_)
    indep[0] = True
    for m in range(1, size):
        low = m & -m
        v = 0
        while (1 << v) != low:
            v += 1
        rest = m ^ low
        nbr[m] = nbr[rest] | adj[v]
        indep[m] = indep[rest] and (adj[v] & rest) == 0
    chi = np.zeros(size, dtype=np.int64)
    for t in range(1, size):
        low = t & -t
        others = t ^ low
        best = n + 1
        sub = others
        while True:
            cls = sub | low
            # only classes that are maximal inside t
            if indep[cls] and (t & ~cls & ~nbr[cls]) == 0:
                cand = chi[t ^ cls] + 1
                if cand < best:
                    best = cand
            if sub == 0:
                break
            sub = (sub - 1) & others
        chi[t] = best
    return chi[size - 1]


def chromatic_number_exact(g: Graph) -> int:
    """chi(g) by subset DP over maximal independent classes, O(3^n)."""
    _guard(g, CHROMATIC_MAX_N, "chromatic")
    if g.n == 0:
        return 0
    return int(_chromatic_dp(np.array(g.adj, dtype=np.int64), g.n))


def chromatic_number_branch(g: Graph) -> int:
    """chi(g) by DSatur-ordered backtracking with a clique lower bound.

    Independent of :func:`chromatic_number_exact`; used to cross-check it.
    """
    _guard(g, BRANCH_CHROMATIC_MAX_N, "branch-and-bound chromatic")
    n = g.n
    if n == 0:
        return 0
    best = n
    color = [-1] * n
    lower = clique_number_exact(g)

    def pick() -> int:
        sel, key = -1, (-1, -1)
        for v in range(n):
            if color[v] < 0:
                sat = len({color[u] for u in bits(g.adj[v]) if color[u] >= 0})
                k = (sat, g.degree(v))
                if k > key:
                    sel, key = v, k
        return sel

    def extend(colored: int, used: int) -> None:
        nonlocal best
        if used >= best:
            return
        if colored == n:
            best = used
            return
        v = pick()
        taken = {color[u] for u in bits(g.adj[v])}
        for c in range(used + 1):
            if c in taken:
                continue
            if c == used and used + 1 >= best:
                break
            color[v] = c
            extend(colored + 1, max(used, c + 1))
            color[v] = -1
            if best == lower:
                return

    extend(0, 0)
    return best


def clique_cover_number_exact(g: Graph) -> int:
    """theta(g) = chi(complement(g))."""
    _guard(g, CHROMATIC_MAX_N, "clique cover")
    return chromatic_number_exact(complement(g))


def max_independent_set_exact(g: Graph) -> int:
    """alpha(g) by branch and bound on bit-rows."""
    _guard(g, MIS_MAX_N, "independent set")
    adj = g.adj
    best = 0

    def grow(cand: int, size: int) -> None:
        nonlocal best
        # vertices with at most one candidate neighbour can be taken greedily
        changed = True
        while changed and cand:
            changed = False
            for v in bits(cand):
                if (adj[v] & cand).bit_count() <= 1:
                    cand &= ~(1 << v) & ~adj[v]
                    size += 1
                    changed = True
                    break
        if size + cand.bit_count() <= best:
            return
        if not cand:
            best = max(best, size)
            return
        v = max(bits(cand), key=lambda u: (adj[u] & cand).bit_count())
        grow(cand & ~(1 << v) & ~adj[v], size + 1)
        grow(cand & ~(1 << v), size)

    grow((1 << g.n) - 1, 0)
    return best


def clique_number_exact(g: Graph) -> int:
    """omega(g) = alpha(complement(g))."""
    return max_independent_set_exact(complement(g))


def maximum_matching_exact(g: Graph) -> int:
    """mu(g) by exhaustive recursion on the lowest unmatched vertex."""
    _guard(g, MATCHING_MAX_N, "matching")
    memo: dict[int, int] = {}

    def best(alive: int) -> int:
        if alive & (alive - 1) == 0:
            return 0
        if alive in memo:
            return memo[alive]
        v = (alive & -alive).bit_length() - 1
        rest = alive & ~(1 << v)
        val = best(rest)
        for u in bits(g.adj[v] & rest):
            val = max(val, 1 + best(rest & ~(1 << u)))
        memo[alive] = val
        return val

    return best((1 << g.n) - 1)


__all__ = [
    "chromatic_number_exact",
    "chromatic_number_branch",
    "clique_cover_number_exact",
    "max_independent_set_exact",
    "clique_number_exact",
    "maximum_matching_exact",
]
