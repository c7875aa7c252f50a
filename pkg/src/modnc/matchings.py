"""Exact counts of k-noncrossing perfect matchings.

``f(k, 2n)``, the number of perfect matchings on 2n points with no k mutually
crossing arcs, equals the number of closed lattice walks of length 2n that
start and end at (k-1, k-2, ..., 1), stay strictly inside the Weyl chamber
x_1 > x_2 > ... > x_{k-1} > 0, and move exactly one coordinate by +-1 per
step (the oscillating-tableau bijection).  Counting those walks is a direct
dynamic program over chamber positions; no analytic identities are involved,
so the values are exact integers by construction.

The DP prunes every position whose L1 distance from the start exceeds the
number of remaining steps.  One forward pass to time 2N yields f(k, 2n) for
all n <= N at once (the count sitting on the start position at each even
time), which keeps N ~ 1000 affordable.  For k = 2 and k = 3 the frontier is
kept in flat lists indexed by shifted coordinates; for larger k a dictionary
keyed by position tuples is used instead, since the frontier is sparse in
high dimension.
"""

from __future__ import annotations

from typing import NamedTuple

from gmpy2 import mpq

from .series_kernel import PowerSeries, Rational

SUPPORTED_K = range(2, 10)


class WalkState(NamedTuple):
    """One chamber position and the number of pruned walks reaching it."""

    position: tuple[int, ...]
    count: int


def _start(k):
    return tuple(range(k - 1, 0, -1))


def _counts_k2(n_max):
    """1-d chamber walk: positions x >= 1, stored at index m = x - 1."""
    T = 2 * n_max
    size = n_max + 2
    cur = [0] * size
    cur[0] = 1
    out = [1]
    for t in range(1, T + 1):
        lim = min(t, T - t)
        nxt = [0] * size
        for m in range(t & 1, lim + 1, 2):
            v = cur[m + 1]
            if m:
                v += cur[m - 1]
            nxt[m] = v
        cur = nxt
        if not t & 1:
            out.append(cur[0])
    return out


def _counts_k3(n_max):
    """2-d chamber walk in shifted coordinates l1 >= l2 >= 0."""
    T = 2 * n_max
    w = n_max // 2 + 2
    cur = [[0] * w for _ in range(n_max + 2)]
    cur[0][0] = 1
    out = [1]
    for t in range(1, T + 1):
        lim = min(t, T - t)
        nxt = [[0] * w for _ in range(n_max + 2)]
        for l1 in range(min(lim, n_max) + 1):
            row = nxt[l1]
            above = cur[l1 + 1]
            below = cur[l1 - 1] if l1 else None
            mid = cur[l1]
            l2_top = min(l1, lim - l1)
            for l2 in range((t - l1) & 1, l2_top + 1, 2):
                v = above[l2]
                if below is not None and l1 - 1 >= l2:
                    v += below[l2]
                if l2:
                    v += mid[l2 - 1]
                if l2 + 1 <= l1:
                    v += mid[l2 + 1]
                if v:
                    row[l2] = v
        cur = nxt
        if not t & 1:
            out.append(cur[0][0])
    return out


def _step_frontier(frontier, sum_cap):
    """Advance a dict frontier {position: count} by one walk step.

    Every chamber position satisfies x_i >= k - i coordinatewise, so the L1
    distance from the start equals sum(position) - sum(start); capping the
    coordinate sum is exactly the cannot-return-in-time prune.
    """
    nxt = {}
    for pos, c in frontier.items():
        m = len(pos)
        allow_up = sum(pos) < sum_cap
        for i in range(m):
            xi = pos[i]
            if allow_up and (i == 0 or pos[i - 1] > xi + 1):
                up = pos[:i] + (xi + 1,) + pos[i + 1:]
                nxt[up] = nxt.get(up, 0) + c
            ok_down = xi > 1 if i == m - 1 else xi - 1 > pos[i + 1]
            if ok_down:
                dn = pos[:i] + (xi - 1,) + pos[i + 1:]
                nxt[dn] = nxt.get(dn, 0) + c
    return nxt


def _counts_generic(k, n_max):
    start = _start(k)
    base = sum(start)
    T = 2 * n_max
    frontier = {start: 1}
    out = [1]
    for t in range(1, T + 1):
        frontier = _step_frontier(frontier, base + min(t, T - t))
        if not t & 1:
            out.append(frontier.get(start, 0))
    return out


_counts_cache: dict[int, list[int]] = {}


def _walk_counts(k, n_max):
    """Exact [f(k,0), f(k,2), ..., f(k,2*n_max)] with caching per k."""
    cached = _counts_cache.get(k)
    if cached is not None and len(cached) > n_max:
        return cached[: n_max + 1]
    if k == 2:
        counts = _counts_k2(n_max)
    elif k == 3:
        counts = _counts_k3(n_max)
    else:
        counts = _counts_generic(k, n_max)
    _counts_cache[k] = counts
    return counts


def walk_frontier(k, steps: int) -> list[WalkState]:
    """Chamber positions reachable in ``steps`` steps, with walk counts."""
    if k < 2:
        raise ValueError("k out of range")
    frontier = {_start(k): 1}
    no_cap = sum(_start(k)) + steps
    for _ in range(steps):
        frontier = _step_frontier(frontier, no_cap)
    return [WalkState(p, c) for p, c in sorted(frontier.items())]


def count_matchings(k: int, n: int) -> int:
    """Number of k-noncrossing perfect matchings on 2n points."""
    if k < 2:
        raise ValueError("k out of range")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k > n:
        # a k-crossing needs k of the n arcs, so every matching counts
        return _double_factorial(n)
    return _walk_counts(k, n)[n]


def _double_factorial(n):
    out = 1
    for i in range(3, 2 * n, 2):
        out *= i
    return out


def fk_series(k: int, order: int) -> PowerSeries:
    """Ordinary generating series: coefficient n counts matchings on 2n points."""
    if k not in SUPPORTED_K:
        raise ValueError("k must be between 2 and 9")
    if order < 0:
        raise ValueError("order must be nonnegative")
    return PowerSeries(_walk_counts(k, order))


def rho(k: int) -> Rational:
    """Reciprocal growth parameter 1/(2k-2) of the matching counts."""
    if k < 2:
        raise ValueError("k out of range")
    return mpq(1, 2 * k - 2)


# Leading coefficient polynomials of the linear ODEs satisfied by the
# matching series, with their nonzero rational roots (the singularity
# candidates).  Ascending coefficient lists, transcribed once and verified
# exactly by table1_root_check.
Q0K_TABLE: dict[int, tuple[tuple[int, ...], tuple[Rational, ...]]] = {
    2: ((0, -1, 4), (mpq(1, 4),)),
    3: ((0, 0, -1, 16), (mpq(1, 16),)),
    4: ((0, 0, 0, 1, -40, 144), (mpq(1, 4), mpq(1, 36))),
    5: ((0, 0, 0, 0, 1, -80, 1024), (mpq(1, 16), mpq(1, 64))),
    6: ((0, 0, 0, 0, 0, -1, 140, -4144, 14400),
        (mpq(1, 4), mpq(1, 36), mpq(1, 100))),
    7: ((0, 0, 0, 0, 0, 0, -1, 224, -12544, 147456),
        (mpq(1, 16), mpq(1, 64), mpq(1, 144))),
    8: ((0, 0, 0, 0, 0, 0, 0, 1, -336, 31584, -826624, 2822400),
        (mpq(1, 4), mpq(1, 36), mpq(1, 100), mpq(1, 196))),
    9: ((0, 0, 0, 0, 0, 0, 0, 0, 1, -480, 69888, -3358720, 37748736),
        (mpq(1, 16), mpq(1, 64), mpq(1, 144), mpq(1, 256))),
}


def _eval_poly(coeffs, point):
    acc = mpq(0)
    for c in reversed(coeffs):
        acc = acc * point + c
    return acc


def table1_root_check(k: int) -> bool:
    """Exact check that rho(k)**2 and all tabulated roots annihilate q0k."""
    if k not in Q0K_TABLE:
        raise ValueError("k must be between 2 and 9")
    poly, roots = Q0K_TABLE[k]
    if _eval_poly(poly, rho(k) ** 2) != 0:
        return False
    return all(_eval_poly(poly, r) == 0 for r in roots)
