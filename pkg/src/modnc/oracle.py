"""Brute-force enumeration of arc diagrams on small vertex sets.

Everything here is deliberately naive: diagrams are enumerated by resolving
the smallest unresolved vertex (leave it isolated or pair it with any larger
free vertex), which produces each partial matching exactly once, and the
predicates test their definitions directly.  These counts are the ground
truth that the generating-function modules are tested against, so no clever
shortcuts whose correctness would itself need an argument.

Intended scale is at most ~16 vertices (callers budget the runtime).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple

Arc = tuple[int, int]


@dataclass(frozen=True)
class Diagram:
    """Labeled partial matching on [1..n]: vertex degrees at most one."""

    n: int
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        seen = set()
        for (i, j) in self.arcs:
            if not (1 <= i < j <= self.n):
                raise ValueError(f"arc ({i},{j}) out of range")
            if i in seen or j in seen:
                raise ValueError("vertex of degree > 1")
            seen.update((i, j))
        if list(self.arcs) != sorted(self.arcs):
            raise ValueError("arcs must be sorted")


class ColorStats(NamedTuple):
    """Arc count plus the four short-arc crossing statistics of a shape."""

    s: int
    u1: int
    u2: int
    u3: int
    u4: int


def partial_matchings(n: int) -> Iterator[tuple[Arc, ...]]:
    """All partial matchings on [1..n] as sorted arc tuples."""
    def resolve(free, arcs):
        if not free:
            yield tuple(arcs)
            return
        i = free[0]
        rest = free[1:]
        yield from resolve(rest, arcs)
        for idx in range(len(rest)):
            arcs.append((i, rest[idx]))
            yield from resolve(rest[:idx] + rest[idx + 1:], arcs)
            arcs.pop()

    yield from resolve(tuple(range(1, n + 1)), [])


def perfect_matchings(s: int) -> Iterator[tuple[Arc, ...]]:
    """All perfect matchings on [1..2s] as sorted arc tuples."""
    def pair(free, arcs):
        if not free:
            yield tuple(arcs)
            return
        i = free[0]
        rest = free[1:]
        for idx in range(len(rest)):
            arcs.append((i, rest[idx]))
            yield from pair(rest[:idx] + rest[idx + 1:], arcs)
            arcs.pop()

    yield from pair(tuple(range(1, 2 * s + 1)), [])


def _crosses(a: Arc, b: Arc) -> bool:
    (i, j), (p, q) = a, b
    return i < p < j < q or p < i < q < j


def _max_mutual_crossing(arcs) -> int:
    """Largest set of pairwise crossing arcs, by exhaustive clique growth."""
    best = 0

    def grow(clique, candidates):
        nonlocal best
        best = max(best, len(clique))
        for idx, a in enumerate(candidates):
            if all(_crosses(a, b) for b in clique):
                grow(clique + [a], candidates[idx + 1:])

    grow([], list(arcs))
    return best


def max_mutual_crossing(d: Diagram) -> int:
    return _max_mutual_crossing(d.arcs)


def _is_modular(arcs, arc_set, k) -> bool:
    for (i, j) in arcs:
        if j - i < 4:
            return False
    for (i, j) in arcs:
        if (i + 1, j - 1) not in arc_set and (i - 1, j + 1) not in arc_set:
            return False
    return _max_mutual_crossing(arcs) < k


def is_modular(d: Diagram, k: int) -> bool:
    """Modular: k-noncrossing, arc lengths >= 4, every arc in a 2-stack."""
    if k < 2:
        raise ValueError("k out of range")
    return _is_modular(d.arcs, set(d.arcs), k)


def count_modular(k: int, n: int) -> int:
    """Exact count of modular diagrams by exhaustive filtering."""
    total = 0
    for arcs in partial_matchings(n):
        if _is_modular(arcs, set(arcs), k):
            total += 1
    return total


def _stack_free(arcs, arc_set) -> bool:
    for (i, j) in arcs:
        if (i + 1, j - 1) in arc_set or (i - 1, j + 1) in arc_set:
            return False
    return True


def enumerate_vk_shapes(k: int, s: int) -> list[Diagram]:
    """k-noncrossing perfect matchings on [1..2s] with all stacks length one."""
    if k < 2:
        raise ValueError("k out of range")
    out = []
    for arcs in perfect_matchings(s):
        if _stack_free(arcs, set(arcs)) and _max_mutual_crossing(arcs) < k:
            out.append(Diagram(2 * s, arcs))
    return out


def color_stats(shape: Diagram) -> ColorStats:
    """Raw short-arc crossing statistics of a shape.

    u1 counts 1-arcs.  u2 counts unordered pairs of mutually crossing
    2-arcs.  For each arc b of length >= 3, the 2-arcs crossing b contribute
    to u3 when there is exactly one of them and to u4 when there are two
    (a third is impossible: a 2-arc crossing b must straddle an endpoint
    of b).
    """
    arcs = shape.arcs
    u1 = sum(1 for (i, j) in arcs if j - i == 1)
    two_arcs = [a for a in arcs if a[1] - a[0] == 2]
    u2 = sum(1 for a, b in combinations(two_arcs, 2) if _crosses(a, b))
    u3 = u4 = 0
    for beta in arcs:
        if beta[1] - beta[0] < 3:
            continue
        crossing = [a for a in two_arcs if _crosses(a, beta)]
        if len(crossing) == 1:
            u3 += 1
        elif len(crossing) == 2:
            u4 += 1
        elif len(crossing) > 2:
            raise AssertionError("more than two 2-arcs cross one arc")
    return ColorStats(len(arcs), u1, u2, u3, u4)
