"""Closed-form generating functions of stack-free shapes and their colorings.

A shape with s arcs is counted here together with up to four statistics:
u1 1-arcs, u2 mutually crossing pairs of 2-arcs, u3 long arcs crossed by
exactly one 2-arc, u4 long arcs crossed by two 2-arcs.  Three nested
closed forms express these multivariate counting series through the
matching series F_k:

* bivariate (s, u1):       (1+x)/(1+2x-xy) * F_k( x(1+x)/(1+2x-xy)^2 )
* trivariate (s, u1, u2):  (1+x)*v * F_k( x(1+x)*v^2 ),
                           v = 1/(1 + (2-y)x + (1-z)x^2 + (1-z)x^3)
* colored (s, u1..u4):     (1+x)/theta * F_k( x(1+(2w-1)x+(t-1)x^2)/theta^2 ),
                           theta = 1 - (y-2)x + (2w-z-1)x^2 + (2w-z-1)x^3

The trivariate and colored forms are valid only for k > 2.  The statistic
u1 sits on the ``y`` marker, u2 on ``z``, u3 on ``w`` and u4 on ``t``, so
specializing the colored polynomial at w = t = 1 literally yields the
trivariate one.  Tables are extracted from the expanded polynomials; every
entry must come out a nonnegative integer or construction fails.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matchings
from .series_kernel import (
    ComputationError,
    MultiPoly,
    as_integer,
    mp_add,
    mp_mul,
    mp_scale,
    mp_sub,
    series_in_poly,
)


@dataclass(frozen=True)
class ShapeTable:
    """Nonzero shape counts keyed by (s, u1[, u2[, u3, u4]])."""

    k: int
    s_max: int
    arity: int
    entries: dict

    def count(self, *key) -> int:
        if len(key) != self.arity:
            raise ValueError(f"expected {self.arity} indices, got {len(key)}")
        if min(key) < 0:
            return 0
        return self.entries.get(key, 0)


_poly_cache: dict = {}


def _fk(k, order):
    return [as_integer(c) for c in matchings.fk_series(k, order)]


def _geometric_inverse(d: MultiPoly) -> MultiPoly:
    """1/d for d with constant term 1, via the geometric series in (1 - d)."""
    u = mp_sub(MultiPoly.constant(1, d.xbound), d)
    ones = [1] * (d.xbound + 1)
    return series_in_poly(ones, u)


def bivariate_poly(k: int, s_max: int) -> MultiPoly:
    """Shape series in x (arcs) and y (1-arcs), expanded to x-order s_max."""
    if k not in matchings.SUPPORTED_K:
        raise ValueError("k must be between 2 and 9")
    key = ("bi", k, s_max)
    if key not in _poly_cache:
        one = MultiPoly.constant(1, s_max)
        x = MultiPoly.marker("x", s_max)
        y = MultiPoly.marker("y", s_max)
        # 1 + 2x - xy
        d = mp_add(one, mp_sub(mp_scale(x, 2), mp_mul(x, y)))
        v = _geometric_inverse(d)
        arg = mp_mul(mp_mul(x, mp_add(one, x)), mp_mul(v, v))
        f = series_in_poly(_fk(k, s_max), arg)
        _poly_cache[key] = mp_mul(mp_mul(mp_add(one, x), v), f)
    return _poly_cache[key]


def trivariate_poly(k: int, s_max: int) -> MultiPoly:
    """Shape series in x, y and z (crossing 2-arc pairs), for k > 2."""
    if k == 2:
        raise ValueError("formula valid only for k>2")
    if k not in matchings.SUPPORTED_K:
        raise ValueError("k must be between 2 and 9")
    key = ("tri", k, s_max)
    if key not in _poly_cache:
        one = MultiPoly.constant(1, s_max)
        x = MultiPoly.marker("x", s_max)
        y = MultiPoly.marker("y", s_max)
        u2m = MultiPoly.marker("z", s_max)
        # 1 + (2-y)x + (1-z)x^2 + (1-z)x^3
        x2 = mp_mul(x, x)
        x3 = mp_mul(x2, x)
        one_minus_u2 = mp_sub(one, u2m)
        d = mp_add(one, mp_mul(mp_sub(MultiPoly.constant(2, s_max), y), x))
        d = mp_add(d, mp_mul(one_minus_u2, mp_add(x2, x3)))
        v = _geometric_inverse(d)
        arg = mp_mul(mp_mul(x, mp_add(one, x)), mp_mul(v, v))
        f = series_in_poly(_fk(k, s_max), arg)
        _poly_cache[key] = mp_mul(mp_mul(mp_add(one, x), v), f)
    return _poly_cache[key]


def colored_poly(k: int, s_max: int) -> MultiPoly:
    """Fully colored shape series in all five markers, for k > 2."""
    if k == 2:
        raise ValueError("formula valid only for k>2")
    if k not in matchings.SUPPORTED_K:
        raise ValueError("k must be between 2 and 9")
    key = ("col", k, s_max)
    if key not in _poly_cache:
        one = MultiPoly.constant(1, s_max)
        x = MultiPoly.marker("x", s_max)
        y = MultiPoly.marker("y", s_max)
        z = MultiPoly.marker("z", s_max)
        w = MultiPoly.marker("w", s_max)
        t = MultiPoly.marker("t", s_max)
        x2 = mp_mul(x, x)
        x3 = mp_mul(x2, x)
        # theta = 1 - (y-2)x + (2w-z-1)x^2 + (2w-z-1)x^3
        c = mp_sub(mp_sub(mp_scale(w, 2), z), one)
        theta = mp_sub(one, mp_mul(mp_sub(y, MultiPoly.constant(2, s_max)), x))
        theta = mp_add(theta, mp_mul(c, mp_add(x2, x3)))
        v = _geometric_inverse(theta)
        # x * (1 + (2w-1)x + (t-1)x^2) / theta^2
        inner = mp_add(one, mp_mul(mp_sub(mp_scale(w, 2), one), x))
        inner = mp_add(inner, mp_mul(mp_sub(t, one), x2))
        arg = mp_mul(mp_mul(x, inner), mp_mul(v, v))
        f = series_in_poly(_fk(k, s_max), arg)
        _poly_cache[key] = mp_mul(mp_mul(mp_add(one, x), v), f)
    return _poly_cache[key]


def _extract(poly: MultiPoly, k, s_max, positions) -> ShapeTable:
    entries = {}
    for exps, c in poly.terms.items():
        if exps[0] > s_max:
            continue
        value = as_integer(c)
        if value < 0:
            raise ComputationError(f"negative shape count at {exps}")
        if value:
            entries[(exps[0],) + tuple(exps[p] for p in positions)] = value
    return ShapeTable(k, s_max, 1 + len(positions), entries)


def ik_bivariate(k: int, s_max: int) -> ShapeTable:
    """Table of shape counts by (s, u1)."""
    return _extract(bivariate_poly(k, s_max), k, s_max, (1,))


def wk_trivariate(k: int, s_max: int) -> ShapeTable:
    """Table of shape counts by (s, u1, u2); k > 2 only."""
    return _extract(trivariate_poly(k, s_max), k, s_max, (1, 2))


def ik_colored(k: int, s_max: int) -> ShapeTable:
    """Table of shape counts by (s, u1, u2, u3, u4); k > 2 only."""
    return _extract(colored_poly(k, s_max), k, s_max, (1, 2, 3, 4))


def verify_recursion_u2(k: int, s_max: int) -> bool:
    """Check (u2+1) i(s+1,u1,u2+1) = (u1+1) [i(s,u1+1,u2) + i(s-1,u1+1,u2)]."""
    tab = wk_trivariate(k, s_max + 1)
    for s in range(s_max + 1):
        for u1 in range(s_max + 3):
            for u2 in range(s_max // 2 + 2):
                lhs = (u2 + 1) * tab.count(s + 1, u1, u2 + 1)
                rhs = (u1 + 1) * (tab.count(s, u1 + 1, u2)
                                  + tab.count(s - 1, u1 + 1, u2))
                if lhs != rhs:
                    return False
    return True


def verify_recursion_u4(k: int, s_max: int) -> bool:
    """Check 2(u4+1) i(s+1,u·,u4+1) = (u3+1) i(s,u·,u3+1,u4) + 2(u2+1) i(s,u2+1,u·)."""
    tab = ik_colored(k, s_max + 1)
    c = tab.count
    for s in range(s_max + 1):
        for u1 in range(s_max + 2):
            for u2 in range(s_max // 2 + 2):
                for u3 in range(s_max // 2 + 2):
                    for u4 in range(s_max // 3 + 2):
                        lhs = 2 * (u4 + 1) * c(s + 1, u1, u2, u3, u4 + 1)
                        rhs = ((u3 + 1) * c(s, u1, u2, u3 + 1, u4)
                               + 2 * (u2 + 1) * c(s, u1, u2 + 1, u3, u4))
                        if lhs != rhs:
                            return False
    return True


def verify_recursion_u3(k: int, s_max: int) -> bool:
    """Check the long 18-term recursion produced by removing a marked 2-arc.

    Implemented exactly as displayed, negative indices reading as zero.
    """
    tab = ik_colored(k, s_max + 1)
    c = tab.count
    for s in range(s_max + 1):
        for u1 in range(s_max + 2):
            for u2 in range(s_max // 2 + 2):
                for u3 in range(s_max // 2 + 2):
                    for u4 in range(s_max // 3 + 2):
                        lhs = (u3 + 1) * c(s + 1, u1, u2, u3 + 1, u4)
                        rhs = (
                            2 * u1 * c(s - 1, u1, u2, u3, u4)
                            + 4 * (u2 + 1) * c(s - 1, u1, u2 + 1, u3, u4)
                            + 4 * (u2 + 1) * c(s - 1, u1, u2 + 1, u3 - 1, u4)
                            + 4 * (u2 + 1) * c(s - 2, u1, u2 + 1, u3 - 1, u4)
                            + 2 * (u3 + 1) * c(s, u1, u2, u3 + 1, u4)
                            + 2 * u3 * c(s - 1, u1, u2, u3, u4)
                            + 6 * (u3 + 1) * c(s - 1, u1, u2, u3 + 1, u4)
                            + 2 * (u3 + 1) * c(s - 2, u1, u2, u3 + 1, u4)
                            + 2 * u3 * c(s - 2, u1, u2, u3, u4)
                            + 4 * (u4 + 1) * c(s, u1, u2, u3 - 1, u4 + 1)
                            + 4 * (u4 + 1) * c(s - 1, u1, u2, u3 - 1, u4 + 1)
                            + 4 * u4 * c(s - 1, u1, u2, u3, u4)
                            + 4 * (u4 + 1) * c(s - 1, u1, u2, u3, u4 + 1)
                            + 4 * u4 * c(s - 2, u1, u2, u3, u4)
                            + 2 * (u4 + 1) * c(s - 2, u1, u2, u3, u4 + 1)
                            + (2 * s - 2 * u1 - 4 * u2 - 4 * u3 - 6 * u4)
                            * c(s, u1, u2, u3, u4)
                            + 2 * (2 * (s - 1) - 2 * u1 - 4 * u2 - 4 * u3 - 6 * u4)
                            * c(s - 1, u1, u2, u3, u4)
                            + (2 * (s - 2) - 4 * u2 - 4 * u3 - 6 * u4)
                            * c(s - 2, u1, u2, u3, u4)
                        )
                        if lhs != rhs:
                            return False
    return True
