"""Counting series of modular diagrams via shape inflation.

A modular diagram deflates to a stack-free shape; conversely every shape arc
inflates to a stem (a stack, then optional induced stacks separated by
isolated vertices) and the 2s+1 gaps absorb runs of isolated vertices, with
extra insertions forced wherever a short shape arc would violate the minimum
arc length four.  The forced insertions depend only on the four short-arc
statistics, which produces one inflation series per color class and, after
summing over the colored shape series, a closed form for the diagram counts:

    noncrossing (k=2): (1-z^2+z^4)/B(z) * F_2( (z^4-z^6+z^8)/B(z)^2 ),
                       B(z) = 1 - z - z^2 + z^3 + 2z^4 + z^6
    k > 2:             (1-z^2+z^4)/q(z) * F_k( z^4*(1-z^2-z^4+2z^6-z^8)/q(z)^2 ),
                       q(z) = 1 - z - z^2 + z^3 + 2z^4 + z^6 - z^8 + z^10 - z^12

The k > 2 form genuinely differs from the k = 2 one (``remark_mismatch``
locates the first coefficient where they part ways).

The class series C1..C4 are assembled from their displayed combinatorial
decompositions; the equivalent per-arc factorization (the sigma series) is
re-derived and checked against them by ``verify_sigma_identity`` rather than
trusted.  One transcription quirk is deliberately resolved: the stem series
is built as K/(1-N) with N = K*(2*zL + (zL)^2), zL = z/(1-z), which is what
the induced-stack construction gives; a stray cubed-z variant of the same
display is an obvious misprint and is not used.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import matchings
from .series_kernel import (
    ComputationError,
    PowerSeries,
    as_integer,
    ps_compose,
    ps_div,
    ps_mul,
    ps_pow,
    ps_sub,
)


@dataclass(frozen=True)
class BuildingBlocks:
    """Inflation building blocks, all truncated to one common order.

    ``isolated_run`` 1/(1-z) (maybe-empty run of isolated vertices),
    ``stack`` z^4/(1-z^2) (a stack of at least two arcs), ``induced_stack``
    a stack with forced separating vertices, ``stem`` =
    stack/(1 - induced_stack), and the four class series for inflating
    colored short-arc configurations.  ``sigma`` holds the per-arc
    factorization (sigma0..sigma4) used by the closed forms.
    """

    isolated_run: PowerSeries
    stack: PowerSeries
    induced_stack: PowerSeries
    stem: PowerSeries
    one_arc: PowerSeries
    crossing_pair: PowerSeries
    lone_crosser: PowerSeries
    double_crosser: PowerSeries
    sigma: tuple


def _poly(terms, order):
    return PowerSeries.from_terms(terms, order)


def building_blocks(order: int) -> BuildingBlocks:
    """Expand every building-block series to the given truncation order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    one = _poly({0: 1}, order)
    L = ps_div(one, _poly({0: 1, 1: -1}, order))          # 1/(1-z)
    zL = ps_mul(_poly({1: 1}, order), L)                  # z/(1-z)
    K = ps_div(_poly({4: 1}, order), _poly({0: 1, 2: -1}, order))
    induced = ps_mul(K, 2 * zL + ps_mul(zL, zL))
    M = ps_div(K, ps_sub(one, induced))
    two_stack = _poly({4: 1}, order)
    dagger = ps_sub(M, two_stack)                         # stems, minus it

    L2 = ps_mul(L, L)
    L3 = ps_mul(L2, L)
    C1 = ps_mul(_poly({3: 1}, order), L)
    # both 2-arcs become 2-stacks; three gaps, minus the no-insertion
    # pattern and the two middle-gap-plus-one-side-empty patterns
    C2a = ps_mul(_poly({8: 1}, order), L3 - one - 2 * zL)
    C2b = 2 * ps_mul(ps_mul(two_stack, dagger), ps_mul(L2 - one, L))
    C2c = ps_mul(ps_mul(dagger, dagger), L3)
    C2 = C2a + C2b + C2c
    C3a = ps_mul(two_stack, L2 - one)
    C3b = ps_mul(dagger, L2)
    C3 = C3a + C3b
    C4a = ps_mul(two_stack, ps_pow(L2 - one, 2))
    C4b = ps_mul(dagger, ps_mul(L2, L2))
    C4 = C4a + C4b

    sigma0 = ps_div(_poly({4: 1}, order),
                    _poly({0: 1, 1: -2, 3: 2, 4: -1, 5: -2, 6: 1}, order))
    sigma1 = _poly({3: 1}, order)
    sigma2 = ps_div(_poly({1: 1, 4: -4, 5: 2, 6: 8, 7: -6, 8: -7, 9: 8,
                           10: 2, 11: -4, 12: 1}, order),
                    _poly({0: 1, 1: -1}, order))
    sigma3 = _poly({1: 2, 3: -2, 4: 1, 5: 2, 6: -1}, order)
    sigma4 = _poly({2: 5, 3: -4, 4: -3, 5: 6, 6: 2, 7: -4, 8: 1}, order)

    return BuildingBlocks(
        isolated_run=L, stack=K, induced_stack=induced, stem=M,
        one_arc=C1, crossing_pair=C2, lone_crosser=C3, double_crosser=C4,
        sigma=(sigma0, sigma1, sigma2, sigma3, sigma4),
    )


def _assembled(fk_coeffs, pref_num, den, theta_num, order) -> PowerSeries:
    """pref_num/den * F( theta_num/den^2 ) as an exact truncated series."""
    den_s = _poly(den, order)
    theta = ps_div(_poly(theta_num, order), ps_mul(den_s, den_s))
    outer = PowerSeries(fk_coeffs)
    inner = ps_compose(outer, theta)
    result = ps_mul(ps_div(_poly(pref_num, order), den_s), inner)
    for n, c in enumerate(result):
        if as_integer(c) < 0:
            raise ComputationError(f"negative diagram count at order {n}")
    return result


_PREF = {0: 1, 2: -1, 4: 1}
_B2 = {0: 1, 1: -1, 2: -1, 3: 1, 4: 2, 6: 1}
_NUM2 = {4: 1, 6: -1, 8: 1}
_Q = {0: 1, 1: -1, 2: -1, 3: 1, 4: 2, 6: 1, 8: -1, 10: 1, 12: -1}
_NUMK = {4: 1, 6: -1, 8: -1, 10: 2, 12: -1}


def q2_series(order: int) -> PowerSeries:
    """Counting series of modular noncrossing diagrams, coefficient n >= 0."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    fk = [as_integer(c) for c in matchings.fk_series(2, order // 4 + 1)]
    return _assembled(fk, _PREF, _B2, _NUM2, order)


def qk_series(k: int, order: int) -> PowerSeries:
    """Counting series of modular k-noncrossing diagrams for k in 3..9.

    Refuses k = 2: the colored-shape identity behind this closed form breaks
    there, and the k = 2 instantiation provably counts wrong (see
    ``remark_mismatch``); use ``q2_series`` instead.
    """
    if k == 2:
        raise ValueError("k=2 needs q2_series; the colored-shape closed form "
                         "is valid only for k>2")
    if k not in matchings.SUPPORTED_K:
        raise ValueError("k must be between 3 and 9")
    if order < 0:
        raise ValueError("order must be nonnegative")
    fk = [as_integer(c) for c in matchings.fk_series(k, order // 4 + 1)]
    return _assembled(fk, _PREF, _Q, _NUMK, order)


def remark_mismatch(order: int) -> int | None:
    """First index where q2_series differs from the k=2 cast of the k>2 form."""
    good = q2_series(order)
    fk = [as_integer(c) for c in matchings.fk_series(2, order // 4 + 1)]
    den_s = _poly(_Q, order)
    theta = ps_div(_poly(_NUMK, order), ps_mul(den_s, den_s))
    pretender = ps_mul(ps_div(_poly(_PREF, order), den_s),
                       ps_compose(PowerSeries(fk), theta))
    for n in range(order + 1):
        if good[n] != pretender[n]:
            return n
    return None


def verify_sigma_identity(s_max: int, order: int,
                          blocks: BuildingBlocks | None = None) -> bool:
    """Check the class-product form against the sigma-product form.

    For every exponent tuple (s, u1, u2, u3, u4) with s <= s_max whose stem
    and gap exponents are nonnegative, compare

        C1^u1 C2^u2 C3^u3 C4^u4 * M^(s-2u2-u3-u4) * L^(2s+1-u1-3u2-2u3-4u4)

    with L * sigma0^s sigma1^u1 sigma2^u2 sigma3^u3 sigma4^u4 as truncated
    series at the given order.  Tuples with a negative exponent lie outside
    the combinatorial support and are skipped.
    """
    b = blocks if blocks is not None else building_blocks(order)
    s0, s1, s2, s3, s4 = b.sigma
    bases = (b.one_arc, b.crossing_pair, b.lone_crosser, b.double_crosser,
             b.stem, b.isolated_run, s0, s1, s2, s3, s4)
    pows = [{0: PowerSeries.constant(1, order)} for _ in bases]

    def power(i, e):
        cache = pows[i]
        if e not in cache:
            cache[e] = ps_mul(power(i, e - 1), bases[i])
        return cache[e]

    for s in range(s_max + 1):
        for u2 in range(s // 2 + 1):
            for u3 in range(s + 1):
                for u4 in range(s + 1):
                    e_stem = s - 2 * u2 - u3 - u4
                    if e_stem < 0:
                        continue
                    for u1 in range(2 * s + 2):
                        e_gap = 2 * s + 1 - u1 - 3 * u2 - 2 * u3 - 4 * u4
                        if e_gap < 0:
                            continue
                        lhs = power(0, u1)
                        lhs = ps_mul(lhs, power(1, u2))
                        lhs = ps_mul(lhs, power(2, u3))
                        lhs = ps_mul(lhs, power(3, u4))
                        lhs = ps_mul(lhs, power(4, e_stem))
                        lhs = ps_mul(lhs, power(5, e_gap))
                        rhs = power(5, 1)
                        rhs = ps_mul(rhs, power(6, s))
                        rhs = ps_mul(rhs, power(7, u1))
                        rhs = ps_mul(rhs, power(8, u2))
                        rhs = ps_mul(rhs, power(9, u3))
                        rhs = ps_mul(rhs, power(10, u4))
                        if lhs != rhs:
                            return False
    return True
