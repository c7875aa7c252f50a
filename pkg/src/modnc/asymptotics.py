"""Certified singularity location and coefficient asymptotics.

The diagram counting series for each k is an outer matching series
evaluated at an inner algebraic map, so its coefficients grow like
``c * n^(-e) * g^(-n)`` where g is the smallest positive solution of
``inner(g) = rho^2`` (rho = 1/(2k-2)) and ``e = (k-1)^2 + (k-1)/2``.

Everything on the certified path is exact rational arithmetic:

* ``singularity_polynomial`` builds P = numerator - rho^2 * denominator.
* ``dominant_singularity`` isolates the minimal positive root of P by
  bisection, with root counts from a Sturm chain evaluated at rational
  points (integer sign evaluations only).  It also certifies that the
  denominator polynomial has no root up to the right endpoint, so the
  crossing really is the first singularity of the composed series.
* ``theta_derivative_nonzero`` certifies the simple-crossing hypothesis by
  counting roots of the derivative numerator inside the isolating interval.

The exponent and constant fits are deliberately floating point: they read
slopes off exact big-integer coefficients (converted to logarithms via
bit length plus leading bits, so magnitude is never a problem) and apply one
Richardson extrapolation step to kill the O(1/n) correction.  For odd k the
singular expansion of the outer series carries a logarithmic factor, which
perturbs the correction terms; tolerances on fits for odd k are therefore
wider by convention.

Note on conventions: the singularity g is below 1 and the exponential
growth RATE of the counts is 1/g > 1 (e.g. 1/g = 1.8489 for k = 2); reports
carry the rate, the interval brackets g itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd

from gmpy2 import mpq

from .series_kernel import ComputationError, Rational, as_integer
from .matchings import rho

# inner-map data: theta_k = numerator / base^2, as {degree: coeff}
_NUM2 = {4: 1, 6: -1, 8: 1}
_B2 = {0: 1, 1: -1, 2: -1, 3: 1, 4: 2, 6: 1}
_NUMK = {4: 1, 6: -1, 8: -1, 10: 2, 12: -1}
_Q = {0: 1, 1: -1, 2: -1, 3: 1, 4: 2, 6: 1, 8: -1, 10: 1, 12: -1}

DEFAULT_TOL = mpq(1, 10 ** 10)


@dataclass(frozen=True)
class GrowthReport:
    """Certified growth data for one k."""

    k: int
    gamma_interval: tuple[Rational, Rational]
    growth_rate: str
    theta_derivative_nonzero: bool
    fitted_exponent: float | None = None
    fitted_constant: float | None = None


# ---------------------------------------------------------------------------
# dense rational polynomials (ascending coefficient lists)
# ---------------------------------------------------------------------------

def _from_terms(terms):
    out = [mpq(0)] * (max(terms) + 1)
    for d, c in terms.items():
        out[d] = mpq(c)
    return out


def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [mpq(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _poly_scale(a, c):
    return [c * x for x in a]


def _poly_deriv(a):
    return [i * c for i, c in enumerate(a)][1:] or [mpq(0)]


def _to_primitive(p):
    """Scale by a positive rational to primitive integer coefficients."""
    p = [mpq(c) for c in p]
    _trim(p)
    if not p:
        return []
    lcm = 1
    for c in p:
        d = int(c.denominator)
        lcm = lcm // gcd(lcm, d) * d
    ints = [int(c * lcm) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return [c // g for c in ints]


def _sign_at(ip, point: Rational) -> int:
    """Exact sign of an integer polynomial at a rational point a/b.

    Evaluates b^deg * p(a/b), an integer with the same sign since b > 0.
    """
    a, b = int(point.numerator), int(point.denominator)
    total = ip[-1]
    bp = 1
    for i in range(len(ip) - 2, -1, -1):
        bp *= b
        total = total * a + ip[i] * bp
    return (total > 0) - (total < 0)


def _sturm_chain(p_rational):
    """Sturm chain as primitive integer polynomials.

    Each member is a positive-rational multiple of the textbook remainder
    sequence, which leaves all sign variations unchanged.
    """
    p0 = _to_primitive(p_rational)
    chain = [p0]
    p1 = _to_primitive(_poly_deriv([mpq(c) for c in p0]))
    if p1:
        chain.append(p1)
    while len(chain[-1]) > 1:
        r = _poly_rem([mpq(c) for c in chain[-2]], [mpq(c) for c in chain[-1]])
        r = _to_primitive(_poly_scale(r, mpq(-1)))
        if not r:
            break
        chain.append(r)
    return chain


def _poly_rem(a, b):
    """Remainder of a by b over the rationals."""
    a = a[:]
    _trim(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        factor = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a.pop()
        _trim(a)
    return a


def _variations(chain, point) -> int:
    signs = [s for ip in chain if (s := _sign_at(ip, point)) != 0]
    return sum(1 for i in range(len(signs) - 1) if signs[i] != signs[i + 1])


def _count_roots(chain, lo, hi) -> int:
    """Distinct real roots in the half-open interval (lo, hi]."""
    return _variations(chain, lo) - _variations(chain, hi)


# ---------------------------------------------------------------------------
# singularity certification
# ---------------------------------------------------------------------------

def _theta_parts(k):
    if k == 2:
        return _from_terms(_NUM2), _from_terms(_B2)
    if k in range(3, 10):
        return _from_terms(_NUMK), _from_terms(_Q)
    raise ValueError("k must be between 2 and 9")


def singularity_polynomial(k: int) -> tuple[Rational, ...]:
    """Ascending coefficients of numerator(theta) - rho^2 * denominator(theta)."""
    num, base = _theta_parts(k)
    r2 = rho(k) ** 2
    return tuple(_poly_sub(num, _poly_scale(_poly_mul(base, base), r2)))


def dominant_singularity(k: int, tol: Rational = DEFAULT_TOL):
    """Isolating rational interval (lo, hi) for the smallest positive root.

    Certifies by exact sign counting that (a) exactly one root of the
    singularity polynomial lies in (lo, hi], (b) none lies in (0, lo], and
    (c) the denominator polynomial has no root in (0, hi].  The polynomial
    is negative at lo and positive at hi, so the inner map passes rho^2
    upward across the interval.
    """
    tol = mpq(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    p = list(singularity_polynomial(k))
    chain = _sturm_chain(p)
    p_int = chain[0]
    lo, hi = mpq(0), mpq(1)
    if _count_roots(chain, lo, hi) == 0:
        raise ComputationError("no singularity located")
    while _count_roots(chain, lo, hi) > 1 or hi - lo > tol:
        mid = (lo + hi) / 2
        if _sign_at(p_int, mid) == 0:
            raise ComputationError("bisection landed on an exact root")
        if _count_roots(chain, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    if not (_sign_at(p_int, lo) < 0 < _sign_at(p_int, hi)):
        raise ComputationError("isolating interval lost its sign change")
    _, base = _theta_parts(k)
    base_chain = _sturm_chain(base)
    if _count_roots(base_chain, mpq(0), hi) != 0:
        raise ComputationError("denominator vanishes before the singularity")
    return lo, hi


def theta_derivative_nonzero(k: int, interval=None) -> bool:
    """Certify that the inner map has nonzero derivative at its crossing.

    With theta = num/base^2, the derivative numerator is
    num'*base - 2*num*base'; the check counts its roots in the isolating
    interval exactly.
    """
    lo, hi = interval if interval is not None else dominant_singularity(k)
    num, base = _theta_parts(k)
    t = _poly_sub(_poly_mul(_poly_deriv(num), base),
                  _poly_scale(_poly_mul(num, _poly_deriv(base)), mpq(2)))
    chain = _sturm_chain(t)
    if _sign_at(chain[0], lo) == 0:
        return False
    return _count_roots(chain, lo, hi) == 0


def _round_at(x: Rational, digits: int) -> int:
    """floor(x * 10^digits + 1/2) as an exact integer (round half up)."""
    scaled = x * 10 ** digits + mpq(1, 2)
    return int(scaled.numerator // scaled.denominator)


def _rate_string(lo: Rational, hi: Rational, digits: int) -> str | None:
    """Decimal string of 1/gamma, or None if the interval straddles a tie."""
    r_lo = _round_at(1 / hi, digits)
    r_hi = _round_at(1 / lo, digits)
    if r_lo != r_hi:
        return None
    whole, frac = divmod(r_lo, 10 ** digits)
    return f"{whole}.{frac:0{digits}d}"


def growth_report(k: int, digits: int, tol: Rational | None = None) -> GrowthReport:
    """Certified growth rate of the modular diagram counts for one k."""
    if not 1 <= digits <= 10:
        raise ValueError("digits must be between 1 and 10")
    tol = mpq(tol) if tol is not None else min(DEFAULT_TOL,
                                               mpq(1, 10 ** (digits + 4)))
    for _ in range(60):
        lo, hi = dominant_singularity(k, tol)
        rate = _rate_string(lo, hi, digits)
        if rate is not None:
            return GrowthReport(
                k=k,
                gamma_interval=(lo, hi),
                growth_rate=rate,
                theta_derivative_nonzero=theta_derivative_nonzero(
                    k, (lo, hi)),
            )
        tol /= 256
    raise ComputationError("rounding never became unambiguous")


def growth_table(k_max: int, digits: int) -> list[GrowthReport]:
    """Growth reports for k = 3..k_max."""
    if not 3 <= k_max <= 9:
        raise ValueError("k_max must be between 3 and 9")
    return [growth_report(k, digits) for k in range(3, k_max + 1)]


# ---------------------------------------------------------------------------
# floating-point fits against exact coefficients
# ---------------------------------------------------------------------------

def _log_int(a: int) -> float:
    """log of a huge positive integer without overflow (~15 digits kept)."""
    if a <= 0:
        raise ValueError("coefficients must be positive")
    shift = max(a.bit_length() - 64, 0)
    return math.log(a >> shift) + shift * math.log(2)


def _log_of(gamma) -> float:
    if isinstance(gamma, float):
        return math.log(gamma)
    g = mpq(gamma)
    if g <= 0:
        raise ValueError("gamma must be positive")
    return _log_int(int(g.numerator)) - _log_int(int(g.denominator))


def _coeff(coeffs, n) -> int:
    return as_integer(coeffs[n])


def subexp_fit(coeffs, gamma, n_range: tuple[int, int]) -> float:
    """Estimate e in a_n ~ c * n^(-e) / gamma^n from exact coefficients.

    Log-log slope between n and 2n, taken at n = m and n = 2m for
    m = n_hi//4, followed by one Richardson step; samples used are the
    coefficients at m, 2m and 4m.
    """
    n_lo, n_hi = n_range
    m = n_hi // 4
    if m < max(n_lo, 4) or n_hi > len(coeffs) - 1:
        raise ValueError("insufficient range")
    lg = _log_of(gamma)

    def level(n):
        return _log_int(_coeff(coeffs, n)) + n * lg

    def slope(n):
        return (level(n) - level(2 * n)) / math.log(2)

    return 2.0 * slope(2 * m) - slope(m)


def constant_fit(coeffs, gamma, theta, n_range: tuple[int, int]) -> float:
    """Estimate c in a_n ~ c * n^(-theta) / gamma^n, theta known.

    Evaluates a_n * gamma^n * n^theta at n_hi and n_hi//2 and applies one
    Richardson step.
    """
    n_lo, n_hi = n_range
    half = n_hi // 2
    if half < max(n_lo, 2) or n_hi > len(coeffs) - 1:
        raise ValueError("insufficient range")
    lg = _log_of(gamma)
    th = float(theta)

    def estimate(n):
        return math.exp(_log_int(_coeff(coeffs, n)) + n * lg
                        + th * math.log(n))

    return 2.0 * estimate(n_hi) - estimate(half)


def subexponential_exponent(k: int) -> Rational:
    """The exponent (k-1)^2 + (k-1)/2 governing the power-law factor."""
    if k < 2:
        raise ValueError("k out of range")
    return mpq((k - 1) ** 2) + mpq(k - 1, 2)
