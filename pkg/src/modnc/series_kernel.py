"""Exact truncated power series and sparse multivariate polynomials.

Coefficients are arbitrary-precision rationals (``gmpy2.mpq``), which are
always stored in lowest terms with a positive denominator.  Nothing in this
module ever rounds.

Conventions:

* A ``PowerSeries`` carries coefficients for degrees ``0..order`` inclusive.
  Combining two series of different orders silently truncates the result to
  the smaller order.  Composition keeps the largest order to which the
  result is provably exact given the outer order and the valuation of the
  inner series (see ``ps_compose``).
* A ``MultiPoly`` is a sparse polynomial in the five markers
  ``x, y, z, w, t`` with a hard degree cap ``xbound`` on the ``x`` exponent;
  terms beyond the cap are dropped by every operation.  The ``y..t``
  exponents are never truncated (they stay small in all uses here).

All values are immutable after construction, so they can be shared freely
between threads or worker processes.
"""

from __future__ import annotations

from gmpy2 import mpq

Rational = mpq

MARKERS = ("x", "y", "z", "w", "t")

_ZERO = mpq(0)
_ONE = mpq(1)


class ComputationError(ArithmeticError):
    """An exactness guarantee failed (non-integer count, lost certificate)."""


def as_integer(value) -> int:
    """Convert an exact value to ``int``, refusing anything non-integral."""
    if isinstance(value, int):
        return value
    r = mpq(value)
    if r.denominator != 1:
        raise ComputationError(f"non-integer coefficient {r}")
    return int(r)


# ---------------------------------------------------------------------------
# univariate truncated series
# ---------------------------------------------------------------------------

class PowerSeries:
    """Truncated formal power series with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(mpq(c) for c in coeffs)
        if not coeffs:
            raise ValueError("need at least the constant coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @classmethod
    def from_terms(cls, terms: dict, order: int) -> "PowerSeries":
        """Series of a polynomial given as ``{degree: coefficient}``."""
        out = [_ZERO] * (order + 1)
        for deg, c in terms.items():
            if deg < 0:
                raise ValueError("negative degree")
            if deg <= order:
                out[deg] = mpq(c)
        return cls(out)

    @classmethod
    def constant(cls, value, order: int) -> "PowerSeries":
        return cls.from_terms({0: value}, order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def valuation(self):
        """Degree of the lowest nonzero coefficient, or None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def truncate(self, order: int) -> "PowerSeries":
        if order >= self.order:
            return self
        return PowerSeries(self.coeffs[: order + 1])

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, PowerSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return ps_add(self, other)

    def __sub__(self, other):
        return ps_sub(self, other)

    def __neg__(self):
        return PowerSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return ps_mul(self, other)
        return ps_scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return ps_div(self, other)

    def __pow__(self, e: int):
        return ps_pow(self, e)

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if len(self.coeffs) > 8 else ""
        return f"PowerSeries([{shown}{tail}], order={self.order})"


def _common_order(a: PowerSeries, b: PowerSeries) -> int:
    return min(a.order, b.order)


def ps_add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = _common_order(a, b)
    return PowerSeries([a.coeffs[i] + b.coeffs[i] for i in range(n + 1)])


def ps_sub(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = _common_order(a, b)
    return PowerSeries([a.coeffs[i] - b.coeffs[i] for i in range(n + 1)])


def ps_scale(a: PowerSeries, c) -> PowerSeries:
    c = mpq(c)
    return PowerSeries([c * x for x in a.coeffs])


def _mul_lists(a, b, order):
    """Cauchy product of coefficient lists, truncated to ``order``."""
    out = [_ZERO] * (order + 1)
    for i in range(min(len(a) - 1, order) + 1):
        ai = a[i]
        if not ai:
            continue
        top = min(len(b) - 1, order - i)
        for j in range(top + 1):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    n = _common_order(a, b)
    return PowerSeries(_mul_lists(a.coeffs, b.coeffs, n))


def ps_div(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Series quotient q with q*b = a up to the common truncation order."""
    if b.coeffs[0] == 0:
        raise ValueError("non-invertible series")
    n = _common_order(a, b)
    inv0 = _ONE / b.coeffs[0]
    bc = b.coeffs
    out = [_ZERO] * (n + 1)
    for m in range(n + 1):
        acc = a.coeffs[m]
        for j in range(1, min(m, len(bc) - 1) + 1):
            bj = bc[j]
            if bj:
                acc -= bj * out[m - j]
        out[m] = acc * inv0
    return PowerSeries(out)


def ps_compose(f: PowerSeries, g: PowerSeries) -> PowerSeries:
    """Compose f(g(z)) for g with zero constant term.

    The result order is ``min(g.order, (f.order + 1)*v - 1)`` where v is the
    valuation of g: that is the largest order to which the coefficients are
    determined by the available coefficients of f.  Horner evaluation from
    the top coefficient; each intermediate product is truncated to the order
    it can still influence, so the cost is O(order^3 / v) coefficient
    operations.
    """
    if g.coeffs[0] != 0:
        raise ValueError("composition requires zero constant term")
    v = g.valuation()
    if v is None:
        return PowerSeries.constant(f.coeffs[0], g.order)
    n = min(g.order, (f.order + 1) * v - 1)
    m = min(f.order, n // v)
    acc = [f.coeffs[m]]
    gc = g.coeffs
    for i in range(m - 1, -1, -1):
        # acc still gets multiplied by g**i later, so orders beyond n - v*i
        # cannot influence the result
        acc = _mul_lists(acc, gc, n - v * i)
        acc[0] += f.coeffs[i]
    acc += [_ZERO] * (n + 1 - len(acc))
    return PowerSeries(acc)


def ps_pow(a: PowerSeries, e: int) -> PowerSeries:
    if e < 0:
        raise ValueError("negative power")
    result = PowerSeries.constant(1, a.order)
    base = a
    while e:
        if e & 1:
            result = ps_mul(result, base)
        e >>= 1
        if e:
            base = ps_mul(base, base)
    return result


# ---------------------------------------------------------------------------
# sparse five-marker polynomials
# ---------------------------------------------------------------------------

class MultiPoly:
    """Sparse polynomial in markers (x, y, z, w, t), truncated in x.

    ``terms`` maps exponent 5-tuples to nonzero rational coefficients; every
    stored tuple satisfies ``e_x <= xbound``.
    """

    __slots__ = ("terms", "xbound")

    def __init__(self, terms, xbound: int):
        clean = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != 5 or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps}")
            c = mpq(c)
            if c and exps[0] <= xbound:
                clean[exps] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "xbound", xbound)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def constant(cls, value, xbound: int) -> "MultiPoly":
        return cls({(0, 0, 0, 0, 0): value}, xbound)

    @classmethod
    def marker(cls, name: str, xbound: int) -> "MultiPoly":
        exps = [0] * 5
        exps[MARKERS.index(name)] = 1
        return cls({tuple(exps): 1}, xbound)

    @classmethod
    def from_x_terms(cls, terms: dict, xbound: int) -> "MultiPoly":
        """Univariate polynomial in x, given as ``{degree: coefficient}``."""
        return cls({(d, 0, 0, 0, 0): c for d, c in terms.items()}, xbound)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), _ZERO)

    def __eq__(self, other):
        return (isinstance(other, MultiPoly)
                and self.xbound == other.xbound
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.xbound, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MultiPoly({len(self.terms)} terms, xbound={self.xbound})"


def mp_add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    xb = min(a.xbound, b.xbound)
    out = dict(a.terms)
    for exps, c in b.terms.items():
        s = out.get(exps, _ZERO) + c
        if s:
            out[exps] = s
        else:
            out.pop(exps, None)
    return MultiPoly(out, xb)


def mp_sub(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return mp_add(a, mp_scale(b, -1))


def mp_scale(a: MultiPoly, c) -> MultiPoly:
    c = mpq(c)
    if not c:
        return MultiPoly({}, a.xbound)
    return MultiPoly({e: c * v for e, v in a.terms.items()}, a.xbound)


def mp_mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    xb = min(a.xbound, b.xbound)
    out = {}
    for ea, ca in a.terms.items():
        if ea[0] > xb:
            continue
        for eb, cb in b.terms.items():
            ex = ea[0] + eb[0]
            if ex > xb:
                continue
            key = (ex, ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3], ea[4] + eb[4])
            s = out.get(key, _ZERO) + ca * cb
            if s:
                out[key] = s
            else:
                del out[key]
    return MultiPoly(out, xb)


def mp_pow(a: MultiPoly, e: int) -> MultiPoly:
    if e < 0:
        raise ValueError("negative power")
    result = MultiPoly.constant(1, a.xbound)
    base = a
    while e:
        if e & 1:
            result = mp_mul(result, base)
        e >>= 1
        if e:
            base = mp_mul(base, base)
    return result


def mp_substitute(p: MultiPoly, **values) -> MultiPoly:
    """Substitute rational constants for some markers (``y=1``, ``w=1``, ...).

    Substituting into x is rejected: the x-truncation would no longer be
    meaningful.
    """
    if "x" in values:
        raise ValueError("cannot substitute the truncation marker x")
    idx = {MARKERS.index(name): mpq(v) for name, v in values.items()}
    out = {}
    for exps, c in p.terms.items():
        factor = _ONE
        new = list(exps)
        for i, val in idx.items():
            factor *= val ** exps[i]
            new[i] = 0
        if not factor:
            continue
        key = tuple(new)
        s = out.get(key, _ZERO) + c * factor
        if s:
            out[key] = s
        else:
            del out[key]
    return MultiPoly(out, p.xbound)


def series_in_poly(fcoeffs, arg: MultiPoly) -> MultiPoly:
    """Evaluate sum_n fcoeffs[n] * arg**n, truncated at ``arg.xbound``.

    Every term of ``arg`` must have x-exponent >= 1, so that powers beyond
    the bound vanish and the sum is finite.
    """
    if any(e[0] == 0 for e in arg.terms):
        raise ValueError("argument not x-positive")
    fcoeffs = [mpq(c) for c in fcoeffs]
    if not fcoeffs:
        return MultiPoly({}, arg.xbound)
    nmax = min(len(fcoeffs) - 1, arg.xbound)
    acc = MultiPoly.constant(fcoeffs[nmax], arg.xbound)
    for i in range(nmax - 1, -1, -1):
        acc = mp_add(mp_mul(acc, arg), MultiPoly.constant(fcoeffs[i], arg.xbound))
    return acc
