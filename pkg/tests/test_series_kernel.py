import random

import pytest
from gmpy2 import mpq

from modnc.series_kernel import (
    ComputationError,
    MultiPoly,
    PowerSeries,
    as_integer,
    mp_add,
    mp_mul,
    mp_substitute,
    ps_compose,
    ps_div,
    ps_mul,
    series_in_poly,
)


def P(*coeffs):
    return PowerSeries(coeffs)


def test_mul_difference_of_squares():
    a = PowerSeries.from_terms({0: 1, 1: 1}, 2)
    b = PowerSeries.from_terms({0: 1, 1: -1}, 2)
    assert ps_mul(a, b) == P(1, 0, -1)


def test_mul_geometric_squared():
    ones = P(1, 1, 1, 1)
    assert ps_mul(ones, ones) == P(1, 2, 3, 4)


def test_mul_catalan_prefix_squared():
    # convolution of (1,1,2,5) with itself at degree 3, done by hand
    e2 = P(1, 1, 2, 5)
    expected = 1 * 5 + 1 * 2 + 2 * 1 + 5 * 1
    assert ps_mul(e2, e2)[3] == expected == 14


def test_mul_truncates_to_smaller_order():
    assert ps_mul(P(1, 1, 1, 1, 1), P(1, 1)).order == 1


def test_div_geometric():
    one = PowerSeries.from_terms({0: 1}, 4)
    denom = PowerSeries.from_terms({0: 1, 1: -1}, 4)
    assert ps_div(one, denom) == P(1, 1, 1, 1, 1)


def test_div_cancels_factor():
    num = PowerSeries.from_terms({0: 1, 2: -1}, 3)
    den = PowerSeries.from_terms({0: 1, 1: -1}, 3)
    assert ps_div(num, den) == P(1, 1, 0, 0)


def test_div_by_dodecic_denominator_linear_coefficient():
    # 1/q for q = 1 - z - ... : long division gives 1 + z + O(z^2)
    q = PowerSeries.from_terms(
        {0: 1, 1: -1, 2: -1, 3: 1, 4: 2, 6: 1, 8: -1, 10: 1, 12: -1}, 12)
    one = PowerSeries.from_terms({0: 1}, 12)
    assert ps_div(one, q)[1] == 1


def test_div_rejects_zero_constant():
    with pytest.raises(ValueError, match="non-invertible"):
        ps_div(P(1, 1), P(0, 1))


def test_div_inverts_mul():
    rng = random.Random(7)
    for _ in range(20):
        a = PowerSeries([mpq(rng.randint(-9, 9), rng.randint(1, 9))
                         for _ in range(12)])
        b_coeffs = [mpq(rng.randint(-9, 9), rng.randint(1, 9))
                    for _ in range(12)]
        b_coeffs[0] = mpq(rng.randint(1, 9))
        b = PowerSeries(b_coeffs)
        assert ps_div(ps_mul(a, b), b) == a


def test_compose_geometric_in_square():
    f = PowerSeries([1] * 6)
    g = PowerSeries.from_terms({2: 1}, 5)
    assert ps_compose(f, g) == P(1, 0, 1, 0, 1, 0)


def test_compose_identity():
    f = P(3, mpq(1, 2), -2, 7)
    g = PowerSeries.from_terms({1: 1}, 3)
    assert ps_compose(f, g) == f


def test_compose_matching_series_shift():
    # f = 1 + z + 2z^2 + 5z^3 + 14z^4 composed with z + z^2: the z^2
    # coefficient collects f1*[z^2](z+z^2) + f2*([z](z+z^2))^2 = 1 + 2
    f = P(1, 1, 2, 5, 14)
    g = PowerSeries.from_terms({1: 1, 2: 1}, 6)
    assert ps_compose(f, g)[2] == 3


def test_compose_rejects_nonzero_constant():
    with pytest.raises(ValueError, match="zero constant term"):
        ps_compose(P(1, 1), P(1, 1))


def test_compose_matches_naive_horner():
    rng = random.Random(11)
    for _ in range(10):
        f = PowerSeries([mpq(rng.randint(-6, 6), rng.randint(1, 5))
                         for _ in range(8)])
        g_coeffs = [mpq(0)] + [mpq(rng.randint(-6, 6), rng.randint(1, 5))
                               for _ in range(20)]
        g = PowerSeries(g_coeffs)
        naive = PowerSeries.constant(0, g.order)
        for n in range(f.order, -1, -1):
            naive = ps_mul(naive, g)
            naive = naive + PowerSeries.constant(f[n], g.order)
        got = ps_compose(f, g)
        assert got.coeffs == naive.coeffs[: got.order + 1]


def test_ring_laws_on_sampled_series():
    rng = random.Random(3)

    def rand_series():
        return PowerSeries([mpq(rng.randint(-8, 8), rng.randint(1, 6))
                            for _ in range(10)])

    for _ in range(15):
        a, b, c = rand_series(), rand_series(), rand_series()
        assert ps_mul(a, b) == ps_mul(b, a)
        assert ps_mul(ps_mul(a, b), c) == ps_mul(a, ps_mul(b, c))
        assert ps_mul(a, b + c) == ps_mul(a, b) + ps_mul(a, c)


def test_series_immutable_and_exact():
    s = P(1, mpq(1, 3))
    with pytest.raises(AttributeError):
        s.coeffs = ()
    assert s[1] * 3 == 1


def test_as_integer():
    assert as_integer(mpq(14)) == 14
    with pytest.raises(ComputationError):
        as_integer(mpq(1, 2))


# ---------------------------------------------------------------------------
# multivariate side
# ---------------------------------------------------------------------------

def test_mp_mul_and_xbound_truncation():
    x = MultiPoly.marker("x", 3)
    y = MultiPoly.marker("y", 3)
    p = mp_add(x, y)
    sq = mp_mul(p, p)
    assert sq.coefficient((2, 0, 0, 0, 0)) == 1
    assert sq.coefficient((1, 1, 0, 0, 0)) == 2
    cube_x = mp_mul(mp_mul(x, x), mp_mul(x, x))
    assert cube_x.terms == {}  # x^4 beyond the bound


def test_mp_ring_laws():
    rng = random.Random(5)

    def rand_poly():
        terms = {}
        for _ in range(6):
            e = (rng.randint(0, 3), rng.randint(0, 2), rng.randint(0, 2), 0, 0)
            terms[e] = mpq(rng.randint(-5, 5))
        return MultiPoly(terms, 4)

    for _ in range(10):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert mp_mul(a, b) == mp_mul(b, a)
        assert mp_mul(mp_mul(a, b), c) == mp_mul(a, mp_mul(b, c))
        assert mp_mul(a, mp_add(b, c)) == mp_add(mp_mul(a, b), mp_mul(a, c))


def test_mp_substitute_collapses_markers():
    x = MultiPoly.marker("x", 4)
    w = MultiPoly.marker("w", 4)
    p = mp_add(mp_mul(x, w), mp_mul(x, x))
    q = mp_substitute(p, w=1)
    assert q.coefficient((1, 0, 0, 0, 0)) == 1
    assert q.coefficient((2, 0, 0, 0, 0)) == 1
    with pytest.raises(ValueError):
        mp_substitute(p, x=1)


def test_series_in_poly_geometric():
    x = MultiPoly.marker("x", 5)
    out = series_in_poly([1] * 10, x)
    assert all(out.coefficient((n, 0, 0, 0, 0)) == 1 for n in range(6))


def test_series_in_poly_constant_function():
    arg = mp_mul(MultiPoly.marker("x", 5), MultiPoly.marker("y", 5))
    out = series_in_poly([1, 0, 0], arg)
    assert out == MultiPoly.constant(1, 5)


def test_series_in_poly_rejects_constant_terms():
    bad = mp_add(MultiPoly.marker("x", 4), MultiPoly.constant(1, 4))
    with pytest.raises(ValueError, match="x-positive"):
        series_in_poly([1, 1], bad)
