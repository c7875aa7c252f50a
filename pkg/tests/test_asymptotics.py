import pytest
from gmpy2 import mpq

from modnc.asymptotics import (
    DEFAULT_TOL,
    constant_fit,
    dominant_singularity,
    growth_report,
    growth_table,
    singularity_polynomial,
    subexp_fit,
    subexponential_exponent,
    theta_derivative_nonzero,
    _theta_parts,
)
from modnc.matchings import rho, _walk_counts
from modnc.series_kernel import ComputationError

CERTIFIED_RATES = ("2.5410", "3.0132", "3.3974", "3.7318",
                   "4.0327", "4.3087", "4.5654")


def eval_poly(coeffs, x):
    acc = mpq(0)
    for c in reversed(list(coeffs)):
        acc = acc * x + mpq(c)
    return acc


def theta_value(k, x):
    num, base = _theta_parts(k)
    return eval_poly(num, x) / eval_poly(base, x) ** 2


def test_singularity_polynomial_structure():
    for k in range(3, 10):
        p = singularity_polynomial(k)
        assert len(p) - 1 == 24
        assert p[0] == -rho(k) ** 2
    p2 = singularity_polynomial(2)
    assert len(p2) - 1 == 12
    # spot check: identical to the hand-assembled k=2 combination
    b2 = (1, -1, -1, 1, 2, 0, 1)
    num2 = {4: 1, 6: -1, 8: 1}
    sq = [mpq(0)] * 13
    for i, ci in enumerate(b2):
        for j, cj in enumerate(b2):
            sq[i + j] += mpq(ci * cj, 4)
    expected = [num2.get(d, 0) - sq[d] for d in range(13)]
    assert list(p2) == expected


def test_interval_brackets_crossing():
    for k in (2, 3, 9):
        lo, hi = dominant_singularity(k)
        assert hi - lo <= DEFAULT_TOL
        r2 = rho(k) ** 2
        assert theta_value(k, lo) < r2 < theta_value(k, hi)


def test_interval_nesting():
    lo1, hi1 = dominant_singularity(4, mpq(1, 10 ** 6))
    lo2, hi2 = dominant_singularity(4, mpq(1, 10 ** 9))
    assert lo1 <= lo2 < hi2 <= hi1


def test_known_gamma2():
    lo, hi = dominant_singularity(2)
    assert lo < mpq("0.54085657752") < hi


def test_growth_table_certified_rates():
    reports = growth_table(9, 4)
    assert tuple(r.growth_rate for r in reports) == CERTIFIED_RATES
    for r in reports:
        lo, hi = r.gamma_interval
        assert hi - lo <= mpq(1, 10 ** 8)
        assert r.theta_derivative_nonzero


def test_growth_report_k2_and_rounding():
    assert growth_report(2, 4).growth_rate == "1.8489"
    assert growth_report(2, 2).growth_rate == "1.85"
    assert growth_report(3, 2).growth_rate == "2.54"


def test_growth_table_validation():
    with pytest.raises(ValueError):
        growth_table(10, 4)
    with pytest.raises(ValueError):
        growth_table(2, 4)
    with pytest.raises(ValueError):
        growth_report(3, 0)


def test_theta_derivative_certificates():
    for k in (2, 3, 9):
        assert theta_derivative_nonzero(k)


def test_subexponential_exponent_values():
    assert subexponential_exponent(2) == mpq(3, 2)
    assert subexponential_exponent(3) == 5
    assert subexponential_exponent(4) == mpq(21, 2)
    assert subexponential_exponent(9) == 68


def test_subexp_fit_catalan():
    cat = _walk_counts(2, 400)
    est = subexp_fit(cat, mpq(1, 4), (1, 400))
    assert abs(est - 1.5) <= 0.1


def test_subexp_fit_converges_monotonically():
    cat = _walk_counts(2, 800)
    errors = [abs(subexp_fit(cat, mpq(1, 4), (1, n)) - 1.5)
              for n in (100, 200, 400, 800)]
    assert errors == sorted(errors, reverse=True)


def test_constant_fit_catalan():
    # amplitude of the central-binomial power law is 1/sqrt(pi)
    cat = _walk_counts(2, 400)
    est = constant_fit(cat, mpq(1, 4), 1.5, (1, 400))
    assert abs(est - 0.5641895835) <= 0.01


def test_constant_fit_k3_is_positive():
    from modnc.diagram_gf import qk_series
    lo, hi = dominant_singularity(3, mpq(1, 10 ** 12))
    q3 = list(qk_series(3, 400))
    est = constant_fit(q3, (lo + hi) / 2, 5, (1, 400))
    assert est > 0


def test_fit_range_validation():
    cat = _walk_counts(2, 50)
    with pytest.raises(ValueError, match="insufficient range"):
        subexp_fit(cat, mpq(1, 4), (1, 200))
    with pytest.raises(ValueError, match="insufficient range"):
        subexp_fit(cat, mpq(1, 4), (40, 50))
    with pytest.raises(ValueError, match="insufficient range"):
        constant_fit(cat, mpq(1, 4), 1.5, (30, 50))


def test_fit_rejects_nonpositive():
    with pytest.raises(ValueError):
        subexp_fit([1] * 30 + [0] * 171, mpq(1, 4), (1, 200))


def test_singularity_polynomial_rejects_bad_k():
    with pytest.raises(ValueError):
        singularity_polynomial(10)
