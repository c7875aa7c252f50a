"""Verification checks behind the CLI selftest and the acceptance tests.

Each check re-derives a published or derived fact with the stated tolerance
and returns (passed, detail).  The full list is the package's acceptance
gate; the quick list runs the same cross-validations at small sizes.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from gmpy2 import mpq

from . import diagram_gf, oracle
from .asymptotics import (
    constant_fit,
    dominant_singularity,
    growth_report,
    growth_table,
    subexp_fit,
)
from .matchings import _walk_counts, count_matchings, table1_root_check
from .oracle import color_stats, count_modular, enumerate_vk_shapes
from .series_kernel import as_integer, mp_substitute
from .shape_gf import (
    bivariate_poly,
    colored_poly,
    ik_bivariate,
    ik_colored,
    trivariate_poly,
    verify_recursion_u2,
    verify_recursion_u3,
    verify_recursion_u4,
    wk_trivariate,
)

# published growth rates (4 decimal digits) for k = 3..9; the k = 6 entry is
# a known misprint: the certified value rounds to 3.7318 (see README)
TABLE2_PRINTED = ("2.5410", "3.0132", "3.3974", "3.7319",
                  "4.0327", "4.3087", "4.5654")
TABLE2_CERTIFIED = ("2.5410", "3.0132", "3.3974", "3.7318",
                    "4.0327", "4.3087", "4.5654")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _oracle_shape_tables(k, s_max):
    """Brute-force (s, u1)/(s, u1, u2)/(s, u1..u4) shape counts."""
    bi, tri, col = {}, {}, {}
    for s in range(s_max + 1):
        for d in enumerate_vk_shapes(k, s):
            st = color_stats(d)
            for tab, key in ((bi, (s, st.u1)),
                             (tri, (s, st.u1, st.u2)),
                             (col, (s, st.u1, st.u2, st.u3, st.u4))):
                tab[key] = tab.get(key, 0) + 1
    return bi, tri, col


def _compare_tables(k, s_max) -> list[str]:
    bi, tri, col = _oracle_shape_tables(k, s_max)
    problems = []
    for label, got, want in (("bivariate", ik_bivariate(k, s_max).entries, bi),
                             ("trivariate", wk_trivariate(k, s_max).entries, tri),
                             ("colored", ik_colored(k, s_max).entries, col)):
        if got != want:
            diff = set(got.items()) ^ set(want.items())
            problems.append(f"k={k} {label} disagrees at {sorted(diff)[:4]}")
    return problems


def check_table2_reproduction():
    """Criterion 1: growth_table(9, 4) equals the published rate row."""
    reports = growth_table(9, 4)
    rows = []
    for rep, want in zip(reports, TABLE2_PRINTED):
        lo, hi = rep.gamma_interval
        width_ok = hi - lo <= mpq(1, 10 ** 8)
        if rep.growth_rate != want or not width_ok:
            rows.append(f"k={rep.k}: certified {rep.growth_rate} "
                        f"(interval width {float(hi - lo):.1e}), "
                        f"published {want}")
    if rows:
        return False, "; ".join(rows)
    return True, "all seven published rates reproduced at width <= 1e-8"


def check_k2_growth():
    """Criterion 2: the k=2 growth rate rounds to 1.8489."""
    rate = growth_report(2, 4).growth_rate
    return rate == "1.8489", f"certified k=2 rate {rate}"


def _series_vs_oracle(series, k, n_max):
    mism = [n for n in range(n_max + 1)
            if as_integer(series[n]) != count_modular(k, n)]
    if mism:
        return False, f"k={k} mismatches at n={mism}"
    return True, f"k={k} closed form equals brute force for n<={n_max}"


def check_q2_oracle(n_max=14):
    """Criterion 3: q2_series coefficients equal brute-force counts."""
    return _series_vs_oracle(diagram_gf.q2_series(n_max), 2, n_max)


def check_q3_oracle(n_max=12):
    """Criterion 4: qk_series(3) coefficients equal brute-force counts."""
    return _series_vs_oracle(diagram_gf.qk_series(3, n_max), 3, n_max)


def check_table1():
    """Criterion 5: tabulated polynomials vanish at rho^2 and listed roots."""
    bad = [k for k in range(2, 10) if not table1_root_check(k)]
    if bad:
        return False, f"root check failed for k={bad}"
    return True, "exact root check passed for k=2..9"


def check_shape_tables(s_max=6, ks=(3, 4)):
    """Criterion 6: all three shape tables equal brute-force counts."""
    problems = []
    for k in ks:
        problems += _compare_tables(k, s_max)
    if problems:
        return False, "; ".join(problems)
    return True, f"all cells match for k in {list(ks)}, s<={s_max}"


def check_recursions(s_max=8, k=3):
    """Criterion 7: the three shape recursions hold on the full table."""
    bad = [name for name, fn in (("u2", verify_recursion_u2),
                                 ("u3", verify_recursion_u3),
                                 ("u4", verify_recursion_u4))
           if not fn(k, s_max)]
    if bad:
        return False, f"recursions {bad} fail for k={k}, s<={s_max}"
    return True, f"u2/u3/u4 recursions hold for k={k}, s<={s_max}"


def check_specializations(s_max=8, ks=(3, 4)):
    """Criterion 8: colored -> trivariate -> bivariate marker collapses."""
    for k in ks:
        col = mp_substitute(colored_poly(k, s_max), w=1, t=1)
        if col != trivariate_poly(k, s_max):
            return False, f"colored(w=t=1) != trivariate for k={k}"
        tri = mp_substitute(trivariate_poly(k, s_max), z=1)
        if tri != bivariate_poly(k, s_max):
            return False, f"trivariate(u2 marker=1) != bivariate for k={k}"
    return True, f"specialization chain exact to x-order {s_max} for k in {list(ks)}"


def check_sigma_identity(s_max=4, order=30):
    """Criterion 9: class-product form equals sigma-product form."""
    ok = diagram_gf.verify_sigma_identity(s_max, order)
    return ok, f"checked all tuples with s<={s_max} at order {order}"


def check_exponent_fits():
    """Criterion 10: power-law exponent fits at their stated tolerances."""
    details = []
    cat = _walk_counts(2, 1000)
    e = subexp_fit(cat, mpq(1, 4), (1, 1000))
    details.append(f"catalan-like fit {e:.4f} (want 1.5 +- 0.1)")
    ok = abs(e - 1.5) <= 0.1
    f3 = _walk_counts(3, 1000)
    e = subexp_fit(f3, mpq(1, 16), (1, 1000))
    details.append(f"matchings k=3 fit {e:.4f} (want 5 +- 0.3)")
    ok = ok and abs(e - 5.0) <= 0.3
    lo, hi = dominant_singularity(3, mpq(1, 10 ** 12))
    q3 = diagram_gf.qk_series(3, 600)
    e = subexp_fit(list(q3), (lo + hi) / 2, (1, 600))
    details.append(f"diagrams k=3 fit {e:.4f} (want 5 +- 0.5)")
    ok = ok and abs(e - 5.0) <= 0.5
    return ok, "; ".join(details)


def check_constant_fit():
    """Criterion 11: the k=2 amplitude lands within 2% of 1.4848."""
    lo, hi = dominant_singularity(2, mpq(1, 10 ** 12))
    q2 = diagram_gf.q2_series(1000)
    c = constant_fit(list(q2), (lo + hi) / 2, 1.5, (1, 1000))
    ok = abs(c - 1.4848) <= 0.02 * 1.4848
    return ok, f"fitted constant {c:.5f} (want 1.4848 +- 2%)"


def check_remark_mismatch(order=20):
    """Criterion 12: the k=2 cast of the k>2 form disagrees with q2_series."""
    idx = diagram_gf.remark_mismatch(order)
    if idx is None:
        return False, f"no mismatch up to order {order}"
    return True, f"first mismatch at coefficient {idx}"


def check_integrality(order=200):
    """Criterion 13: counting series have nonnegative integer coefficients."""
    series = [("k=2", diagram_gf.q2_series(order))]
    series += [(f"k={k}", diagram_gf.qk_series(k, order))
               for k in range(3, 10)]
    for label, s in series:
        for n, c in enumerate(s):
            v = as_integer(c)   # raises on a non-integer
            if v < 0:
                return False, f"{label}: negative coefficient at n={n}"
    return True, f"all coefficients to order {order} are nonnegative integers"


def quick_matchings():
    """Walk DP equals filtered enumeration of perfect matchings."""
    for k in (2, 3, 4):
        for n in range(6):
            brute = sum(
                1 for m in oracle.perfect_matchings(n)
                if oracle._max_mutual_crossing(m) < k)
            if count_matchings(k, n) != brute:
                return False, f"count_matchings({k},{n}) != brute {brute}"
    return True, "walk DP equals brute force for k<=4, n<=5"


FULL_CHECKS: list[tuple[str, Callable]] = [
    ("table2-rates", check_table2_reproduction),
    ("k2-growth", check_k2_growth),
    ("q2-vs-oracle", check_q2_oracle),
    ("q3-vs-oracle", check_q3_oracle),
    ("table1-roots", check_table1),
    ("shape-tables-vs-oracle", check_shape_tables),
    ("shape-recursions", check_recursions),
    ("shape-specializations", check_specializations),
    ("sigma-identity", check_sigma_identity),
    ("exponent-fits", check_exponent_fits),
    ("constant-fit", check_constant_fit),
    ("remark-mismatch", check_remark_mismatch),
    ("integrality-order-200", check_integrality),
]

QUICK_CHECKS: list[tuple[str, Callable]] = [
    ("matchings-vs-brute", quick_matchings),
    ("q2-vs-oracle-small", lambda: check_q2_oracle(10)),
    ("q3-vs-oracle-small", lambda: check_q3_oracle(10)),
    ("table1-roots", check_table1),
    ("shape-tables-small", lambda: check_shape_tables(4, (3,))),
    ("shape-recursions-small", lambda: check_recursions(4)),
    ("shape-specializations-small", lambda: check_specializations(4, (3,))),
    ("sigma-identity-small", lambda: check_sigma_identity(2, 20)),
    ("k2-growth", check_k2_growth),
    ("remark-mismatch", check_remark_mismatch),
]


def run_checks(level: str = "quick") -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    checks = FULL_CHECKS if level == "full" else QUICK_CHECKS
    out = []
    for name, fn in checks:
        start = time.perf_counter()
        try:
            passed, detail = fn()
        except Exception as exc:  # a crash is a failed check, not a crash
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(name, passed, detail,
                               time.perf_counter() - start))
    return out
