import pytest

from modnc.oracle import color_stats, enumerate_vk_shapes
from modnc.series_kernel import mp_substitute
from modnc.shape_gf import (
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


def oracle_tables(k, s_max):
    bi, tri, col = {}, {}, {}
    for s in range(s_max + 1):
        for d in enumerate_vk_shapes(k, s):
            st = color_stats(d)
            for tab, key in ((bi, (s, st.u1)),
                             (tri, (s, st.u1, st.u2)),
                             (col, (s, st.u1, st.u2, st.u3, st.u4))):
                tab[key] = tab.get(key, 0) + 1
    return bi, tri, col


def test_bivariate_examples():
    t2 = ik_bivariate(2, 3)
    assert t2.count(0, 0) == 1
    assert t2.count(1, 1) == 1
    assert t2.count(2, 2) == 1
    assert all(t2.count(2, m) == 0 for m in (0, 1, 3))
    t3 = ik_bivariate(3, 3)
    assert t3.count(0, 0) == 1
    assert t3.count(2, 0) == 1 and t3.count(2, 2) == 1
    for k in range(2, 10):
        assert ik_bivariate(k, 1).count(0, 0) == 1


def test_trivariate_rejects_k2():
    with pytest.raises(ValueError, match="k>2"):
        wk_trivariate(2, 3)


def test_colored_rejects_k2():
    with pytest.raises(ValueError, match="k>2"):
        ik_colored(2, 3)


def test_trivariate_examples():
    t = wk_trivariate(3, 4)
    assert t.count(2, 0, 1) == 1
    # support condition
    for (s, u1, u2) in t.entries:
        assert u1 + 2 * u2 <= s


def test_colored_examples():
    t = ik_colored(3, 4)
    assert t.count(1, 1, 0, 0, 0) == 1
    assert t.count(3, 1, 0, 1, 0) >= 1
    for (s, u1, u2, u3, u4), v in t.entries.items():
        assert v > 0
        assert u1 + 2 * u2 + 2 * u3 + 3 * u4 <= s


def test_tables_match_oracle():
    for k in (3, 4):
        bi, tri, col = oracle_tables(k, 5)
        assert ik_bivariate(k, 5).entries == bi
        assert wk_trivariate(k, 5).entries == tri
        assert ik_colored(k, 5).entries == col


def test_bivariate_is_u2_marginal():
    for k in (3, 4):
        tri = wk_trivariate(k, 6)
        bi = ik_bivariate(k, 6)
        marg = {}
        for (s, u1, u2), v in tri.entries.items():
            marg[(s, u1)] = marg.get((s, u1), 0) + v
        assert marg == bi.entries


def test_specialization_on_polynomials():
    for k in (3, 4):
        assert mp_substitute(colored_poly(k, 6), w=1, t=1) == \
            trivariate_poly(k, 6)
        assert mp_substitute(trivariate_poly(k, 6), z=1) == \
            bivariate_poly(k, 6)


def test_recursion_u2_instances():
    t = wk_trivariate(3, 3)
    # (s,u1,u2) = (1,0,0): one crossing pair appears from two smaller shapes
    assert t.count(2, 0, 1) == t.count(1, 1, 0) + t.count(0, 1, 0) == 1
    # (s,u1,u2) = (2,0,0)
    assert t.count(3, 0, 1) == t.count(2, 1, 0) + t.count(1, 1, 0) == 1


def test_recursion_u4_instance():
    t = ik_colored(3, 3)
    lhs = 2 * t.count(3, 0, 1, 0, 1)
    rhs = t.count(2, 0, 1, 1, 0) + 2 * t.count(2, 0, 2, 0, 0)
    assert lhs == rhs


def test_recursions_hold():
    assert verify_recursion_u2(3, 5)
    assert verify_recursion_u3(3, 5)
    assert verify_recursion_u4(3, 5)
    assert verify_recursion_u2(4, 4)
    assert verify_recursion_u3(4, 4)
    assert verify_recursion_u4(4, 4)


def test_zero_outside_support_region():
    t = wk_trivariate(3, 6)
    for s in range(7):
        for u1 in range(s + 2):
            for u2 in range(s + 2):
                if u1 + 2 * u2 > s:
                    assert t.count(s, u1, u2) == 0
