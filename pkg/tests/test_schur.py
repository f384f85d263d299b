import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcschur.combinatorics import MultiPartition, enumerate_multipartitions, standard_tableaux, strict_partitions
from hcschur.exact_arith import FactoredScalar, RadicalScalar, fs_eq, rad_eq, rad_eq_squared
from hcschur.scalars import ParamContext, b_gap, q
from hcschur.schur import (
    X_factor,
    Y_factor,
    hook_shape,
    q_lambda,
    schur_closed,
    schur_hook_shape,
    schur_recursive,
    schur_strict_shape,
    wan_wang_c,
)

Q1 = FactoredScalar.gen("Q1")
Q2 = FactoredScalar.gen("Q2")
ONE = FactoredScalar(1)


def mp(kind, m, *comps):
    return MultiPartition(kind, m, comps)


def test_single_box_values():
    assert fs_eq(q_lambda(mp("0", 1, (1,))), ONE)
    assert fs_eq(q_lambda(mp("s", 0, (1,))), ONE)
    assert rad_eq(schur_recursive(mp("s", 0, (1,))).value, RadicalScalar(FactoredScalar(1) / 2))
    rec = schur_recursive(mp("0", 1, (1,))).value
    assert rad_eq(rec, b_gap(Q1))
    assert rad_eq(schur_closed(mp("0", 1, (1,))).value, rec)


def test_row_of_two_in_strict_component():
    # the filled box is the only addable box at step 2, so q_lambda = 1
    lam = mp("s", 0, (2,))
    assert fs_eq(q_lambda(lam), ONE)
    assert rad_eq(schur_closed(lam).value, schur_recursive(lam).value)


def test_special_row_formula():
    from hcschur.exact_arith import LaurentPoly

    qq = LaurentPoly.gen("q")
    for n in range(1, 6):
        num = ONE
        for k in range(1, n + 1):
            num = num * FactoredScalar.from_poly(qq ** (2 * k) - 1)
        den = FactoredScalar.from_poly(qq ** 2 - 1) ** n
        for k in range(0, n):
            den = den * FactoredScalar.from_poly(qq ** (2 * k) + 1)
        # n(lambda) = 0 for a one-row shape
        assert rad_eq(schur_closed(mp("s", 0, (n,))).value, RadicalScalar(num / den)), n
    assert rad_eq(schur_closed(mp("s", 0, (1,))).value, RadicalScalar(FactoredScalar(1) / 2))


def test_empty_Y_and_small_X():
    lam = mp("0", 2, (), (1,))
    assert fs_eq(Y_factor(lam, 1), ONE)
    assert fs_eq(Y_factor(mp("s", 0, (1,)), 0), ONE)
    want = 2 * (Q2 / Q1 - 1) * (Q1 * Q2 * q ** 2 - 1) / ((q ** 2 + 1) * Q2)
    assert fs_eq(X_factor(lam, 1, 2), want)


@pytest.mark.parametrize("kind,m,n", [("0", 1, 3), ("0", 2, 2), ("s", 0, 4), ("s", 1, 3), ("s", 2, 2)])
def test_recursive_matches_closed(kind, m, n):
    for lam in enumerate_multipartitions(kind, m, n):
        assert rad_eq(schur_recursive(lam).value, schur_closed(lam).value), lam


@pytest.mark.parametrize("kind,m,n", [("0", 1, 3), ("s", 1, 3)])
def test_q_lambda_is_tableau_independent(kind, m, n):
    for lam in enumerate_multipartitions(kind, m, n):
        vals = [q_lambda(lam, t) for t in standard_tableaux(lam)]
        assert all(fs_eq(v, vals[0]) for v in vals)


@pytest.mark.parametrize("kind", ["0", "s"])
@pytest.mark.parametrize("m", [1, 2])
def test_hook_shapes_small(kind, m):
    for n in range(1, 5):
        for u in range(1, n + 1):
            for c in range(1, m + 1):
                comps = [()] * (m + (kind == "s"))
                comps[c - 1 + (kind == "s")] = hook_shape(u, n)
                lam = MultiPartition(kind, m, tuple(comps))
                h, cl = schur_hook_shape(lam, c, u).value, schur_closed(lam).value
                assert rad_eq_squared(h, cl)
                # kind 0: the displayed square root and the per-box radicals pick
                # different branches exactly when n - u is even and positive
                flipped = kind == "0" and n > u and (n - u) % 2 == 0
                assert rad_eq(h, -cl if flipped else cl), (kind, m, n, u, c)


def test_literal_hook_display_disagrees_for_kind_s():
    # the display as printed carries Q_c^2 in one denominator product; the
    # cancelled form is what agrees with the closed route
    hits = []
    for n in range(1, 5):
        for u in range(1, n + 1):
            lam = MultiPartition("s", 1, ((), hook_shape(u, n)))
            lit = schur_hook_shape(lam, 1, u, literal_display=True).value
            hits.append((n, u, rad_eq(lit, schur_closed(lam).value)))
    assert all(ok for n, u, ok in hits if n == 1)
    assert not any(ok for n, u, ok in hits if n >= 2 and u < n)


def test_strict_shift_hook_values():
    # the (3,2) shifted hooks 5,3,2,2,1 enter the c-formula
    v = wan_wang_c((3, 2)).value
    lam = mp("s", 0, (3, 2))
    assert rad_eq(v, RadicalScalar(FactoredScalar(2) ** 5) * schur_strict_shape(lam).value)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.sampled_from(strict_partitions(n))))
def test_wan_wang_is_power_of_two_times_strict_shape(mu):
    lam = MultiPartition("s", 0, (mu,))
    want = RadicalScalar(FactoredScalar(2) ** sum(mu)) * schur_strict_shape(lam).value
    assert rad_eq(wan_wang_c(mu).value, want)


def test_context_mismatch():
    with pytest.raises(ValueError):
        schur_closed(mp("s", 1, (1,), ()), ParamContext(1, "0"))
    with pytest.raises(ValueError):
        schur_closed(MultiPartition("ss", 0, ((1,), ())))
