from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hcschur.combinatorics import BoxCoord, MultiPartition, canonical_row_tableau
from hcschur.exact_arith import FactoredScalar, fs_add, fs_eq
from hcschur.scalars import (
    Q2P1,
    ParamContext,
    b_gap,
    b_pm,
    q,
    q_diff,
    q_of,
    q_radicand,
    quantum_int,
    residue,
    residue_seq,
)

Q1 = FactoredScalar.gen("Q1")
Q2 = FactoredScalar.gen("Q2")
ONE = FactoredScalar(1)


def test_q_function_values():
    assert fs_eq(q_of(1), FactoredScalar(2))
    assert fs_eq(q_of(q ** -2), FactoredScalar(2))
    want = 2 * fs_add(Q1, -Q2) * fs_add(q ** 2 * Q1 * Q2, FactoredScalar(-1)) / (Q2P1 * Q1 * Q2)
    assert fs_eq(fs_add(q_of(Q1), -q_of(Q2)), want)
    assert fs_eq(q_diff(Q1, Q2), want)


def test_b_pair():
    assert q_radicand(1).is_zero()
    assert fs_eq(b_pm(1, 1).a, ONE) and fs_eq(b_pm(1, -1).a, ONE)
    # (b_+ - b_-)^2 = q_of^2 - 4
    gap = b_gap(Q1)
    assert fs_eq(gap.square(), fs_add(q_of(Q1) ** 2, FactoredScalar(-4)))
    # b_+ b_- = 1
    prod = b_pm(Q1, 1) * b_pm(Q1, -1)
    assert prod.rational() is not None and fs_eq(prod.rational(), ONE)


def test_quantum_integers():
    assert quantum_int(0, 1).is_zero()
    assert fs_eq(quantum_int(1, 1), ONE)


@settings(max_examples=40, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4))
def test_q_difference_matches_direct_subtraction(a, b):
    i1, i2 = Q1 * q ** (2 * a), Q2 * q ** (2 * b)
    vals = {"q": Fraction(5, 3), "Q1": Fraction(-2, 7), "Q2": Fraction(3)}
    assert q_diff(i1, i2).evaluate(vals) == q_of(i1).evaluate(vals) - q_of(i2).evaluate(vals)


def test_residues():
    ctx = ParamContext(1, "s")
    assert fs_eq(residue(BoxCoord(1, 1, 1), ctx), Q1)
    assert fs_eq(residue(BoxCoord(1, 2, 0), ctx), q ** 2)
    lam = MultiPartition("s", 1, ((2, 1), (1, 1)))
    got = residue_seq(canonical_row_tableau(lam), ctx)
    # strict component in shifted coordinates: its second row starts on the diagonal
    want = [ONE, q ** 2, ONE, Q1, Q1 * q ** -2]
    assert all(fs_eq(a, b) for a, b in zip(got, want)) and len(got) == 5
