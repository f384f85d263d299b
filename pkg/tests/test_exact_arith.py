from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcschur.exact_arith import (
    FactoredScalar,
    LaurentPoly,
    RadicalScalar,
    SpecializationError,
    SpecializationPoint,
    canonicalize_factor,
    fs_add,
    fs_eq,
    mono,
    rad_eq,
    rad_eq_squared,
    specialize,
    specialize_poly,
    vanishes_by_congruence,
)

q = LaurentPoly.gen("q")
Q1 = LaurentPoly.gen("Q1")
Q2 = LaurentPoly.gen("Q2")
fs = FactoredScalar.from_poly

VARS = ("q", "Q1", "Q2")


@st.composite
def laurent(draw, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exps = {v: draw(st.integers(-3, 3)) for v in VARS}
        terms[mono(exps)] = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
    return LaurentPoly(terms)


@st.composite
def factored(draw):
    out = FactoredScalar(Fraction(draw(st.integers(1, 6)), draw(st.integers(1, 4))) * draw(st.sampled_from((1, -1))))
    for _ in range(draw(st.integers(0, 3))):
        p = draw(laurent(3))
        if p.is_zero():
            continue
        out = out * fs(p) ** draw(st.sampled_from((1, -1, 2)))
    return out


POINT = {"q": Fraction(3, 2), "Q1": Fraction(-5, 7), "Q2": Fraction(11, 3)}


def test_canonical_factor_examples():
    assert canonicalize_factor(2 * q ** 2 - 2 * q ** -2) == (2, mono({"q": -2}), q ** 4 - 1)
    assert canonicalize_factor(q ** 4 - 1) == (1, mono({}), q ** 4 - 1)
    u, m, c = canonicalize_factor(-Q1)
    assert (u, m, c) == (-1, mono({"Q1": 1}), LaurentPoly.const(1))


def test_factored_equality_examples():
    assert fs_eq(fs(q ** 2 - 1) * fs(q ** 2 + 1), fs(q ** 4 - 1))
    assert fs_eq(fs(Q1 ** 2 * q ** 4 - 1) / fs(Q1 * q ** 2 - 1), fs(Q1 * q ** 2 + 1))
    assert not fs_eq(fs(q ** 2 - 1), fs(q ** 2 + 1))


def test_zero_factor_rejected():
    with pytest.raises(ValueError):
        canonicalize_factor(LaurentPoly())
    assert FactoredScalar.from_poly(LaurentPoly()).is_zero()


@settings(max_examples=60, deadline=None)
@given(laurent(), laurent(), laurent())
def test_laurent_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@settings(max_examples=60, deadline=None)
@given(laurent(), laurent())
def test_evaluation_is_a_ring_map(a, b):
    assert (a * b).evaluate(POINT) == a.evaluate(POINT) * b.evaluate(POINT)
    assert (a + b).evaluate(POINT) == a.evaluate(POINT) + b.evaluate(POINT)


@settings(max_examples=60, deadline=None)
@given(laurent())
def test_from_poly_round_trip(p):
    if p.is_zero():
        return
    num, den = fs(p).num_den()
    assert num == p * den


@settings(max_examples=50, deadline=None)
@given(factored(), factored(), factored())
def test_fs_eq_is_an_equivalence_and_matches_evaluation(a, b, c):
    assert fs_eq(a, a)
    assert fs_eq(a, b) == fs_eq(b, a)
    assert fs_eq(a * b, b * a)
    assert fs_eq((a * b) * c, a * (b * c))
    assert fs_eq(a / a, FactoredScalar(1))
    try:
        va, vb = a.evaluate(POINT), b.evaluate(POINT)
    except ZeroDivisionError:
        return
    if fs_eq(a, b):
        assert va == vb


@settings(max_examples=40, deadline=None)
@given(factored(), factored())
def test_fs_add_agrees_with_evaluation(a, b):
    try:
        want = a.evaluate(POINT) + b.evaluate(POINT)
        got = fs_add(a, b).evaluate(POINT)
    except ZeroDivisionError:
        return
    assert got == want


def test_radical_pairing():
    r = fs(q ** 2 + Q1)
    s = RadicalScalar(1, [r]) * RadicalScalar(1, [r])
    assert s.radicands == () and fs_eq(s.rational, r)
    r1, r2 = fs(q + 2), fs(Q1 - 3)
    prod = RadicalScalar(2, [r1]) * RadicalScalar(3, [r2])
    assert fs_eq(prod.rational, FactoredScalar(6))
    assert fs_eq(prod.radicand(), r1 * r2)
    assert rad_eq(RadicalScalar(1, [fs(q ** 2 - 1) * fs(q ** 2 + 1)]), RadicalScalar(1, [fs(q ** 4 - 1)]))


@settings(max_examples=40, deadline=None)
@given(factored(), factored())
def test_radical_square(a, r):
    x = RadicalScalar(a, [r])
    assert fs_eq(x.square(), a ** 2 * r)
    assert rad_eq_squared(x, -x)


def test_specialization_examples():
    pt = SpecializationPoint.make(3, q=("zeta", 1))
    assert specialize(fs(q ** 6 - 1), pt).vanishes
    pt = SpecializationPoint.make(5, q=("zeta", 1), Q1=("xizeta", 2))
    xi = LaurentPoly.gen("xi")
    assert specialize_poly(Q1 - xi * q ** 2, pt).is_zero()
    for a in range(5):
        pt = SpecializationPoint.make(5, q=("zeta", 1), Q1=("xizeta", a))
        assert not specialize(fs(Q1 ** 2 - q ** -4), pt).vanishes


def test_specialization_validation():
    with pytest.raises(SpecializationError):
        SpecializationPoint.make(q=Fraction(1))
    with pytest.raises(SpecializationError):
        SpecializationPoint.make(4, q=("zeta", 1))  # q^2 = -1
    with pytest.raises(SpecializationError):
        SpecializationPoint.make(q=("zeta", 1))
    with pytest.raises(SpecializationError):
        SpecializationPoint.make(6, q=("xizeta", 1))


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 24), st.integers(1, 23), st.integers(0, 23), st.integers(-6, 6), st.integers(-6, 6),
       st.sampled_from((1, -1)))
def test_congruence_shortcut_matches_field_arithmetic(N, a, b, k1, k2, sign):
    try:
        pt = SpecializationPoint.make(N, q=("zeta", a), Q1=("zeta", b))
    except SpecializationError:
        return
    p = Q1 ** 2 * q ** k1 + sign * q ** k2
    fast = vanishes_by_congruence(p, pt)
    assert fast == specialize_poly(p, pt).is_zero()
