import itertools
import random
from fractions import Fraction

import pytest

from hcschur.algebra_engine import (
    AlgebraContext,
    FormUnavailable,
    gimel_compare,
    make_algebra,
    perm_length,
    reduced_word,
    specialization_points,
)
from hcschur.coeffs import RatFunc

q = RatFunc.q()


@pytest.fixture(scope="module")
def hc2():
    return make_algebra(2, "s", 0)


@pytest.fixture(scope="module")
def z21():
    return make_algebra(2, "0", 1, q=Fraction(2), Q=(Fraction(3),))


def test_context_validation():
    with pytest.raises(ValueError):
        AlgebraContext(2, "0", 0)
    with pytest.raises(ValueError):
        AlgebraContext(2, "s", 1, q=Fraction(1), Q=(Fraction(2),))
    with pytest.raises(ValueError):
        AlgebraContext(2, "s", 1, q=Fraction(2), Q=(Fraction(0),))
    with pytest.raises(ValueError):
        make_algebra(4, "s", 0)
    assert AlgebraContext(3, "s", 1, Q=((1, 0),)).dim == 27 * 8 * 6


def test_reduced_words():
    for w in itertools.permutations(range(4)):
        assert len(reduced_word(w)) == perm_length(w)


def test_generator_relations(hc2):
    eps = q - 1 / q
    T1, C1, C2 = hc2.gen("T", 1), hc2.gen("C", 1), hc2.gen("C", 2)
    assert T1 * T1 == eps * T1 + 1
    assert C1 * C1 == hc2.unit
    assert C1 * C2 == -(C2 * C1)
    x = hc2.random_element(random.Random(1))
    assert hc2.rmul_generator(x, "X", 1) == x  # r = 1: X_1 = 1


def test_reduction_by_the_cyclotomic_polynomial():
    alg = make_algebra(1, "0", 1, q=Fraction(2), Q=(Fraction(3),))
    X = alg.gen("X", 1)
    p = alg.p  # coefficients of p(X), lowest degree first
    lhs = X * X  # r = 2
    want = -(p[0] * alg.unit + p[1] * X)
    assert lhs == want
    assert alg.gen("X", 1, inverse=True) * X == alg.unit


def test_identity_and_associativity(z21):
    rng = random.Random(7)
    B = z21.basis()
    for _ in range(50):
        a = z21.random_element(rng)
        assert a * z21.unit == a and z21.unit * a == a
    for _ in range(50):
        a, b, c = (z21.element(rng.choice(B)) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_full_associativity_small():
    alg = make_algebra(2, "s", 0, q=Fraction(3))
    B = [alg.element(b) for b in alg.basis()]
    for a, b, c in itertools.product(B, repeat=3):
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("args", [
    (1, "s", 0, None, ()), (2, "s", 0, None, ()), (2, "0", 1, Fraction(2), (Fraction(3),)),
    (2, "s", 1, Fraction(2), (Fraction(3),)), (2, "0", 1, None, ((1, 0),)),
])
def test_relations_and_dimension(args):
    alg = make_algebra(*args)
    assert alg.check_relations() == []
    assert alg.closure_dimension() == alg.ctx.dim


def test_derived_x_identity():
    alg = make_algebra(3, "0", 1, q=Fraction(2), Q=(Fraction(3),))
    assert alg.check_x_identity(1) and alg.check_x_identity(2)


def test_tau_and_t_small():
    alg = make_algebra(1, "s", 0)
    C1 = alg.gen("C", 1)
    assert alg.tau(alg.unit) == 1 and alg.tau(C1) == 0
    assert alg.t_form(alg.unit) == 2 and alg.t_form(C1) == 0 and alg.t_form(C1 * C1) == 2
    assert alg.gram() == [[2, 0], [0, 2]]
    dual = alg.dual_basis()
    assert dual[0] == alg.unit * RatFunc(Fraction(1, 2)) and dual[1] == C1 * RatFunc(Fraction(1, 2))
    assert alg.casimir() == alg.unit


def test_t_against_inverse_pi(hc2):
    ok, pinv = hc2.is_invertible(hc2.pi_element(), want_inverse=True)
    assert ok
    for b in hc2.basis():
        v = hc2.t_form(hc2.element(b) * pinv)
        assert v == (1 if b == hc2.identity_word() else 0)


def test_tau_invertibility_and_symmetry(hc2):
    assert hc2.tau(hc2.gen("T", 1)) == 0
    ok, inv = hc2.is_invertible(hc2.unit, want_inverse=True)
    assert ok and inv == hc2.unit
    ok, inv = hc2.is_invertible(hc2.gen("T", 1), want_inverse=True)
    assert ok and inv == hc2.gen("T", 1) - (q - 1 / q)
    rep = hc2.check_form_symmetry("tau")
    assert rep["n_counterexamples"] > 0
    assert hc2.check_form_symmetry("t")["ok"]


def test_supersymmetry_kind_zero():
    alg = make_algebra(2, "0", 1, Q=((1, 0),))
    rep = alg.check_form_symmetry("t")
    assert rep["identity"] == "supersymmetric" and rep["ok"]
    assert alg.is_nondegenerate(alg.gram("t"))


def test_pi_not_invertible_when_gamma_vanishes():
    # q^2 Q_1 + 1 = 0
    alg = make_algebra(1, "s", 1, q=Fraction(2), Q=(Fraction(-1, 4),))
    assert not alg.pi_invertible()
    with pytest.raises(FormUnavailable):
        alg.t_form(alg.unit)


@pytest.mark.parametrize("kind,m,Q", [("s", 0, ()), ("0", 1, (Fraction(3),)), ("s", 1, (Fraction(5, 2),))])
def test_casimir_is_central(kind, m, Q):
    alg = make_algebra(2, kind, m, q=Fraction(3), Q=Q)
    z = alg.casimir()
    for name, i in [("X", 1), ("X", 2), ("C", 1), ("C", 2), ("T", 1)]:
        g = alg.gen(name, i)
        assert z * g == g * z, (name, i)


def test_unsigned_casimir_fails_for_kind_zero():
    alg = make_algebra(2, "0", 1, q=Fraction(3), Q=(Fraction(2),))
    z = alg.casimir(signed=False)
    assert any(not (z * alg.gen(nm, i) == alg.gen(nm, i) * z) for nm, i in [("C", 1), ("C", 2), ("X", 1)])


def test_semisimple_examples():
    assert make_algebra(1, "s", 0, q=Fraction(2)).is_semisimple()
    assert make_algebra(2, "0", 1, q=Fraction(2), Q=(Fraction(3),)).is_semisimple()
    assert not make_algebra(2, "0", 1, q=Fraction(2), Q=(Fraction(1, 4),)).is_semisimple()


def test_gimel_small():
    for n in (1, 2):
        rep = gimel_compare(n)
        assert rep["ok"] and all(r["raw_equals_expected"] for r in rep["rows"])


def test_points_are_seeded_and_engineered():
    a = specialization_points("0", 2, 2, seed=3)
    assert a == specialization_points("0", 2, 2, seed=3)
    assert len(a) >= 20 and sum(o == "P=0" for *_, o in a) >= 5
    assert len(specialization_points("s", 1, 0)) == 20


def test_element_format(hc2):
    s = str(hc2.gen("T", 1) + hc2.gen("C", 2))
    assert "T[2,1]" in s and "C^(0,1)" in s
