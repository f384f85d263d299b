from fractions import Fraction

import pytest

from hcschur.criteria import (
    NotCovered,
    QuiverInstance,
    build_Gamma,
    build_P,
    equivalence_scan,
    evaluate_at,
    evaluate_instance,
    flagged_example,
    format_weight,
    is_nonzero_at,
    level_zero_scan,
    parse_weight,
    predicate_A1,
    predicate_C1,
    weight_to_specialization,
)
from hcschur.exact_arith import LaurentPoly, SpecializationPoint

q = LaurentPoly.gen("q")
Q1 = LaurentPoly.gen("Q1")

# disagreements of the A2 predicate with P over e 1..5, n 1..6, weights of
# <= 2 nodes with multiplicity <= 2: all at n even with a node at e - (n-2)/2
A2_DISAGREEMENTS = [
    (2, 2, "L0+L2"), (2, 2, "L2"), (3, 2, "L0+L3"), (3, 2, "L3"), (4, 2, "L0+L4"), (4, 2, "L2+L4"),
    (4, 2, "L4"), (5, 2, "L0+L5"), (5, 2, "L2+L5"), (5, 2, "L3+L5"), (5, 2, "L5"), (5, 4, "L0+L4"),
    (5, 4, "L4"),
]


def polys(cp):
    return {f.poly for f in cp.factors}


def test_small_factor_lists():
    assert polys(build_P("0", 1, 1)) == {q ** 2 - 1, Q1 ** 2 - 1, Q1 ** 2 - q ** -4}
    assert len(build_P("0", 1, 1).factors) == 3
    assert polys(build_P("s", 1, 0)) == {q ** 2 - 1, q ** 2 + 1}
    assert polys(build_Gamma(1, 0)) == {LaurentPoly.const(2), q ** 2 + 1}


def test_factor_counts():
    for kind in ("0", "s"):
        for n in range(1, 5):
            for m in range(0, 3):
                per_t = 2 if kind == "s" else 1
                want = per_t * n + m * (max(0, 2 * n - 3) + 2 * n) + m * (m - 1) // 2 * 2 * (2 * n - 1)
                assert len(build_P(kind, n, m).factors) == want


def test_evaluations():
    assert not is_nonzero_at(build_P("0", 3, 0), SpecializationPoint.make(6, q=("zeta", 1)))
    assert is_nonzero_at(build_P("0", 2, 1), SpecializationPoint.make(q=2, Q1=3))
    ev = evaluate_at(build_P("0", 2, 1), SpecializationPoint.make(q=2, Q1=Fraction(1, 4)))
    assert not ev.nonzero and ev.vanishing == ["Q1^2-q^-4"]


def test_predicates():
    assert predicate_A1(QuiverInstance("A1", 3, 3, ((0, 1),)))
    assert not predicate_A1(QuiverInstance("A1", 3, 4, ((0, 1),)))
    assert predicate_C1(QuiverInstance("C1", 4, 3, ((2, 1),)))


def test_dictionaries():
    pt, kind, m = weight_to_specialization(QuiverInstance("A1", 2, 1, ((0, 1), (1, 1))))
    assert (pt.order, kind, m) == (6, "0", 2)
    assert pt.get("Q1").kind == "xizeta" and pt.get("Q1").value == 0
    assert pt.get("Q2").kind == "xizeta" and pt.get("Q2").value == 2
    pt, kind, m = weight_to_specialization(QuiverInstance("C1", 2, 1, ((1, 1),)))
    assert pt.order == 8 and pt.get("Q1").value == 1
    pt, kind, m = weight_to_specialization(QuiverInstance("A2", 1, 1, ((1, 1),)))
    assert (pt.order, kind, m) == (6, "0", 1) and pt.get("Q1").value == 2
    pt, kind, m = weight_to_specialization(QuiverInstance("A2", 2, 1, ((0, 1), (1, 1))))
    assert kind == "s" and m == 1


def test_weights():
    assert parse_weight("L1+L4") == ((1, 1), (4, 1)) == parse_weight("1,4")
    assert parse_weight("2L0+L3") == ((0, 2), (3, 1))
    assert format_weight(parse_weight("2*L0+L3")) == "2L0+L3"
    with pytest.raises(ValueError):
        parse_weight("L1+X")
    with pytest.raises(NotCovered):
        QuiverInstance("D2", 3, 1, ((0, 1),)).kind_and_nodes()


def test_d2_even_weight_agrees():
    for n in range(1, 4):
        assert evaluate_instance(QuiverInstance("D2", 3, n, ((2, 2),))).agree


def test_worked_example_is_reported():
    cases = flagged_example(range(1, 4))
    assert [c.stated_verdict for c in cases] == [True, True, False]
    assert [c.p_nonzero for c in cases] == [True, False, False]
    assert cases[1].vanishing == ["Q1^2-q^4"]


def test_level_zero_rows_are_reported():
    rows = level_zero_scan(range(1, 3), range(1, 6))
    a2 = [(r.e, r.n) for r in rows if r.family == "A2" and not r.p_nonzero]
    assert (1, 3) in a2 and (1, 2) not in a2 and (2, 5) in a2


@pytest.mark.slow
def test_a2_disagreement_set_is_pinned():
    rep = equivalence_scan("A2", range(1, 6), range(1, 7))
    got = sorted((r.e, r.n, r.weight) for r in rep.disagreements)
    assert got == A2_DISAGREEMENTS
    for r in rep.disagreements:
        assert r.n % 2 == 0 and max(r.nodes) == r.e - (r.n - 2) // 2
        assert any(v.startswith("Q") for v in r.vanishing)
    assert not rep.fastpath_failures


def test_scan_jobs_do_not_change_results():
    a = equivalence_scan("C1", range(2, 4), range(1, 4))
    b = equivalence_scan("C1", range(2, 4), range(1, 4), jobs=2)
    assert [r.as_dict() for r in a.rows] == [r.as_dict() for r in b.rows]
