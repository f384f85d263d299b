import itertools
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hcschur.combinatorics import (
    BoxCoord,
    MultiPartition,
    add_rem_boxes,
    canonical_col_tableau,
    canonical_row_tableau,
    conjugate,
    count_standard_tableaux,
    diag_entries,
    diag_set,
    double_partition,
    enumerate_multipartitions,
    format_multipartition,
    frobenius,
    from_frobenius,
    gen_hook,
    hook,
    n_of,
    odd_partitions,
    parse_multipartition,
    partitions,
    shifted_hook,
    standard_tableaux,
    strict_partitions,
    tableau_from_rows,
)

EXAMPLE = MultiPartition("s", 1, ((2, 1), (1, 1)))


def brute_partitions(n):
    out = set()
    for k in range(n + 1):
        for c in itertools.product(range(1, n + 1), repeat=k):
            if sum(c) == n:
                out.add(tuple(sorted(c, reverse=True)))
    return out


@pytest.mark.parametrize("n", range(0, 8))
def test_partitions_match_brute_force(n):
    assert set(partitions(n)) == brute_partitions(n)
    assert len(set(partitions(n))) == len(partitions(n))
    assert set(strict_partitions(n)) == {p for p in brute_partitions(n) if len(set(p)) == len(p)}


def test_small_values():
    assert set(odd_partitions(4)) == {(3, 1), (1, 1, 1, 1)}
    assert n_of((3, 2)) == 2
    assert conjugate((4, 3, 2, 1)) == (4, 3, 2, 1)
    assert gen_hook((4, 3, 2, 1), (4, 3, 2, 1), 1, 1) == 7
    assert gen_hook((1,), (1,), 1, 1) == 1
    assert frobenius((4, 3, 2, 1)) == ((3, 1), (3, 1))
    assert double_partition((3, 2)) == (4, 4, 2)
    hooks = {(i, j): shifted_hook((3, 2), i, j) for i, j in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)]}
    assert hooks == {(1, 1): 5, (1, 2): 3, (1, 3): 2, (2, 2): 2, (2, 3): 1}


def test_gen_hook_is_hook_on_the_diagonal_argument():
    lam = (3, 2)
    for i, r in enumerate(lam, 1):
        for j in range(1, r + 1):
            assert gen_hook(lam, lam, i, j) == hook(lam, i, j)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 12).flatmap(lambda n: st.sampled_from(partitions(n))))
def test_conjugation_and_frobenius_round_trip(lam):
    assert conjugate(conjugate(lam)) == lam
    assert from_frobenius(*frobenius(lam)) == lam


def test_enumeration_examples():
    assert [lam.comps for lam in enumerate_multipartitions("0", 0, 0)] == [()]
    assert enumerate_multipartitions("0", 0, 1) == []
    assert EXAMPLE in enumerate_multipartitions("s", 1, 5)
    assert {lam.comps for lam in enumerate_multipartitions("s", 0, 4)} == {((4,),), ((3, 1),)}


@pytest.mark.parametrize("kind,m,n", [("0", 1, 4), ("0", 2, 3), ("s", 1, 4), ("s", 2, 3), ("ss", 1, 3)])
def test_enumeration_is_duplicate_free_and_counted(kind, m, n):
    lams = enumerate_multipartitions(kind, m, n)
    assert len({lam.comps for lam in lams}) == len(lams)
    assert all(lam.n == n for lam in lams)
    # independent count: distribute n over components, count each pool separately
    strict = {"0": 0, "s": 1, "ss": 2}[kind]
    sizes = [len(strict_partitions(k)) for k in range(n + 1)]
    ordinary = [len(partitions(k)) for k in range(n + 1)]
    pools = [sizes] * strict + [ordinary] * m
    total = sum(
        _prod(pool[k] for pool, k in zip(pools, comp))
        for comp in itertools.product(range(n + 1), repeat=len(pools)) if sum(comp) == n
    )
    assert len(lams) == total


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def test_format_round_trip():
    for lam in enumerate_multipartitions("s", 1, 4):
        assert parse_multipartition(format_multipartition(lam)) == lam


def test_example_tableaux():
    t = canonical_row_tableau(EXAMPLE)
    assert t.rows() == (((1, 2), (3,)), ((4,), (5,)))
    other = tableau_from_rows(EXAMPLE, (((1, 3), (5,)), ((2,), (4,))))
    assert other.is_standard()
    assert set(diag_set(EXAMPLE)) == {BoxCoord(1, 1, 0), BoxCoord(2, 2, 0)}
    assert diag_entries(other) == {1, 5}
    with pytest.raises(ValueError):
        tableau_from_rows(EXAMPLE, (((3, 1), (5,)), ((2,), (4,))))


def test_empty_shape_boxes():
    lam = MultiPartition("0", 1, ((),))
    add, rem = add_rem_boxes(lam)
    assert add == [BoxCoord(1, 1, 1)] and rem == []


@pytest.mark.parametrize("kind,m,n", [("0", 1, 5), ("s", 1, 5), ("s", 0, 6), ("0", 2, 4)])
def test_tableaux_are_standard_distinct_and_counted(kind, m, n):
    for lam in enumerate_multipartitions(kind, m, n):
        ts = list(standard_tableaux(lam))
        assert all(t.is_standard() for t in ts)
        assert len({t.filling for t in ts}) == len(ts) == count_standard_tableaux(lam)
        assert canonical_col_tableau(lam).is_standard()


def test_single_row_has_one_tableau():
    for kind, m in [("0", 1), ("s", 0), ("s", 2)]:
        comps = [()] * len(MultiPartition(kind, m, [()] * (m + (kind == "s"))).comps)
        comps[0] = (4,)
        assert count_standard_tableaux(MultiPartition(kind, m, tuple(comps))) == 1


def test_hook_length_formula_for_one_component():
    for n in range(1, 8):
        for lam in partitions(n):
            hl = _prod(hook(lam, i, j) for i, r in enumerate(lam, 1) for j in range(1, r + 1))
            assert count_standard_tableaux(MultiPartition("0", 1, (lam,))) == factorial(n) // hl
