from fractions import Fraction
from math import factorial

import pytest

from preftriads.counting import (
    class_count,
    class_count_proof_variant,
    count_table,
    count_table_csv,
    orbit_case_counts,
    order3_count,
)
from preftriads.perm import all_permutations, element_order
from preftriads.triads import enumerate_classes


def brute_order3(n):
    if n < 2:
        return 0
    return sum(1 for p in all_permutations(n) if element_order(p) == 3)


@pytest.mark.parametrize("n,expected", [(1, 0), (2, 0), (3, 2), (4, 8), (6, 80)])
def test_order3_examples(n, expected):
    assert order3_count(n) == expected


@pytest.mark.parametrize("n", range(2, 9))
def test_order3_matches_brute_force(n):
    assert order3_count(n) == brute_order3(n)


@pytest.mark.parametrize("n", range(3, 13))
def test_order3_even(n):
    assert order3_count(n) % 2 == 0


@pytest.mark.parametrize("n,expected", [(2, 2), (3, 10), (4, 111), (5, 2467), (6, 86787)])
def test_class_count_values(n, expected):
    assert class_count(n) == expected


def test_class_count_rejects_small():
    with pytest.raises(ValueError):
        class_count(1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_class_count_matches_enumeration(n):
    assert class_count(n) == enumerate_classes(n).num_classes


@pytest.mark.slow
def test_class_count_matches_enumeration_n5():
    assert enumerate_classes(5).num_classes == class_count(5) == 2467


@pytest.mark.parametrize("n", range(2, 13))
def test_exact_divisions(n):
    nf = factorial(n)
    ell = order3_count(n)
    assert (nf * (nf + 3) + 2 * (ell + 1)) % 6 == 0
    assert (nf * nf - 1 - 3 * (nf - 1) - ell) % 6 == 0


def test_big_n_is_exact():
    n = 20
    nf = factorial(n)
    assert class_count(n) * 6 == nf * (nf + 3) + 2 * (order3_count(n) + 1)
    assert class_count(n) > 2**64


@pytest.mark.parametrize(
    "n,expected", [(2, (1, 1, 0, 0)), (3, (1, 5, 1, 3)), (4, (1, 23, 4, 83))]
)
def test_orbit_case_counts_examples(n, expected):
    cases = orbit_case_counts(n)
    assert cases.as_tuple() == expected
    assert cases.total == class_count(n)


@pytest.mark.parametrize("n", range(2, 13))
def test_orbit_case_counts_sum(n):
    cases = orbit_case_counts(n)
    assert min(cases.as_tuple()) >= 0
    assert cases.total == class_count(n)


def test_orbit_case_counts_match_enumeration_n3():
    # all-equal, one-differs, cyclic (e, s, s^2) and the rest, counted on canonical forms
    table = enumerate_classes(3)
    shapes = {"equal": 0, "pair": 0, "cyclic": 0, "generic": 0}
    for t in table.entries:
        e, s, p = t
        if s == p == e:
            shapes["equal"] += 1
        elif s == e or p == e or s == p:
            shapes["pair"] += 1
        elif s * s == p and p * p == s:
            shapes["cyclic"] += 1
        else:
            shapes["generic"] += 1
    assert tuple(shapes.values()) == orbit_case_counts(3).as_tuple()


def test_proof_variant_disagrees_with_enumeration():
    num, den = class_count_proof_variant(3)
    assert Fraction(num, den) == Fraction(55, 6)
    assert Fraction(num, den) != enumerate_classes(3).num_classes


def test_count_table():
    rows = count_table(3, 6)
    assert [r["classes"] for r in rows] == [10, 111, 2467, 86787]
    assert rows[0] == {"n": 3, "n_factorial": 6, "order3": 2, "classes": 10}
    assert count_table_csv(2, 2) == "n,n_factorial,order3,classes\n2,2,0,2\n"
    with pytest.raises(ValueError):
        count_table(6, 3)
