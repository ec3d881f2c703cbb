import math
from itertools import combinations, permutations

import pytest
from hypothesis import given, strategies as st

from preftriads.perm import (
    AlternativeAlphabet,
    IncompatibleSizeError,
    InvalidSizeError,
    InvalidSubsetError,
    OrderingParseError,
    Permutation,
    all_permutations,
    compose,
    cycles,
    element_order,
    format_ordering,
    identity,
    inverse,
    kendall_tau_distance,
    parse_ordering,
    power,
    restrict_ordering,
)

P = parse_ordering


def perms_strategy(n):
    return st.permutations(list(range(n))).map(Permutation)


def brute_order(p):
    q, k = p, 1
    while not q.is_identity():
        q, k = compose(p, q), k + 1
    return k


@pytest.mark.parametrize("n,text", [(2, "AB"), (3, "ABC"), (5, "ABCDE")])
def test_identity(n, text):
    assert identity(n).word == tuple(range(n))
    assert format_ordering(identity(n)) == text


@pytest.mark.parametrize("n", [0, 1, -3])
def test_identity_rejects_small(n):
    with pytest.raises(InvalidSizeError):
        identity(n)


def test_permutation_validates():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))
    with pytest.raises(InvalidSizeError):
        Permutation((0,))


def test_compose_relabels_letters():
    # swap A<->B as a map, applied to ordering ACB: A->B, C->C, B->A
    swap_ab = P("BAC")
    assert format_ordering(compose(swap_ab, P("ACB"))) == "BCA"
    assert format_ordering(compose(swap_ab, P("ABC"))) == "BAC"
    assert format_ordering(compose(swap_ab, P("BAC"))) == "ABC"


def test_compose_size_mismatch():
    with pytest.raises(IncompatibleSizeError):
        compose(identity(3), identity(4))


def test_inverse_examples():
    assert inverse(identity(4)) == identity(4)
    assert inverse(P("ACB")) == P("ACB")
    assert inverse(P("BCA")) == P("CAB")
    assert compose(P("CAB"), P("BCA")) == identity(3)


@pytest.mark.parametrize("text,order", [("ABC", 1), ("BCA", 3), ("BADC", 2), ("BCAED", 6)])
def test_element_order(text, order):
    assert element_order(P(text)) == order
    assert brute_order(P(text)) == order


def test_group_laws_exhaustive_n3():
    ps = all_permutations(3)
    e = identity(3)
    for s in ps:
        assert compose(s, e) == s == compose(e, s)
        assert compose(inverse(s), s) == e == compose(s, inverse(s))
        for t in ps:
            for u in ps:
                assert compose(s, compose(t, u)) == compose(compose(s, t), u)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_order_divides_group_order(n):
    for p in all_permutations(n):
        k = element_order(p)
        assert math.factorial(n) % k == 0
        assert power(p, k) == identity(n)


def test_cycles_cover_all_points():
    p = P("CADBE")
    cs = cycles(p)
    assert sorted(x for c in cs for x in c) == list(range(5))
    assert (4,) in cs


@given(perms_strategy(7), st.integers(-10, 10))
def test_power_matches_repeated_composition(p, k):
    q = identity(7)
    step = p if k >= 0 else inverse(p)
    for _ in range(abs(k)):
        q = compose(step, q)
    assert power(p, k) == q


def test_parse_examples():
    assert P("ABC").word == (0, 1, 2)
    assert P("ACB").word == (0, 2, 1)


@pytest.mark.parametrize("text,label", [("AXB", "X"), ("AAB", "A"), ("AB", "C")])
def test_parse_errors_name_the_label(text, label):
    with pytest.raises(OrderingParseError) as info:
        parse_ordering(text, AlternativeAlphabet.default(3))
    assert info.value.label == label
    assert label in str(info.value)


def test_parse_multichar_labels():
    alpha = AlternativeAlphabet(("Google", "Youtube", "Amazon"))
    p = parse_ordering("Google>Amazon>Youtube", alpha)
    assert p.word == (0, 2, 1)
    assert format_ordering(p, alpha) == "Google>Amazon>Youtube"


def test_roundtrip_all_orderings_on_five():
    alpha = AlternativeAlphabet.default(5)
    for p in all_permutations(5):
        assert parse_ordering(format_ordering(p, alpha), alpha) == p


def test_alphabet_validation():
    with pytest.raises(ValueError):
        AlternativeAlphabet(("A", "A"))
    with pytest.raises(ValueError):
        AlternativeAlphabet(("A", ""))
    assert len(set(AlternativeAlphabet.default(30).labels)) == 30


def test_restrict_examples():
    alpha5 = AlternativeAlphabet.default(5)
    p = parse_ordering("ADCEB", alpha5)
    kept = [alpha5.index(x) for x in "ABE"]
    assert format_ordering(restrict_ordering(p, kept), AlternativeAlphabet(("A", "B", "E"))) == "AEB"
    assert restrict_ordering(P("BCA"), [0, 1]) == P("BA")
    for q in all_permutations(4):
        assert restrict_ordering(q, range(4)) == q


def test_restrict_rejects_small_subsets():
    with pytest.raises(InvalidSubsetError):
        restrict_ordering(P("ABC"), [1])


def test_restrict_commutes_with_setwise_fixing_relabels():
    # a relabeling fixing the kept set setwise acts on the restriction through its restriction
    keep = (0, 2, 4)
    fixers = [t for t in all_permutations(5) if {t[k] for k in keep} == set(keep)]
    assert len(fixers) == 12
    for t in fixers:
        induced = Permutation(tuple(keep.index(t[k]) for k in keep))
        for p in all_permutations(5):
            assert restrict_ordering(compose(t, p), keep) == compose(induced, restrict_ordering(p, keep))


def kendall_oracle(a, b):
    ra = {x: i for i, x in enumerate(a)}
    rb = {x: i for i, x in enumerate(b)}
    return sum(1 for x, y in combinations(range(len(a)), 2) if (ra[x] < ra[y]) != (rb[x] < rb[y]))


def test_kendall_tau_against_pair_enumeration():
    for a in permutations(range(4)):
        for b in permutations(range(4)):
            assert kendall_tau_distance(a, b) == kendall_oracle(a, b)
    assert kendall_tau_distance(P("ABCD"), P("DCBA")) == 6
