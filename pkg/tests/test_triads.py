from collections import Counter
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from preftriads.perm import Permutation, all_permutations, parse_ordering
from preftriads.triads import (
    CLASS_CASES_3,
    ResourceLimitError,
    UnsupportedSizeError,
    canonicalize,
    case_number,
    class_table3,
    classify3,
    describe_class,
    enumerate_classes,
    format_triad,
    iter_triads,
    make_triad,
    orbit,
    triad_for_case,
)


def T(*words):
    return make_triad(*words)


def words(t):
    return tuple(p.word for p in t)


def oracle_canonical(t):
    """Minimum over the whole orbit of the triads starting with the identity, by direct word mapping."""
    n = len(t[0])
    ident = tuple(range(n))
    best = None
    for order in permutations(range(3)):
        for tau in permutations(range(n)):
            cand = tuple(tuple(tau[x] for x in t[i].word) for i in order)
            if cand[0] == ident and (best is None or cand < best):
                best = cand
    return best


def random_transform(data, t):
    order = data.draw(st.permutations([0, 1, 2]))
    tau = data.draw(st.permutations(list(range(t[0].n))))
    return tuple(Permutation(tuple(tau[x] for x in t[i].word)) for i in order)


@pytest.mark.parametrize(
    "triad,expected",
    [
        (("ABC", "ACB", "BAC"), ("ABC", "ACB", "BAC")),
        (("BAC", "BCA", "ABC"), ("ABC", "ACB", "BAC")),
        (("ABC", "ABC", "ABC"), ("ABC", "ABC", "ABC")),
        (("ABC", "CAB", "BCA"), ("ABC", "BCA", "CAB")),
    ],
)
def test_canonicalize_examples(triad, expected):
    t = T(*triad)
    assert canonicalize(t) == T(*expected)
    assert words(canonicalize(t)) == oracle_canonical(t)


def test_canonical_form_matches_orbit_oracle_exhaustive_n3():
    for t in iter_triads(3):
        assert words(canonicalize(t)) == oracle_canonical(t)


def test_canonical_first_row_is_identity_and_idempotent():
    for t in iter_triads(3):
        c = canonicalize(t)
        assert c[0].is_identity()
        assert canonicalize(c) == c


def test_equivalence_soundness_exhaustive_n3():
    # canonical forms agree exactly when one triad lies in the other's orbit
    triads = list(iter_triads(3))
    orbit_id = {}
    next_id = 0
    for t in triads:
        if t in orbit_id:
            continue
        for m in orbit(t):
            orbit_id[m] = next_id
        next_id += 1
    assert next_id == 10
    canon = {t: canonicalize(t) for t in triads}
    for a in triads:
        for b in triads:
            assert (canon[a] == canon[b]) == (orbit_id[a] == orbit_id[b])


@settings(max_examples=60, deadline=None)
@given(st.data(), st.sampled_from([4, 5]))
def test_orbit_invariance_sampled(data, n):
    perm = st.permutations(list(range(n))).map(Permutation)
    t = (data.draw(perm), data.draw(perm), data.draw(perm))
    assert canonicalize(random_transform(data, t)) == canonicalize(t)


@pytest.mark.parametrize(
    "triad,cls",
    [(("ABC", "ABC", "ABC"), 1), (("ABC", "ABC", "ACB"), 2), (("ABC", "BCA", "CAB"), 10), (("ABC", "ACB", "BAC"), 3)],
)
def test_classify3_examples(triad, cls):
    assert classify3(T(*triad)) == cls


def test_figure_pair_share_a_class():
    assert classify3(T("ABC", "ACB", "BAC")) == classify3(T("BAC", "BCA", "ABC")) == 3


def test_classify3_rejects_other_sizes():
    with pytest.raises(UnsupportedSizeError):
        classify3(T("ABCD", "ABDC", "BACD"))


def test_classify3_constant_on_orbits_and_surjective():
    seen = set()
    for t in iter_triads(3):
        c = classify3(t)
        seen.add(c)
        assert {classify3(m) for m in orbit(t)} == {c}
    assert seen == set(range(1, 11))


def test_class_sizes_over_all_216():
    sizes = Counter(classify3(t) for t in iter_triads(3))
    assert [sizes[c] for c in range(1, 11)] == [6, 18, 36, 36, 18, 36, 18, 18, 18, 12]
    assert sum(sizes.values()) == 216


@pytest.mark.parametrize(
    "triad,case",
    [(("ABC", "ABC", "ACB"), 2), (("ABC", "ACB", "ABC"), 7), (("ABC", "ACB", "ACB"), 8),
     (("ABC", "BCA", "CAB"), 23), (("ABC", "CAB", "BCA"), 28), (("ABC", "ABC", "ABC"), 1)],
)
def test_case_number_anchors(triad, case):
    assert case_number(T(*triad)) == case
    assert triad_for_case(case) == T(*triad)


def test_case_number_precondition():
    with pytest.raises(ValueError):
        case_number(T("ACB", "ABC", "ABC"))
    with pytest.raises(ValueError):
        triad_for_case(37)


def test_table_membership_matches_enumeration():
    for cid, cases in CLASS_CASES_3.items():
        assert {classify3(triad_for_case(k)) for k in cases} == {cid}
    assert sorted(k for cases in CLASS_CASES_3.values() for k in cases) == list(range(1, 37))


def test_enumerate_classes_n2_brute_force():
    table = enumerate_classes(2)
    assert table.num_classes == 2
    # 8 triads on {AB, BA}: all-equal (2 triads) and one-differs (6 triads)
    assert sorted(table.size_full(c) for c in table.sizes_fixed) == [2, 6]


def test_enumerate_classes_n3_and_n4():
    t3 = enumerate_classes(3)
    assert t3.num_classes == 10
    assert [t3.sizes_fixed[c] for c in range(1, 11)] == [1, 3, 6, 6, 3, 6, 3, 3, 3, 2]
    assert sum(t3.size_full(c) for c in t3.sizes_fixed) == 216
    t4 = enumerate_classes(4)
    assert t4.num_classes == 111
    assert sum(t4.size_full(c) for c in t4.sizes_fixed) == 24**3


def test_enumerate_budget():
    with pytest.raises(ResourceLimitError) as info:
        enumerate_classes(4, budget=100)
    assert info.value.processed == 100
    assert 0 < info.value.classes_found <= 100


@pytest.mark.parametrize(
    "triad,ident,top,dists",
    [
        (("ABC", "ABC", "ABC"), 3, 3, (0, 0, 0)),
        (("ABC", "BCA", "CAB"), 0, 1, (2, 2, 2)),
        (("ABC", "ABC", "ACB"), 1, 3, (0, 1, 1)),
    ],
)
def test_describe_examples(triad, ident, top, dists):
    d = describe_class(T(*triad))
    assert (d.identical_pairs, d.shared_top, d.pairwise_distances) == (ident, top, dists)


def test_describe_is_invariant_exhaustive_n3():
    for t in iter_triads(3):
        d = describe_class(t)
        assert d.identical_pairs in (0, 1, 3)
        assert (d.identical_pairs == 3) == (t[0] == t[1] == t[2])
        assert all(0 <= x <= 3 for x in d.pairwise_distances)
        assert describe_class(canonicalize(t)) == d


def test_class_table_csv():
    lines = class_table3().to_csv().splitlines()
    assert lines[0] == "class_id,canonical_triad,orbit_size_36,orbit_size_216"
    assert lines[1] == "1,ABC>ABC>ABC,1,6"
    assert lines[10] == "10,ABC>BCA>CAB,2,12"
    assert len(lines) == 11


def test_format_triad_with_long_labels():
    t = (parse_ordering("AB"),) * 3
    assert format_triad(t) == "AB AB AB"
