"""Preference triads: canonical forms, equivalence classes and class descriptors.

Two triads are equivalent when one can be turned into the other by relabeling
the three nodes and applying one common relabeling of the alternatives to all
three orderings. The canonical form of a triad is the lexicographically
smallest equivalent triad whose first ordering is the identity.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations as node_orders
from typing import Iterable, Sequence

from .perm import (
    AlternativeAlphabet,
    IncompatibleSizeError,
    Permutation,
    all_permutations,
    compose,
    format_ordering,
    identity,
    inverse,
    kendall_tau_distance,
    parse_ordering,
)


class UnsupportedSizeError(ValueError):
    pass


class ResourceLimitError(RuntimeError):
    def __init__(self, message: str, processed: int, classes_found: int):
        super().__init__(message)
        self.processed = processed
        self.classes_found = classes_found


class TableMismatchError(AssertionError):
    """Raised when brute-force enumeration disagrees with the published 3-alternative table."""


Triad = tuple[Permutation, Permutation, Permutation]

# Class membership for 3 alternatives, by case number. Case 6*(i-1)+j has
# first ordering ABC and second/third orderings of lexicographic rank i, j.
CLASS_CASES_3: dict[int, tuple[int, ...]] = {
    1: (1,),
    2: (2, 7, 8),
    3: (9, 11, 14, 16, 21, 26),
    4: (10, 12, 20, 30, 32, 35),
    5: (3, 13, 15),
    6: (17, 18, 24, 27, 33, 34),
    7: (4, 19, 29),
    8: (5, 22, 25),
    9: (6, 31, 36),
    10: (23, 28),
}


def make_triad(*orderings: Permutation | str, alphabet: AlternativeAlphabet | None = None) -> Triad:
    if len(orderings) == 1 and not isinstance(orderings[0], (str, Permutation)):
        orderings = tuple(orderings[0])
    if len(orderings) != 3:
        raise ValueError(f"a triad has exactly 3 orderings, got {len(orderings)}")
    perms = tuple(parse_ordering(o, alphabet) if isinstance(o, str) else o for o in orderings)
    if len({p.n for p in perms}) != 1:
        raise IncompatibleSizeError(f"triad orderings differ in size: {[p.n for p in perms]}")
    return perms  # type: ignore[return-value]


def _candidates(t: Sequence[Permutation]):
    for i in range(3):
        tau = inverse(t[i])
        r = [compose(tau, s) for s in t]
        j, k = [x for x in range(3) if x != i]
        yield (r[i], r[j], r[k])
        yield (r[i], r[k], r[j])


def canonicalize(t: Sequence[Permutation]) -> Triad:
    """Lexicographically minimal equivalent triad with the identity as first ordering."""
    return min(_candidates(make_triad(*t)))


def relabel_triad(t: Sequence[Permutation], node_order: Sequence[int], tau: Permutation) -> Triad:
    """Apply a node relabeling (a rearrangement of positions) and an alternative relabeling."""
    return tuple(compose(tau, t[i]) for i in node_order)  # type: ignore[return-value]


def orbit(t: Sequence[Permutation]) -> set[Triad]:
    """Every triad reachable from ``t`` by the 6 * n! transformations."""
    t = make_triad(*t)
    return {relabel_triad(t, order, tau) for order in node_orders(range(3)) for tau in all_permutations(t[0].n)}


def case_number(t: Sequence[Permutation]) -> int:
    """Case index 1..36 of a 3-alternative triad whose first ordering is ABC."""
    t = make_triad(*t)
    if t[0].n != 3 or not t[0].is_identity():
        raise ValueError("case numbers are defined for 3 alternatives with first ordering ABC")
    perms = _perms3()
    return 6 * perms.index(t[1]) + perms.index(t[2]) + 1


def triad_for_case(case: int) -> Triad:
    if not 1 <= case <= 36:
        raise ValueError(f"case must be in 1..36, got {case}")
    perms = _perms3()
    i, j = divmod(case - 1, 6)
    return (identity(3), perms[i], perms[j])


@lru_cache(maxsize=None)
def _perms3() -> tuple[Permutation, ...]:
    return tuple(all_permutations(3))


@dataclass
class ClassTable:
    n: int
    entries: dict[Triad, int]
    # orbit sizes among the (n!)**2 triads whose first ordering is the identity
    sizes_fixed: dict[int, int]
    factorial: int = field(repr=False, default=0)

    @property
    def num_classes(self) -> int:
        return len(self.entries)

    def representatives(self) -> dict[int, Triad]:
        return {cid: t for t, cid in self.entries.items()}

    def size_full(self, class_id: int) -> int:
        return self.sizes_fixed[class_id] * self.factorial

    def lookup(self, t: Sequence[Permutation]) -> int:
        return self.entries[canonicalize(t)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["class_id", "canonical_triad", "orbit_size_36", "orbit_size_216"])
        for cid, t in sorted(self.representatives().items()):
            w.writerow([cid, format_triad(t, sep=">"), self.sizes_fixed[cid], self.size_full(cid)])
        return buf.getvalue()


def format_triad(t: Sequence[Permutation], sep: str = " ", alphabet: AlternativeAlphabet | None = None) -> str:
    words = [format_ordering(p, alphabet) for p in t]
    if sep == ">" and not all(">" not in w for w in words):
        sep = " | "
    return sep.join(words)


def enumerate_classes(n: int, budget: int | None = None) -> ClassTable:
    """Brute-force the classes of triads on n alternatives.

    Every pair (sigma, pi) is canonicalized together with the identity, so the
    work is (n!)**2 canonicalizations. ``budget`` caps that number.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    perms = all_permutations(n)
    eps = perms[0]
    counts: Counter[Triad] = Counter()
    processed = 0
    for s in perms:
        for p in perms:
            if budget is not None and processed >= budget:
                raise ResourceLimitError(
                    f"budget of {budget} triads exhausted after finding {len(counts)} classes",
                    processed,
                    len(counts),
                )
            counts[canonicalize((eps, s, p))] += 1
            processed += 1
    ordered = sorted(counts)
    entries = {t: i + 1 for i, t in enumerate(ordered)}
    if n == 3:
        entries = _number_as_published(counts)
    sizes = {entries[t]: c for t, c in counts.items()}
    return ClassTable(n=n, entries=entries, sizes_fixed=sizes, factorial=len(perms))


def _number_as_published(counts: Counter) -> dict[Triad, int]:
    entries = {}
    for cid, cases in CLASS_CASES_3.items():
        forms = {canonicalize(triad_for_case(c)) for c in cases}
        if len(forms) != 1:
            raise TableMismatchError(f"class {cid}: cases {cases} are not all equivalent")
        (form,) = forms
        if counts[form] != len(cases):
            raise TableMismatchError(
                f"class {cid}: published {len(cases)} cases, enumeration found {counts[form]}"
            )
        entries[form] = cid
    if len(entries) != len(counts):
        raise TableMismatchError(f"enumeration found {len(counts)} classes, table lists {len(entries)}")
    return entries


@lru_cache(maxsize=1)
def class_table3() -> ClassTable:
    return enumerate_classes(3)


def classify3(t: Sequence[Permutation]) -> int:
    """Equivalence class 1..10 of a triad on 3 alternatives."""
    t = make_triad(*t)
    if t[0].n != 3:
        raise UnsupportedSizeError(
            f"classify3 handles 3 alternatives, got {t[0].n}; use canonicalize or enumerate_classes"
        )
    return class_table3().lookup(t)


@lru_cache(maxsize=1)
def class_lookup3():
    """Class id for every (i, j, k) triple of ordering indices, as a 6x6x6 nested tuple."""
    perms = _perms3()
    table = class_table3()
    return tuple(
        tuple(tuple(table.lookup((a, b, c)) for c in perms) for b in perms) for a in perms
    )


@dataclass(frozen=True)
class ClassDescriptor:
    identical_pairs: int
    shared_top: int
    pairwise_distances: tuple[int, int, int]


def describe_class(t: Sequence[Permutation]) -> ClassDescriptor:
    t = make_triad(*t)
    pairs = [(0, 1), (0, 2), (1, 2)]
    identical = sum(1 for i, j in pairs if t[i] == t[j])
    top = Counter(p.word[0] for p in t).most_common(1)[0][1]
    dists = sorted(kendall_tau_distance(t[i], t[j]) for i, j in pairs)
    return ClassDescriptor(identical, top, tuple(dists))  # type: ignore[arg-type]


def iter_triads(n: int) -> Iterable[Triad]:
    perms = all_permutations(n)
    for a in perms:
        for b in perms:
            for c in perms:
                yield (a, b, c)
