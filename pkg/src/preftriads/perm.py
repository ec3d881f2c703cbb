"""Permutations on n alternatives, read either as preference orderings or as relabelings.

A ``Permutation`` stores a word of 0-based alternative indices. Read as an
ordering, ``word[k]`` is the alternative at rank ``k`` (rank 0 is the most
preferred). Read as a relabeling map, ``word[k]`` is the image of alternative
``k``. Relabeling an ordering ``s`` by a map ``t`` is ``compose(t, s)``: every
letter of the word is replaced by its image.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from functools import reduce
from itertools import permutations, product
from typing import Iterable, Sequence


class PermutationError(ValueError):
    """Base class for invalid permutation input."""


class InvalidSizeError(PermutationError):
    pass


class IncompatibleSizeError(PermutationError):
    pass


class InvalidSubsetError(PermutationError):
    pass


class OrderingParseError(PermutationError):
    def __init__(self, message: str, label: str | None = None, kind: str = "invalid"):
        super().__init__(message)
        self.label = label
        self.kind = kind


@dataclass(frozen=True, order=True)
class Permutation:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        object.__setattr__(self, "word", word)
        n = len(word)
        if n < 2:
            raise InvalidSizeError(f"permutations need n >= 2, got n={n}")
        if sorted(word) != list(range(n)):
            raise PermutationError(f"{word} is not a permutation of 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def __getitem__(self, k: int) -> int:
        return self.word[k]

    def __call__(self, k: int) -> int:
        return self.word[k]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        return power(self, k)

    def __str__(self) -> str:
        return format_ordering(self)

    def __repr__(self) -> str:
        return f"Permutation({format_ordering(self)!r})"

    def is_identity(self) -> bool:
        return all(k == x for k, x in enumerate(self.word))


def _trusted(word: tuple[int, ...]) -> Permutation:
    # Skips validation for words built from valid permutations.
    p = object.__new__(Permutation)
    object.__setattr__(p, "word", word)
    return p


def identity(n: int) -> Permutation:
    if n < 2:
        raise InvalidSizeError(f"permutations need n >= 2, got n={n}")
    return _trusted(tuple(range(n)))


def compose(outer: Permutation, inner: Permutation) -> Permutation:
    """Return ``outer ∘ inner``, i.e. ``k -> outer(inner(k))``."""
    if outer.n != inner.n:
        raise IncompatibleSizeError(f"cannot compose sizes {outer.n} and {inner.n}")
    o = outer.word
    return _trusted(tuple(o[k] for k in inner.word))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.n
    for k, x in enumerate(p.word):
        inv[x] = k
    return _trusted(tuple(inv))


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        p, k = inverse(p), -k
    result = identity(p.n)
    base = p
    while k:
        if k & 1:
            result = compose(base, result)
        base = compose(base, base)
        k >>= 1
    return result


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Disjoint cycle decomposition, fixed points included, each cycle led by its smallest element."""
    seen = [False] * p.n
    out = []
    for start in range(p.n):
        if seen[start]:
            continue
        cyc = []
        k = start
        while not seen[k]:
            seen[k] = True
            cyc.append(k)
            k = p.word[k]
        out.append(tuple(cyc))
    return out


def element_order(p: Permutation) -> int:
    return reduce(math.lcm, (len(c) for c in cycles(p)), 1)


def all_permutations(n: int) -> list[Permutation]:
    """All orderings on n alternatives in lexicographic order of their words."""
    if n < 2:
        raise InvalidSizeError(f"permutations need n >= 2, got n={n}")
    return [_trusted(w) for w in permutations(range(n))]


def restrict_ordering(p: Permutation, keep: Iterable[int]) -> Permutation:
    """Drop every alternative not in ``keep`` from the ordering, preserving relative order.

    Kept alternatives are re-indexed 0..m-1 by ascending original index, so
    restricting ``ADCEB`` to ``{A, B, E}`` gives ``AEB`` over the alphabet ``(A, B, E)``.
    """
    kept = sorted(set(keep))
    if len(kept) < 2:
        raise InvalidSubsetError(f"need at least 2 kept alternatives, got {len(kept)}")
    if kept[0] < 0 or kept[-1] >= p.n:
        raise InvalidSubsetError(f"kept alternatives {kept} outside 0..{p.n - 1}")
    reindex = {x: i for i, x in enumerate(kept)}
    return _trusted(tuple(reindex[x] for x in p.word if x in reindex))


@dataclass(frozen=True)
class AlternativeAlphabet:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if any(not lab for lab in labels):
            raise ValueError("alphabet labels must be non-empty")
        if len(set(labels)) != len(labels):
            raise ValueError(f"alphabet labels must be unique: {labels}")

    @classmethod
    def default(cls, n: int) -> AlternativeAlphabet:
        return cls(default_labels(n))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def compact(self) -> bool:
        return all(len(lab) == 1 for lab in self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


def default_labels(n: int) -> tuple[str, ...]:
    letters = string.ascii_uppercase
    if n <= len(letters):
        return tuple(letters[:n])
    # two-letter labels keep the text form unambiguous past Z
    return tuple("".join(pair) for pair in product(letters, repeat=2))[:n]


def format_ordering(p: Permutation, alphabet: AlternativeAlphabet | None = None) -> str:
    alphabet = alphabet or AlternativeAlphabet.default(p.n)
    if alphabet.n != p.n:
        raise IncompatibleSizeError(f"alphabet has {alphabet.n} labels, ordering has {p.n}")
    labels = [alphabet.labels[x] for x in p.word]
    return "".join(labels) if alphabet.compact else ">".join(labels)


def parse_ordering(text: str, alphabet: AlternativeAlphabet | None = None) -> Permutation:
    """Parse ``"ACB"`` or ``"Google>Youtube>Amazon"`` into an ordering over ``alphabet``.

    Without an alphabet, the default ``A, B, C, ...`` alphabet of the right size is used.
    """
    text = text.strip()
    tokens = [t.strip() for t in text.split(">")] if ">" in text else list(text)
    if alphabet is None:
        alphabet = AlternativeAlphabet.default(max(len(tokens), 2))
    lookup = {lab: i for i, lab in enumerate(alphabet.labels)}
    word = []
    seen = set()
    for tok in tokens:
        if tok not in lookup:
            raise OrderingParseError(f"unknown label {tok!r} in ordering {text!r}", tok, "unknown")
        if tok in seen:
            raise OrderingParseError(f"duplicate label {tok!r} in ordering {text!r}", tok, "duplicate")
        seen.add(tok)
        word.append(lookup[tok])
    missing = [lab for lab in alphabet.labels if lab not in seen]
    if missing:
        raise OrderingParseError(f"missing label {missing[0]!r} in ordering {text!r}", missing[0], "missing")
    return _trusted(tuple(word))


def kendall_tau_distance(a: Sequence[int] | Permutation, b: Sequence[int] | Permutation) -> int:
    """Number of alternative pairs ranked in opposite order by the two orderings."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise IncompatibleSizeError(f"cannot compare sizes {len(a)} and {len(b)}")
    pos_b = [0] * len(b)
    for rank, x in enumerate(b):
        pos_b[x] = rank
    seq = [pos_b[x] for x in a]
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
